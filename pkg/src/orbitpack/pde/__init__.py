from .domains import (AntisymmetricError, BlockRadial4, Cylinder3, Radial,
                      ReducedFunction, SYM_NONE, SYM_ANTISWAP)
from .energy import ProblemSpec, energy, gradient, energy_and_gradient, residual_norm
from .solve import SolveReport, nehari_ground_state, radial_baseline
from .sequence import counterexample_sequence, reference_mass

__all__ = [
    "AntisymmetricError", "BlockRadial4", "Cylinder3", "Radial", "ReducedFunction",
    "SYM_NONE", "SYM_ANTISWAP", "ProblemSpec", "energy", "gradient",
    "energy_and_gradient", "residual_norm", "SolveReport", "nehari_ground_state",
    "radial_baseline", "counterexample_sequence", "reference_mass",
]
