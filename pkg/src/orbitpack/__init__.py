"""Numerical toolkit for packing-compatibility of isometric group actions.

The package estimates disjoint-ball packing counts over sampled group
orbits on Euclidean space, the hyperboloid model, and the determinant-one
SPD manifold; verifies index-two twisted group extensions and decides
whether their sign-twisted invariant classes are trivial; and computes
variational ground states of a scalar-field equation on symmetry-reduced
grids, including the swap-antisymmetric class that certifies nonradial
solutions.
"""

from .isometry import (BlockOrthogonal, FiniteSet, GroupSpec, Isometry, ProductGroup,
                       SignedIsometry, TranslationLattice, TwistSpec, UnitaryTorus,
                       character_value, group_from_json, membership, sample_group,
                       verify_twist)
from .spaces import SpacePoint, distance, euclidean_point
from .packing import (PackingReport, boost_demo, compatibility_probe,
                      estimate_packing, fixed_subspace, greedy_pack,
                      verify_separation)
from .coincidence import (TrivialityReport, TwistVerificationError, coincident_exact,
                          nearest_orbit_element, orbit_coincidence, orbit_gap)
from . import hyperbolic, spd
from .pde import (BlockRadial4, Cylinder3, ProblemSpec, Radial, ReducedFunction,
                  SolveReport, counterexample_sequence, nehari_ground_state,
                  radial_baseline)

__version__ = "0.1.0"

__all__ = [
    "BlockOrthogonal", "FiniteSet", "GroupSpec", "Isometry", "ProductGroup",
    "SignedIsometry", "TranslationLattice", "TwistSpec", "UnitaryTorus",
    "character_value", "group_from_json", "membership", "sample_group",
    "verify_twist", "SpacePoint", "distance", "euclidean_point", "PackingReport",
    "boost_demo", "compatibility_probe", "estimate_packing", "fixed_subspace",
    "greedy_pack",
    "verify_separation", "TrivialityReport", "TwistVerificationError",
    "coincident_exact", "nearest_orbit_element", "orbit_coincidence", "orbit_gap",
    "hyperbolic", "spd", "BlockRadial4", "Cylinder3", "ProblemSpec", "Radial",
    "ReducedFunction", "SolveReport", "counterexample_sequence",
    "nehari_ground_state", "radial_baseline",
]
