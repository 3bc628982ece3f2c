"""Discrete energy of the scalar-field problem on reduced domains.

The continuum functional is
    E(u) = 1/2 int |grad u|^2 + 1/2 int b0 u^2 - int |u|^(q+1)/(q+1)
with the integrals carrying the reduction weight. On the grid the gradient
term sums face-weighted one-sided differences per axis; the mass and
nonlinear terms are cell-weighted. Gradients are taken with respect to the
weighted inner product <u, v>_w = sum w u v and projected onto the symmetry
class, which for the antisymmetric swap class is the orthogonal projection
because the weight is swap-symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import ReducedFunction, SYM_ANTISWAP, antisymmetrize


@dataclass(frozen=True)
class ProblemSpec:
    """Constant potential b0 > 0 and pure-power odd nonlinearity |u|^(q-1) u.

    This instance satisfies all the structural hypotheses the variational
    setup needs (superquadratic, subcritical, odd); arbitrary user
    nonlinearities are deliberately not accepted since those hypotheses are
    not machine-checkable.
    """

    b0: float = 1.0
    q: float = 2.5

    def __post_init__(self):
        if self.b0 <= 0:
            raise ValueError("b0 must be positive")
        if self.q <= 1:
            raise ValueError("q must exceed 1")

    def validate_for(self, domain):
        n = domain.ambient_n
        critical = (n + 2) / (n - 2)
        if self.q >= critical:
            raise ValueError(
                f"q = {self.q} is not subcritical for ambient dimension {n} "
                f"(needs q < {critical})")

    def nonlinear_density(self, u: np.ndarray) -> np.ndarray:
        return np.abs(u) ** (self.q + 1) / (self.q + 1)

    def nonlinear_force(self, u: np.ndarray) -> np.ndarray:
        return np.abs(u) ** (self.q - 1) * u


def quadratic_parts(fn: ReducedFunction, p: ProblemSpec):
    """(dirichlet + mass, power) = (|Du|^2_w + b0 |u|^2_w, |u|^(q+1)_w)."""
    dom, u = fn.domain, fn.values
    w = dom.cell_weights()
    diffs = dom.forward_diffs(u)
    fw = dom.face_weights()
    quad = sum(np.sum(wf * d * d) for wf, d in zip(fw, diffs)) + p.b0 * np.sum(w * u * u)
    power = np.sum(w * np.abs(u) ** (p.q + 1))
    return float(quad), float(power)


def energy(fn: ReducedFunction, p: ProblemSpec) -> float:
    dom, u = fn.domain, fn.values
    p.validate_for(dom)
    w = dom.cell_weights()
    diffs = dom.forward_diffs(u)
    fw = dom.face_weights()
    grad_term = sum(0.5 * np.sum(wf * d * d) for wf, d in zip(fw, diffs))
    return float(grad_term + np.sum(w * (0.5 * p.b0 * u * u - p.nonlinear_density(u))))


def euclidean_gradient(fn: ReducedFunction, p: ProblemSpec) -> np.ndarray:
    """Partial derivatives of the discrete energy in the raw grid values."""
    dom, u = fn.domain, fn.values
    w = dom.cell_weights()
    diffs = dom.forward_diffs(u)
    fw = dom.face_weights()
    g = dom.diff_adjoint([wf * d for wf, d in zip(fw, diffs)])
    g += w * (p.b0 * u - p.nonlinear_force(u))
    return g


def gradient(fn: ReducedFunction, p: ProblemSpec) -> ReducedFunction:
    """Weighted-metric gradient, projected onto the symmetry class."""
    p.validate_for(fn.domain)
    g = euclidean_gradient(fn, p) / fn.domain.cell_weights()
    if fn.symmetry_class == SYM_ANTISWAP:
        g = antisymmetrize(g)
    return ReducedFunction(fn.domain, g, fn.symmetry_class)


def energy_and_gradient(fn: ReducedFunction, p: ProblemSpec):
    return energy(fn, p), gradient(fn, p)


def weighted_norm(fn: ReducedFunction) -> float:
    return float(np.sqrt(np.sum(fn.domain.cell_weights() * fn.values ** 2)))


def residual_norm(fn: ReducedFunction, p: ProblemSpec) -> float:
    """Weighted norm of the class-projected weighted gradient."""
    return weighted_norm(gradient(fn, p))
