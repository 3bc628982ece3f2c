"""Determinant-one symmetric positive definite matrices as a metric space.

This realizes the noncompact symmetric quotient of the special linear group
by rotations: points are SPD matrices with unit determinant, the distance is
the affine-invariant one, d(P, Q) = ||log(P^{-1/2} Q P^{-1/2})||_F.

The module also hosts the real embedding of special unitary matrices into
rotations of doubled size, the computation of its fixed symmetric traceless
matrices (a nullspace problem over sampled group elements), and the checks
for the block-sign involution diag(I, -I) that twists that subgroup.
"""

from __future__ import annotations

import numpy as np

from . import rng
from .isometry import complex_structure

SYM_TOL = 1e-10
DET_TOL = 1e-8
EMBED_TOL = 1e-10
NULLSPACE_CUTOFF = 1e-8


def check_spd(p, det_one: bool = True):
    p = np.asarray(p, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise ValueError("SPD point must be a square matrix")
    if np.max(np.abs(p - p.T)) > SYM_TOL:
        raise ValueError("matrix is not symmetric")
    w = np.linalg.eigvalsh(0.5 * (p + p.T))
    if w.min() <= 0:
        raise ValueError("matrix is not positive definite")
    if det_one and abs(np.prod(w) - 1.0) > DET_TOL * max(1.0, np.prod(w)):
        raise ValueError("matrix does not have unit determinant")


def distance(p, q) -> float:
    """Affine-invariant distance via symmetric eigendecompositions."""
    p = 0.5 * (np.asarray(p, dtype=float) + np.asarray(p, dtype=float).T)
    q = 0.5 * (np.asarray(q, dtype=float) + np.asarray(q, dtype=float).T)
    w, u = np.linalg.eigh(p)
    if w.min() <= 0:
        raise ValueError("matrix is not positive definite")
    inv_sqrt = (u / np.sqrt(w)) @ u.T
    m = inv_sqrt @ q @ inv_sqrt
    lam = np.linalg.eigvalsh(0.5 * (m + m.T))
    if lam.min() <= 0:
        raise ValueError("matrix is not positive definite")
    return float(np.sqrt(np.sum(np.log(lam) ** 2)))


def random_spd(n: int, gen: np.random.Generator, det_one: bool = True) -> np.ndarray:
    a = gen.normal(size=(n, n))
    p = a @ a.T + 0.5 * np.eye(n)
    if det_one:
        p = p / np.linalg.det(p) ** (1.0 / n)
    return p


# --------------------------------------------------------------------------
# the special unitary subgroup of SO(2n) and its fixed symmetric matrices


def special_unitary_sample(n: int, gen: np.random.Generator) -> np.ndarray:
    """Haar sample from SU(n): phase-corrected QR of a complex Ginibre matrix."""
    z = (gen.normal(size=(n, n)) + 1j * gen.normal(size=(n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    q = q * np.exp(-1j * np.angle(np.linalg.det(q)) / n)
    return q


def real_embedding(u: np.ndarray) -> np.ndarray:
    """A + iB -> [[A, B], [-B, A]], an element of SO(2n) commuting with J."""
    a, b = u.real, u.imag
    return np.block([[a, b], [-b, a]])


def su_embedding_check(c, tol: float = EMBED_TOL) -> bool:
    """Whether c lies in the embedded special unitary group: c in SO(2n), cJc^T = J."""
    c = np.asarray(c, dtype=float)
    m = c.shape[0]
    if m % 2 != 0:
        return False
    if np.max(np.abs(c.T @ c - np.eye(m))) > tol:
        return False
    if abs(np.linalg.det(c) - 1.0) > tol * 10:
        return False
    j = complex_structure(m // 2)
    return bool(np.max(np.abs(c @ j @ c.T - j)) <= tol)


def _symmetric_basis(m: int):
    """Orthonormal (Frobenius) basis of symmetric m x m matrices."""
    basis = []
    for i in range(m):
        e = np.zeros((m, m))
        e[i, i] = 1.0
        basis.append(e)
    for i in range(m):
        for j in range(i + 1, m):
            e = np.zeros((m, m))
            e[i, j] = e[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(e)
    return basis


def commutant_fixed_dim(n: int, samples: int = 24, seed: int = 0,
                        traceless: bool = True,
                        cutoff: float = NULLSPACE_CUTOFF) -> dict:
    """Dimension of symmetric (traceless) matrices fixed by the embedded SU(n).

    Solves C_k S C_k^T = S over sampled embeddings C_k, together with the
    trace-zero row when requested, by a singular value decomposition on an
    orthonormal basis of symmetric matrices.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = 2 * n
    basis = _symmetric_basis(m)
    gen = rng.stream(seed, rng.UNITARY, n)
    rows = []
    for _ in range(samples):
        c = real_embedding(special_unitary_sample(n, gen))
        for b in basis:
            image = c @ b @ c.T - b
            rows.append([np.sum(image * other) for other in basis])
    if traceless:
        rows.append([np.trace(b) for b in basis])
    system = np.asarray(rows)
    svals = np.linalg.svd(system, compute_uv=False)
    null_dim = int(np.sum(svals < cutoff))
    _, _, vt = np.linalg.svd(system)
    basis_vectors = vt[len(svals) - null_dim:] if null_dim else np.zeros((0, len(basis)))
    fixed = [sum(coef * b for coef, b in zip(vec, basis)) for vec in basis_vectors]
    return {"n": n, "samples": samples, "traceless": bool(traceless),
            "dimension": null_dim,
            "singular_values": svals,
            "basis": fixed}


def block_sign_involution(n: int) -> np.ndarray:
    """diag(I_n, -I_n) on R^(2n)."""
    t = np.eye(2 * n)
    t[n:, n:] *= -1.0
    return t


def su_twist_check(n: int, samples: int = 50, seed: int = 0) -> dict:
    """Involution checks for diag(I, -I) against the embedded SU(n).

    The involution conjugates the J-relation to its negative, so it sits
    outside the embedded subgroup, while conjugation sends each embedded
    unitary to the embedding of its entrywise conjugate, which stays inside.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    tau = block_sign_involution(n)
    tau_involutive = bool(np.array_equal(tau @ tau, np.eye(2 * n)))
    tau_outside = not su_embedding_check(tau)
    gen = rng.stream(seed, rng.UNITARY, n, 1)
    conjugation_closed = True
    for _ in range(samples):
        c = real_embedding(special_unitary_sample(n, gen))
        if not su_embedding_check(tau @ c @ tau):
            conjugation_closed = False
            break
    return {"n": n, "samples": samples,
            "tau_involutive": tau_involutive,
            "tau_outside": tau_outside,
            "conjugation_closed": conjugation_closed,
            "all_passed": bool(tau_involutive and tau_outside and conjugation_closed),
            "notation_note": ("the twisted subgroup is the embedded special unitary "
                              "image inside the rotations of doubled size; the "
                              "involution normalizes that image")}
