"""Hyperboloid model of hyperbolic n-space.

Points are vectors (x, t) in R^(n+1) on the upper sheet of
||x||^2 - t^2 = -1. The Minkowski pairing of the ambient space induces the
distance; tangent vectors at p are Minkowski-orthogonal to p.
"""

from __future__ import annotations

import numpy as np

from . import rng

SHEET_TOL = 1e-9
LORENTZ_TOL = 1e-10
TANGENT_TOL = 1e-9


def minkowski(u, v) -> np.ndarray:
    """Pairing <x, x'> - t t' on R^(n+1), batched over leading axes."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(u[..., :-1] * v[..., :-1], axis=-1) - u[..., -1] * v[..., -1]


def base_point(n: int) -> np.ndarray:
    p = np.zeros(n + 1)
    p[-1] = 1.0
    return p


def on_sheet(p, tol: float = SHEET_TOL) -> bool:
    """Sheet constraint checked in the scale-aware form t = hypot(1, |x|).

    Equivalent to | |x|^2 - t^2 + 1 | <= 2 tol t^2; for points near the base
    this is the plain absolute check, while for far points it is as tight as
    double precision can verify at all (the raw quadratic form cancels
    catastrophically there).
    """
    p = np.asarray(p, dtype=float)
    t = p[..., -1]
    radial = np.hypot(1.0, np.linalg.norm(p[..., :-1], axis=-1))
    return bool(np.all(t > 0) and np.all(np.abs(t - radial) <= tol * np.maximum(1.0, t)))


def check_point(p):
    if not on_sheet(p):
        raise ValueError("point is not on the upper unit hyperboloid sheet")


def distance(p, q) -> np.ndarray:
    """Geodesic distance.

    Algebraically this is arccosh of the clamped Minkowski pairing, but it
    is evaluated in polar form: with rho = asinh(|x|) and unit directions w,
        cosh d - 1 = 2 sinh^2((rho_p - rho_q)/2)
                     + sinh(rho_p) sinh(rho_q) |w_p - w_q|^2 / 2,
    a sum of nonnegative terms free of the cancellation that makes the raw
    pairing meaningless for far-apart points.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    xp, xq = p[..., :-1], q[..., :-1]
    np_r = np.linalg.norm(xp, axis=-1)
    nq_r = np.linalg.norm(xq, axis=-1)
    rho_p = np.arcsinh(np_r)
    rho_q = np.arcsinh(nq_r)
    wp = np.where(np_r[..., None] > 0, xp / np.where(np_r == 0.0, 1.0, np_r)[..., None], 0.0)
    wq = np.where(nq_r[..., None] > 0, xq / np.where(nq_r == 0.0, 1.0, nq_r)[..., None], 0.0)
    angular = np.sum((wp - wq) ** 2, axis=-1)
    # if either point is at the pole its direction term vanishes with sinh(rho)
    angular = np.where((np_r == 0.0) | (nq_r == 0.0), 0.0, angular)
    u = 2.0 * np.sinh(0.5 * (rho_p - rho_q)) ** 2 + np.sinh(rho_p) * np.sinh(rho_q) * 0.5 * angular
    return 2.0 * np.arcsinh(np.sqrt(0.5 * u))


def tangent_project(p, v) -> np.ndarray:
    """Minkowski-orthogonal projection of an ambient vector onto T_p."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    return v + minkowski(p, v)[..., None] * p


def tangent_norm(v) -> np.ndarray:
    return np.sqrt(np.maximum(minkowski(v, v), 0.0))


def exponential(p, v) -> np.ndarray:
    """Geodesic exponential: cosh(|v|) p + sinh(|v|) v/|v|, with exp_p(0) = p."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    tangency = np.max(np.abs(minkowski(p, v))) if v.size else 0.0
    if tangency > TANGENT_TOL:
        raise ValueError(f"vector is not tangent at p: |<p, v>| = {tangency:.3e}")
    nv = tangent_norm(v)
    safe = np.where(nv == 0.0, 1.0, nv)
    return np.cosh(nv)[..., None] * p + (np.sinh(nv) / safe)[..., None] * v


def rauch_check(p, v, w, tolerance: float = 1e-9) -> dict:
    """Distance expansion of the exponential map at one pair of tangent vectors."""
    lhs = float(tangent_norm(np.asarray(v, dtype=float) - np.asarray(w, dtype=float)))
    rhs = float(distance(exponential(p, v), exponential(p, w)))
    return {"lhs": lhs, "rhs": rhs, "holds": bool(lhs <= rhs + tolerance)}


def rauch_sweep(n: int, pairs: int, seed: int, max_norm: float = 5.0,
                tolerance: float = 1e-9) -> dict:
    """Seeded sweep of the expansion inequality at the base point of H^n.

    Directions are uniform on the sphere, magnitudes uniform in (0, max_norm].
    Returns the worst margin and the per-pair data of the worst offender.
    """
    gen = rng.stream(seed, rng.TANGENT, n)
    dirs = gen.normal(size=(pairs, 2, n))
    dirs /= np.linalg.norm(dirs, axis=-1, keepdims=True)
    mags = gen.uniform(0.0, max_norm, size=(pairs, 2, 1))
    spatial = dirs * mags
    tangents = np.concatenate([spatial, np.zeros((pairs, 2, 1))], axis=-1)

    p = np.broadcast_to(base_point(n), (pairs, n + 1))
    ev = exponential(p, tangents[:, 0])
    ew = exponential(p, tangents[:, 1])
    lhs = np.linalg.norm(spatial[:, 0] - spatial[:, 1], axis=-1)
    rhs = distance(ev, ew)
    margin = rhs - lhs
    worst = int(np.argmin(margin))
    violations = int(np.sum(margin < -tolerance))
    sheet_defect = float(np.max(np.abs(minkowski(ev, ev) + 1.0)))
    return {"n": n, "pairs": pairs, "violations": violations,
            "min_margin": float(margin[worst]),
            "worst_pair": {"lhs": float(lhs[worst]), "rhs": float(rhs[worst])},
            "max_sheet_defect": sheet_defect,
            "holds": violations == 0,
            "lhs": lhs, "rhs": rhs}


def lorentz_boost(n: int, step: float) -> np.ndarray:
    """Boost by `step` in the (x_1, t) plane of R^(n+1)."""
    a = np.eye(n + 1)
    c, s = np.cosh(step), np.sinh(step)
    a[0, 0] = c
    a[0, -1] = s
    a[-1, 0] = s
    a[-1, -1] = c
    return a


def is_lorentz(a, tol: float = LORENTZ_TOL) -> bool:
    """A^T eta A = eta with eta = diag(I, -1), and the upper sheet preserved."""
    a = np.asarray(a, dtype=float)
    eta = np.eye(a.shape[0])
    eta[-1, -1] = -1.0
    if np.max(np.abs(a.T @ eta @ a - eta)) > tol:
        return False
    return bool((a @ base_point(a.shape[0] - 1))[-1] > 0)


def boost_orbit(n: int, step: float, count: int) -> np.ndarray:
    """Orbit of the base point under the cyclic boost group, centered exponents.

    The k-th and l-th points are exactly |k - l| * step apart.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    half = count // 2
    exponents = np.arange(count) - half
    pts = np.zeros((count, n + 1))
    pts[:, 0] = np.sinh(exponents * step)
    pts[:, -1] = np.cosh(exponents * step)
    return pts
