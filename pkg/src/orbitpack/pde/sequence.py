"""A translated-bump family witnessing loss of compactness.

Functions radial in (x1, x2) and odd in x3 still admit the escape to
infinity along x3: translating a fixed odd profile keeps every Lebesgue
norm while the functions go to zero weakly. The family built here is

    u_n(r, x3) = phi(r^2) * (beta(x3 - n) - beta(-x3 - n)),

where phi and beta come from the polynomial bump (1 - s^2)^3 scaled onto
its support: phi(t) = bump(t) lives on r <= 1 and beta(s) = bump(2 s - 3)
on s in [1, 2]. Masses int |u_n|^p are computed with the cell-centered
product rule on an (r, x3) grid with weight 2 pi r; pairings are weighted
H^1 inner products against a fixed compactly supported test function.

The default grid spacing 1/128 is a binary fraction, so integer shifts move
the profile by an exact number of cells and the per-shift masses agree bit
for bit, not merely to rounding.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss

DEFAULT_SPACING = 1.0 / 128.0
TEST_HALF_WIDTH = 2.5  # support of the pairing test function in x3


def bump(s) -> np.ndarray:
    """(1 - s^2)^3 on |s| < 1, zero outside; C^2 and compactly supported."""
    s = np.asarray(s, dtype=float)
    return np.where(np.abs(s) < 1.0, (1.0 - s ** 2) ** 3, 0.0)


def odd_profile(z: np.ndarray, shift: int) -> np.ndarray:
    """Odd-in-z translate: positive lobe on [shift+1, shift+2], mirrored negative."""
    return bump(2.0 * (z - shift) - 3.0) - bump(2.0 * (-z - shift) - 3.0)


def counterexample_sequence(p_exponent: float = 4.0, shifts=range(1, 9),
                            spacing: float = DEFAULT_SPACING,
                            r_max: float = 1.5,
                            z_max: float = None) -> dict:
    """Per-shift Lebesgue masses and H^1 pairings of the escaping family."""
    if not 2.0 < p_exponent < 6.0:
        raise ValueError("the exponent must lie strictly between 2 and 6")
    shifts = [int(s) for s in shifts]
    if not shifts or min(shifts) < 1:
        raise ValueError("shifts must be integers >= 1")
    if z_max is None:
        z_max = max(shifts) + 3.0
    if z_max < max(shifts) + 2.0 + 2.0 * spacing:
        raise ValueError(
            f"grid too small: the largest shift needs z_max >= {max(shifts) + 2.0}")
    if r_max < 1.0 + 2.0 * spacing:
        raise ValueError("grid too small: the radial bump needs r_max > 1")

    h = float(spacing)
    r = (np.arange(int(round(r_max / h))) + 0.5) * h
    z = -z_max + (np.arange(int(round(2.0 * z_max / h))) + 0.5) * h
    radial = bump(r ** 2)
    weight = 2.0 * np.pi * r[:, None] * h * h
    radial_factor = float(np.sum(2.0 * np.pi * r * radial ** p_exponent * h))

    g = np.outer(radial, bump(z / TEST_HALF_WIDTH))

    def h1_pairing(u, v):
        dur = (np.vstack([u[1:], np.zeros((1, u.shape[1]))]) - u) / h
        duz = (np.hstack([u[:, 1:], np.zeros((u.shape[0], 1))]) - u) / h
        dvr = (np.vstack([v[1:], np.zeros((1, v.shape[1]))]) - v) / h
        dvz = (np.hstack([v[:, 1:], np.zeros((v.shape[0], 1))]) - v) / h
        return float(np.sum(weight * (dur * dvr + duz * dvz + u * v)))

    def lobe_sum(psi, lo):
        # sum over the cells covering [lo, lo+1] in ascending index order;
        # the slice moves by an exact whole number of cells per unit shift,
        # so the summands and their grouping match between shifts bit for bit
        start = int(np.searchsorted(z, lo))
        length = int(round(1.0 / h)) + 1
        return np.sum(np.abs(psi[start:start + length]) ** p_exponent)

    masses, pairings, overlaps = [], [], []
    for n in shifts:
        psi = odd_profile(z, n)
        axial = (lobe_sum(psi, n + 1.0) + lobe_sum(psi, -n - 2.0)) * h
        masses.append(radial_factor * float(axial))
        pairings.append(h1_pairing(np.outer(radial, psi), g))
        overlaps.append(bool(n + 1.0 < TEST_HALF_WIDTH))

    return {"p_exponent": p_exponent, "shifts": shifts, "masses": masses,
            "pairings": pairings, "supports_overlap": overlaps,
            "grid": {"spacing": h, "r_max": r_max, "z_max": float(z_max)},
            "mass_spread": float((max(masses) - min(masses)) / max(masses))}


def reference_mass(p_exponent: float, nodes: int = 40) -> float:
    """Independent quadrature oracle for the common mass value.

    The integrand is polynomial on each support interval, so Gauss-Legendre
    with enough nodes integrates it exactly; the full mass separates into
    the radial factor times twice the one-lobe axial factor.
    """
    xs, ws = leggauss(nodes)

    def integrate(f, a, b):
        x = 0.5 * (b - a) * xs + 0.5 * (a + b)
        return 0.5 * (b - a) * float(np.sum(ws * f(x)))

    radial = integrate(lambda rr: 2.0 * np.pi * rr * bump(rr ** 2) ** p_exponent, 0.0, 1.0)
    axial = integrate(lambda s: bump(2.0 * s - 3.0) ** p_exponent, 1.0, 2.0)
    return 2.0 * radial * axial
