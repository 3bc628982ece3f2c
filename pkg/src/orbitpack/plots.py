"""Figure rendering for the report path.

Each CLI analysis that writes delimited output also renders a small figure
next to it. Figures are diagnostics, not data: the JSON/CSV files are the
machine-readable record and the only ones covered by byte-reproducibility.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def growth_curve(curve, verdict: str, path) -> None:
    norms = [a for a, _ in curve]
    counts = [b for _, b in curve]
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(norms, counts, "o-")
    ax.set_xlabel("base point norm")
    ax.set_ylabel("packed translates")
    ax.set_title(f"packing growth ({verdict})")
    ax.grid(alpha=0.3)
    _save(fig, path)


def triviality_gaps(gaps, gap_threshold: float, coincidence_tol: float, path) -> None:
    gaps = np.asarray(gaps, dtype=float)
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.semilogy(np.arange(len(gaps)), np.maximum(gaps, 1e-17), "s")
    ax.axhline(gap_threshold, color="tab:red", ls="--", lw=1, label="witness threshold")
    ax.axhline(coincidence_tol, color="tab:green", ls="--", lw=1, label="coincidence tol")
    ax.set_xlabel("test point")
    ax.set_ylabel("orbit gap")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    _save(fig, path)


def rauch_scatter(lhs, rhs, n: int, path, max_points: int = 2000) -> None:
    lhs = np.asarray(lhs)[:max_points]
    rhs = np.asarray(rhs)[:max_points]
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    ax.scatter(lhs, rhs, s=4, alpha=0.4)
    lim = max(lhs.max(), rhs.max()) * 1.05
    ax.plot([0, lim], [0, lim], "k--", lw=1, label="equality")
    ax.set_xlabel("tangent separation")
    ax.set_ylabel("distance after exponential")
    ax.set_title(f"expansion of the exponential map, H^{n}")
    ax.legend(fontsize=8)
    _save(fig, path)


def singular_values(values, cutoff: float, path) -> None:
    values = np.sort(np.asarray(values, dtype=float))
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.semilogy(np.maximum(values, 1e-20), "o", ms=3)
    ax.axhline(cutoff, color="tab:red", ls="--", lw=1, label="nullspace cutoff")
    ax.set_xlabel("index")
    ax.set_ylabel("singular value")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    _save(fig, path)


def boost_distances(step: float, count: int, distances, path) -> None:
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(np.arange(count), distances, "o", ms=3, label="measured")
    half = count // 2
    ax.plot(np.arange(count), np.abs(np.arange(count) - half) * step, "k--",
            lw=1, label="|k| * step")
    ax.set_xlabel("orbit index")
    ax.set_ylabel("distance from base point")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    _save(fig, path)


def field_heatmap(domain, values, path) -> None:
    fig, ax = plt.subplots(figsize=(4.6, 4.0))
    coords = domain.coordinates()
    if values.ndim == 1:
        ax.plot(coords[0], values)
        ax.set_xlabel("r")
        ax.set_ylabel("u")
        ax.grid(alpha=0.3)
    else:
        vmax = np.max(np.abs(values)) or 1.0
        mesh = ax.pcolormesh(coords[0], coords[1], values, cmap="RdBu_r",
                             vmin=-vmax, vmax=vmax, shading="auto")
        fig.colorbar(mesh, ax=ax, shrink=0.85)
        ax.set_xlabel("first coordinate")
        ax.set_ylabel("second coordinate")
        ax.set_aspect("equal")
    _save(fig, path)


def shifted_masses(shifts, masses, pairings, path) -> None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.2))
    ax1.plot(shifts, masses, "o-")
    ax1.set_xlabel("shift")
    ax1.set_ylabel("Lebesgue mass")
    ax1.set_title("mass stays constant")
    ax1.grid(alpha=0.3)
    ax2.plot(shifts, pairings, "s-")
    ax2.set_xlabel("shift")
    ax2.set_ylabel("pairing with test function")
    ax2.set_title("pairings vanish")
    ax2.grid(alpha=0.3)
    _save(fig, path)
