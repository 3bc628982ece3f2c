"""Points in the three supported metric-space backends.

A point carries its coordinates plus a space tag; distance is the only
primitive the packing machinery needs, so any of the backends can feed it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hyperbolic, spd

EUCLIDEAN = "euclidean"
HYPERBOLOID = "hyperboloid"
SPD = "spd"


@dataclass(frozen=True, eq=False)
class SpacePoint:
    coords: np.ndarray
    space: str = EUCLIDEAN

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)
        if self.space == EUCLIDEAN:
            if c.ndim != 1:
                raise ValueError("euclidean coordinates must be a vector")
        elif self.space == HYPERBOLOID:
            hyperbolic.check_point(c)
        elif self.space == SPD:
            spd.check_spd(c)
        else:
            raise ValueError(f"unknown space tag {self.space!r}")


def euclidean_point(coords) -> SpacePoint:
    return SpacePoint(np.asarray(coords, dtype=float), EUCLIDEAN)


def distance(p: SpacePoint, q: SpacePoint) -> float:
    if p.space != q.space:
        raise ValueError(f"mixed space tags: {p.space} vs {q.space}")
    if p.space == EUCLIDEAN:
        return float(np.linalg.norm(p.coords - q.coords))
    if p.space == HYPERBOLOID:
        return float(hyperbolic.distance(p.coords, q.coords))
    return spd.distance(p.coords, q.coords)


def batch_distance(space: str, stack: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from each coordinate array in `stack` to `b`."""
    if space == EUCLIDEAN:
        return np.linalg.norm(stack - b, axis=-1)
    if space == HYPERBOLOID:
        return hyperbolic.distance(stack, b)
    return np.array([spd.distance(a, b) for a in stack])
