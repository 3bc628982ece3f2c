"""Seeded counter-based random streams.

Every random draw in the package goes through `stream`, which derives an
independent generator from (seed, *path) via numpy's SeedSequence. Because
each sample index owns its own stream, sampling element i never depends on
how many elements were drawn before it: parallel and serial sampling, or
sampling prefixes of different lengths, produce identical values.

The integer tags below namespace the streams. They are part of the
reproducibility contract: changing them changes every seeded result.
"""

import numpy as np

SAMPLE = 1          # group-element sampling, one sub-stream per index
TEST_POINTS = 2     # random probe points for coincidence tests
FIXED_SPACE = 3     # extra Haar samples for fixed-subspace assembly
TWIST_COIN = 4      # coset coin for twisted extensions
TANGENT = 5         # tangent-vector sweeps on the hyperboloid
UNITARY = 6         # complex Ginibre draws for special-unitary sampling
SOLVER_INIT = 7     # initial-guess jitter for the variational solver
PRODUCT_BASE = 16   # factor k of a product group uses PRODUCT_BASE + k


def stream(seed: int, *path: int) -> np.random.Generator:
    """Generator for the sub-stream identified by (seed, *path)."""
    return np.random.default_rng(np.random.SeedSequence((int(seed),) + tuple(int(p) for p in path)))
