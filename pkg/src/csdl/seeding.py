"""Deterministic RNG stream derivation.

Every random quantity in the package is drawn from a Philox (counter-based)
generator whose key is derived by hashing a tuple of non-negative integers
through numpy's SeedSequence. Streams are therefore independent of execution
order and thread count: trial t of grid point g always sees the same bits.

Two tags keep the data-generating stream and the solver-initialization
stream disjoint; without this the solver would be initialized with the very
same Gaussian draws used to plant the instance.
"""

from __future__ import annotations

import numpy as np

_TAG_INSTANCE = 0
_TAG_SOLVER = 1


def _stream(entropy: list[int]) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def trial_seed(master_seed: int, grid_index: int, trial_index: int) -> int:
    """Derive the 64-bit seed of one trial from the master seed and its position."""
    ss = np.random.SeedSequence([int(master_seed), int(grid_index), int(trial_index)])
    return int(ss.generate_state(1, np.uint64)[0])


def instance_stream(seed: int) -> np.random.Generator:
    """Generator used to plant a synthetic instance."""
    return _stream([int(seed), _TAG_INSTANCE])


def solver_stream(seed: int, restart: int = 0) -> np.random.Generator:
    """Generator used to initialize the solver (one per restart)."""
    return _stream([int(seed), _TAG_SOLVER, int(restart)])
