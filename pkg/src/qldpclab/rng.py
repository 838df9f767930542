"""Deterministic, splittable random streams (Philox counter-based).

Code construction and channel noise draw from disjoint substreams of one
64-bit experiment seed, so changing the number of simulated frames never
perturbs the code structure and every frame is reproducible in isolation.
"""

from __future__ import annotations

import numpy as np

_CONSTRUCTION = 0
_CHANNEL = 1


def construction_stream(seed: int) -> np.random.Generator:
    """Substream that all permutation/label draws for a blueprint consume."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(_CONSTRUCTION,))
    return np.random.Generator(np.random.Philox(ss))


def frame_stream(seed: int, frame_index: int) -> np.random.Generator:
    """Noise substream for one Monte Carlo frame, keyed by (seed, frame)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(_CHANNEL, frame_index))
    return np.random.Generator(np.random.Philox(ss))
