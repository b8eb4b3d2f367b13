"""Deterministic randomness: Philox counter-based streams keyed by
(seed, substream index), reproducible across platforms."""

from __future__ import annotations

import numpy as np

GENERATOR_NAME = "philox4x64"


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), index & (2**64 - 1)]))
