"""Seeded randomness.

All randomness in the toolkit flows from one top-level seed; independent
streams are derived with a counter-based (Philox) generator keyed by
(seed, stream), so parallel or reordered execution cannot change results.
"""

import numpy as np


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
