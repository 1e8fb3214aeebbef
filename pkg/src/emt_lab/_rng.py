"""Deterministic stream derivation for reproducible runs.

All randomness in the toolkit flows through a 64-bit master seed and
`derive_stream`, a stateless splitmix64-style mixer. A (seed, index) pair
always maps to the same child seed on every platform, so parallel fan-out
over replicates or scenario runs stays order-independent.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def derive_stream(master_seed: int, index: int) -> int:
    """Mix a master seed and stream index into a child seed (splitmix64)."""
    z = (master_seed + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def make_generator(master_seed: int, index: int = 0) -> np.random.Generator:
    """Generator seeded from the derived child stream."""
    return np.random.default_rng(derive_stream(master_seed, index))
