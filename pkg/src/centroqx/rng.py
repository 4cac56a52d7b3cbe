"""Deterministic random streams built on splitmix64.

All randomness in the package flows through these helpers so that every
generator, perturbation, and experiment row is reproducible from integer seeds
alone, independent of numpy's global state or version-dependent bit streams.

The k-th raw output for seed ``s`` is ``mix(s + (k+1) * GOLDEN)`` computed in
uint64 arithmetic, which makes arbitrary subsequences addressable without
generating their prefix.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def _mix_int(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def raw_stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Return ``count`` uint64 outputs starting at position ``offset``."""
    if count < 0:
        raise ValueError("count must be non-negative")
    idx = np.arange(int(offset) + 1, int(offset) + int(count) + 1, dtype=np.uint64)
    return _mix_array(np.uint64(int(seed) & _MASK) + idx * np.uint64(GOLDEN))


def uniform_open(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Uniform draws on (-1, 1), 53-bit mantissa resolution."""
    bits = raw_stream(seed, count, offset) >> np.uint64(11)
    u = bits.astype(np.float64) * 2.0**-53  # [0, 1)
    return 2.0 * u - 1.0


def sign_stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Deterministic +-1.0 draws (sign of the uniform stream)."""
    return np.where(uniform_open(seed, count, offset) >= 0.0, 1.0, -1.0)


def derive_seed(seed: int, *indices: int) -> int:
    """Fold integer labels into a child seed.

    Used to give each trial/purpose its own independent stream without
    coordinating offsets across call sites.
    """
    s = int(seed) & _MASK
    for idx in indices:
        s = _mix_int(((s ^ (int(idx) & _MASK)) + GOLDEN) & _MASK)
    return s
