"""Deterministic counter-based sampling for reproducible sweeps.

The generator is splitmix64 used in counter mode: the value at stream
position k is

    v_k = mix64((seed + (k + 1) * 0x9E3779B97F4A7C15) mod 2^64)

with the standard mix64 finalizer (see mix64 below).  Index tuples of
arity r consume positions k = i*r .. i*r + r - 1 for tuple i, and each
coordinate is v_k reduced mod 2^n (exact, since 2^n divides 2^64).
Results are independent of worker count and platform.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _M1) & _MASK
    z = ((z ^ (z >> 27)) * _M2) & _MASK
    return z ^ (z >> 31)


def stream_value(seed: int, k: int) -> int:
    """Value at position k of the seed's stream."""
    return mix64(seed + (k + 1) * GOLDEN)


def stream_array(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized stream values for positions [start, start+count)."""
    with np.errstate(over="ignore"):
        ks = np.arange(start, start + count, dtype=np.uint64) + np.uint64(1)
        z = np.uint64(seed & _MASK) + ks * np.uint64(GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        return z ^ (z >> np.uint64(31))


def sample_tuples(n: int, arity: int, count: int, seed: int) -> np.ndarray:
    """(count, arity) array of n-bit index tuples, deterministic in seed."""
    vals = stream_array(seed, 0, count * arity)
    coords = (vals & np.uint64((1 << n) - 1)).astype(np.uint32)
    return coords.reshape(count, arity)
