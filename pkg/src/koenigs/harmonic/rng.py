"""Counter-based random numbers for walk-on-spheres.

Walk ``k`` under seed ``s`` owns the SplitMix64 stream keyed by
``walk_key(s, k)``; its ``j``-th uniform is ``uniform(key, j)``.  Every value
is a pure function of ``(seed, k, j)``, so results never depend on how walks
are batched or distributed over workers.  The compiled kernel implements the
same arithmetic.
"""
from __future__ import annotations

import numpy as np

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB
TO_UNIT = 2.0 ** -53


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * MUL1) & MASK
    z = ((z ^ (z >> 27)) * MUL2) & MASK
    return z ^ (z >> 31)


def walk_key(seed: int, k: int) -> int:
    return mix64(mix64(seed) ^ ((k * GOLDEN) & MASK))


def uniform(key: int, j: int) -> float:
    return (mix64(key + (j + 1) * GOLDEN) >> 11) * TO_UNIT


# vectorized twins (uint64 arithmetic wraps modulo 2**64)

_S30, _S27, _S31, _S11 = (np.uint64(s) for s in (30, 27, 31, 11))
_M1, _M2, _G = np.uint64(MUL1), np.uint64(MUL2), np.uint64(GOLDEN)


def mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def walk_keys_np(seed: int, ks: np.ndarray) -> np.ndarray:
    base = np.uint64(mix64(seed))
    return mix64_np(base ^ (ks.astype(np.uint64) * _G))


def uniform_np(keys: np.ndarray, j: int) -> np.ndarray:
    off = np.uint64(((j + 1) * GOLDEN) & MASK)
    return (mix64_np(keys + off) >> _S11).astype(np.float64) * TO_UNIT
