"""Reproducible random states from a named, documented generator.

The stream is splitmix64: state_{k+1} = state_k + 0x9E3779B97F4A7C15 mod 2^64,
each output mixed by two xor-shift-multiply rounds.  Uniform doubles take the
top 53 bits; Gaussian pairs come from the Box-Muller transform with
u1 = 1 - uniform (so u1 in (0, 1] and the log stays finite).  Identical seeds
give identical states on any platform.
"""

from __future__ import annotations

import math

import numpy as np

from .operators import project_to_zero_sum
from .spectral import QuantumState

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """64-bit mixing generator; the full stream is a pure function of the seed."""

    def __init__(self, seed: int):
        self._state = int(seed) & MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def next_gaussian_pair(self) -> tuple[float, float]:
        """Standard-normal pair via Box-Muller."""
        u1 = 1.0 - self.next_unit()
        u2 = self.next_unit()
        r = math.sqrt(-2.0 * math.log(u1))
        ang = 2.0 * math.pi * u2
        return r * math.cos(ang), r * math.sin(ang)


def gaussian_complex_vector(n: int, seed: int) -> np.ndarray:
    """n complex entries, each one Gaussian pair from the seeded stream."""
    gen = SplitMix64(seed)
    out = np.empty(int(n), dtype=complex)
    for j in range(int(n)):
        x, y = gen.next_gaussian_pair()
        out[j] = complex(x, y)
    return out


def random_state(n: int, seed: int, in_zero_sum: bool = False) -> QuantumState:
    """Seeded random unit state; optionally projected onto the zero-sum subspace."""
    state = QuantumState.normalized(gaussian_complex_vector(n, seed))
    if in_zero_sum:
        state = project_to_zero_sum(state)
    return state
