"""Seeded pseudo-random streams for cost simulations.

A xoshiro256** generator whose 256-bit state is filled by SplitMix64 from a
64-bit seed. The recurrence is fixed so that a (seed, run index) pair yields
the same draws on every platform and in every execution order.
"""

from typing import (
    List,
    Tuple)

from multalpha.errors import (
    MultalphaDomainError)

MASK64 = 0xFFFFFFFFFFFFFFFF
_TWO_POW_53 = float(1 << 53)


def rotl(x: int, k: int) -> int:
    """Rotate a 64-bit integer left by `k` bits."""
    return ((x << k) | (x >> (64 - k))) & MASK64


def splitmix64(state: int) -> Tuple[int, int]:
    """Advance a SplitMix64 state, returning (new state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class SeededGenerator(object):
    """xoshiro256** stream seeded through SplitMix64."""

    def __init__(self, seed: int) -> None:
        self._seed = seed & MASK64
        state = self._seed
        words = []
        for _ in range(4):
            state, word = splitmix64(state)
            words.append(word)
        self._s: List[int] = words

    @classmethod
    def for_run(cls, master_seed: int, run_index: int) -> 'SeededGenerator':
        """Substream for one simulation run."""
        return cls((master_seed + run_index) & MASK64)

    @property
    def seed(self) -> int:
        return self._seed

    def next_u64(self) -> int:
        """Next raw 64-bit output."""
        s = self._s
        result = (rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64

        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)

        return result

    def uniform(self, low: float=0.0, high: float=1.0) -> float:
        """Draw from [low, high) using the top 53 bits of one output."""
        if not (high >= low):
            raise MultalphaDomainError(
                'Empty uniform interval [' + repr(low) + ', ' + repr(high) +
                ']')
        u = (self.next_u64() >> 11) / _TWO_POW_53
        return low + (high - low) * u

    def uniforms(self, count: int, low: float=0.0,
                 high: float=1.0) -> List[float]:
        """Draw `count` values from [low, high)."""
        return [self.uniform(low, high) for _ in range(count)]
