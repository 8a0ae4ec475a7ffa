"""Deterministic 64-bit generator used wherever the workbench needs randomness.

The recurrence is splitmix64 (all arithmetic mod 2**64):

    state = state + 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

These constants are part of the public contract: any implementation of the
same recurrence, in any language, reproduces the exact stream for a given
seed.  Search runs and solver starts are therefore replayable bit for bit.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Stateful splitmix64 stream seeded with a 64-bit integer."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection; unbiased and portable."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % bound

    def next_float(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def sample_distinct(self, count: int, universe: int) -> list[int]:
        """First `count` distinct draws of next_below(universe), in draw order."""
        if count > universe:
            raise ValueError("cannot sample more values than the universe holds")
        seen: set[int] = set()
        out: list[int] = []
        while len(out) < count:
            v = self.next_below(universe)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out
