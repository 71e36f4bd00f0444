"""The fixed 64-bit linear congruential generator used for all sampling.

A named generator (rather than :mod:`random`) keeps sample sets identical
across Python versions and platforms.
"""
from __future__ import annotations

from fractions import Fraction

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
_MASK = (1 << 64) - 1


class LCG:
    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & _MASK
        return self.state

    def below(self, n: int) -> int:
        """Integer in ``[0, n)`` from the high 32 bits (low LCG bits are weak)."""
        if not 0 < n <= 1 << 32:
            raise ValueError("n must lie in (0, 2^32]")
        return (self.next_u64() >> 32) % n

    def fraction(self, bits: int = 53) -> Fraction:
        """Dyadic rational in ``[0, 1)`` with ``bits`` random bits."""
        return Fraction(self.next_u64() >> (64 - bits), 1 << bits)
