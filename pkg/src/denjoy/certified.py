"""Certified enclosures with exact rational midpoint and radius."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def format_rational(x: Fraction) -> str:
    """Serialize as ``p/q`` (``q`` is always written, even when 1)."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


@dataclass(frozen=True)
class CertifiedValue:
    """The closed interval ``[midpoint - radius, midpoint + radius]``."""

    midpoint: Fraction
    radius: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "midpoint", as_fraction(self.midpoint))
        object.__setattr__(self, "radius", as_fraction(self.radius))
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    @classmethod
    def exact(cls, x: Rational) -> CertifiedValue:
        return cls(as_fraction(x), Fraction(0))

    @classmethod
    def from_bounds(cls, lo: Rational, hi: Rational) -> CertifiedValue:
        lo, hi = as_fraction(lo), as_fraction(hi)
        if hi < lo:
            lo, hi = hi, lo
        return cls((lo + hi) / 2, (hi - lo) / 2)

    @property
    def lo(self) -> Fraction:
        return self.midpoint - self.radius

    @property
    def hi(self) -> Fraction:
        return self.midpoint + self.radius

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: CertifiedValue) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        if isinstance(other, CertifiedValue):
            return CertifiedValue(self.midpoint + other.midpoint, self.radius + other.radius)
        return CertifiedValue(self.midpoint + as_fraction(other), self.radius)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedValue(-self.midpoint, self.radius)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: Rational) -> CertifiedValue:
        k = as_fraction(k)
        return CertifiedValue(self.midpoint * k, self.radius * abs(k))

    def widen(self, r: Rational) -> CertifiedValue:
        return CertifiedValue(self.midpoint, self.radius + as_fraction(r))

    def mod1(self) -> CertifiedValue:
        """Shift the midpoint into ``[0, 1)``; the enclosure is read on the circle."""
        return CertifiedValue(self.midpoint - math.floor(self.midpoint), self.radius)

    def __str__(self):
        return f"{format_rational(self.midpoint)} +/- {format_rational(self.radius)}"


def circular_distance(a: Fraction, b: Fraction) -> Fraction:
    """Distance between two angles on the unit-length circle."""
    d = (a - b) % 1
    return min(d, 1 - d)


def circle_disjoint(a: CertifiedValue, b: CertifiedValue) -> bool:
    """True when the two enclosures, read modulo 1, are certainly disjoint."""
    if a.radius + b.radius >= Fraction(1, 2):
        return False
    return circular_distance(a.midpoint, b.midpoint) > a.radius + b.radius
