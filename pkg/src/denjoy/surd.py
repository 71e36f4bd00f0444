"""Exact arithmetic in Q(sqrt d) and continued-fraction expansion of surds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .certified import as_fraction


@dataclass(frozen=True)
class QuadraticNumber:
    """``rational + coeff * sqrt(radicand)``; ``radicand`` is a positive non-square."""

    rational: Fraction
    coeff: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, "rational", as_fraction(self.rational))
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        d = self.radicand
        if d <= 0 or math.isqrt(d) ** 2 == d:
            raise ValueError(f"radicand {d} must be a positive non-square")

    def _lift(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if other.radicand != self.radicand:
                raise ValueError("radicands differ")
            return other
        return QuadraticNumber(as_fraction(other), Fraction(0), self.radicand)

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticNumber(self.rational + o.rational, self.coeff + o.coeff, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.rational, -self.coeff, self.radicand)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        d = self.radicand
        return QuadraticNumber(
            self.rational * o.rational + self.coeff * o.coeff * d,
            self.rational * o.coeff + self.coeff * o.rational,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.rational, -self.coeff, self.radicand)

    def norm(self) -> Fraction:
        return self.rational ** 2 - self.coeff ** 2 * self.radicand

    def reciprocal(self) -> QuadraticNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero quadratic number")
        c = self.conjugate()
        return QuadraticNumber(c.rational / n, c.coeff / n, self.radicand)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    @property
    def is_rational(self) -> bool:
        return self.coeff == 0

    def _integer_form(self) -> tuple[int, int, int]:
        """``(A, B, C)`` with value ``(A + B*sqrt d)/C`` and ``C > 0``."""
        c = math.lcm(self.rational.denominator, self.coeff.denominator)
        return int(self.rational * c), int(self.coeff * c), c

    def __floor__(self) -> int:
        a, b, c = self._integer_form()
        if b == 0:
            return a // c
        t = math.isqrt(b * b * self.radicand)
        # b*sqrt(d) lies strictly between consecutive integers t and t+1 (up to sign)
        return (a + t) // c if b > 0 else (a - t - 1) // c

    def _cmp_zero(self) -> int:
        if self.coeff == 0:
            return (self.rational > 0) - (self.rational < 0)
        return 1 if math.floor(self) >= 0 else -1

    def __lt__(self, other):
        return (self - other)._cmp_zero() < 0

    def __gt__(self, other):
        return (self - other)._cmp_zero() > 0

    def __float__(self):
        return float(self.rational) + float(self.coeff) * math.sqrt(self.radicand)


def expand(x: QuadraticNumber) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Continued fraction of an irrational surd: ``(a_0, prefix, period)``.

    Works on the integer state ``(P, Q)`` of ``(P + sqrt D)/Q`` with
    ``Q | D - P^2``; the first repeated state marks the start of the period.
    """
    if x.is_rational:
        raise ValueError("rational input has a finite expansion")
    a, b, c = x._integer_form()
    D = b * b * x.radicand
    P, Q = (a, c) if b > 0 else (-a, -c)
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    s = math.isqrt(D)

    def floor_state(P, Q):
        return (P + s) // Q if Q > 0 else (P + s + 1) // Q

    a0 = floor_state(P, Q)
    P = a0 * Q - P
    Q = (D - P * P) // Q
    seen: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(quotients)
        ai = floor_state(P, Q)
        quotients.append(ai)
        P = ai * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return a0, tuple(quotients[:start]), tuple(quotients[start:])
