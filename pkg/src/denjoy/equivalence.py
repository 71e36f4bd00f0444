"""GL(2,Z) action on irrationals and the equivalence decision procedure.

Two irrationals are GL(2,Z)-equivalent iff their continued-fraction
expansions eventually agree.  For quadratic irrationals that reduces to
comparing periods up to cyclic rotation; :func:`gl2z_matrix_search` is an
independent brute-force check over bounded matrices.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .certified import CertifiedValue, as_fraction
from .contfrac import ContinuedFraction, evaluate
from .errors import UnsupportedInput
from .surd import QuadraticNumber, expand


@dataclass(frozen=True)
class IntegerMatrix2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValueError(f"determinant {self.det} is not +-1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> IntegerMatrix2:
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, k: int) -> IntegerMatrix2:
        return cls(1, k, 0, 1)

    def __matmul__(self, other: IntegerMatrix2) -> IntegerMatrix2:
        return IntegerMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> IntegerMatrix2:
        s = self.det
        return IntegerMatrix2(s * self.d, -s * self.b, -s * self.c, s * self.a)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def _partial_matrix(terms) -> tuple[int, int, int, int]:
    # product of [[a, 1], [1, 0]]: maps y to [a_1; a_2, ..., a_k, y]
    A, B, C, D = 1, 0, 0, 1
    for a in terms:
        A, B, C, D = A * a + B, A, C * a + D, C
    return A, B, C, D


@lru_cache(maxsize=1024)
def quadratic_value(cf: ContinuedFraction) -> QuadraticNumber:
    """Exact surd value of a periodic continued fraction."""
    if cf.periodic_tail is None:
        raise UnsupportedInput("exact value needs a periodic tail")
    # purely periodic y = [t_1; t_2, ..., t_k, y] solves q y^2 + (q' - p) y - p' = 0
    p, p1, q, q1 = _partial_matrix(cf.periodic_tail)
    disc = (q1 - p) ** 2 + 4 * q * p1
    y = QuadraticNumber(Fraction(p - q1, 2 * q), Fraction(1, 2 * q), disc)
    A, B, C, D = _partial_matrix((0,) + cf.prefix)
    return (A * y + B) / (C * y + D)


def _apply(M: IntegerMatrix2, x):
    return (M.a * x + M.b) / (M.c * x + M.d)


def from_quadratic(x: QuadraticNumber) -> tuple[int, ContinuedFraction]:
    """Split an irrational surd into integer part and fractional continued fraction."""
    a0, prefix, period = expand(x)
    return a0, ContinuedFraction(prefix, period)


def mobius_image(M: IntegerMatrix2, cf: ContinuedFraction) -> tuple[int, ContinuedFraction]:
    """``(k, beta)`` with ``M . alpha = k + beta`` exactly, ``beta`` in (0, 1)."""
    if cf.periodic_tail is None:
        raise UnsupportedInput("Mobius image needs a quadratic irrational; use gl2z_equivalent for streams")
    return from_quadratic(_apply(M, quadratic_value(cf)))


def mobius_apply(M: IntegerMatrix2, cf: ContinuedFraction) -> ContinuedFraction:
    """Canonical continued fraction of the fractional part of ``(a alpha + b)/(c alpha + d)``."""
    return mobius_image(M, cf)[1]


class Verdict(enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "UnknownUpToDepth"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    tail: Optional[tuple[int, ...]] = None
    other_tail: Optional[tuple[int, ...]] = None
    shifts: tuple[tuple[int, int], ...] = ()

    @property
    def witness(self) -> Optional[tuple[int, ...]]:
        return self.tail if self.verdict is Verdict.EQUIVALENT else None


def gl2z_equivalent(cf: ContinuedFraction, other: ContinuedFraction, depth: int = 32) -> Classification:
    """Decide GL(2,Z)-equivalence.

    Quadratic pairs get an exact verdict from their canonical periods.  When
    either side is a stream, the known expansions are compared after
    deleting prefixes of length ``<= depth``; alignments that agree on every
    known term are reported, but the verdict stays ``UNKNOWN`` because a
    finite prefix never decides the tail.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if cf.is_quadratic and other.is_quadratic:
        t1, t2 = cf.canonical_tail(), other.canonical_tail()
        if t1 == t2:
            return Classification(Verdict.EQUIVALENT, t1, t2)
        return Classification(Verdict.NOT_EQUIVALENT, t1, t2)
    shifts = []
    for i in range(depth + 1):
        for j in range(depth + 1):
            if _aligned(cf, other, i, j, depth):
                shifts.append((i, j))
    return Classification(Verdict.UNKNOWN, cf.canonical_tail(), other.canonical_tail(), tuple(shifts))


def _aligned(x: ContinuedFraction, y: ContinuedFraction, i: int, j: int, depth: int) -> bool:
    avail = min(x.available_terms - i, y.available_terms - j, 2 * depth)
    if avail < 1:
        return False
    return all(
        x.partial_quotient(i + k) == y.partial_quotient(j + k) for k in range(1, int(avail) + 1)
    )


@lru_cache(maxsize=16)
def gl2z_matrices(bound: int) -> tuple[IntegerMatrix2, ...]:
    """Determinant +-1 matrices with entries in [-bound, bound], one per pair +-M.

    ``M`` and ``-M`` act identically, so only the representative whose first
    nonzero entry is positive is kept.  The identity comes first; the rest
    are ordered by max-entry norm, then lexicographically on (a, b, c, d).
    """
    out = []
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if a * d - b * c not in (1, -1):
            continue
        lead = next(x for x in (a, b, c, d) if x)
        if lead > 0 and (a, b, c, d) != (1, 0, 0, 1):
            out.append(IntegerMatrix2(a, b, c, d))
    out.sort(key=lambda m: (max(abs(m.a), abs(m.b), abs(m.c), abs(m.d)), m.a, m.b, m.c, m.d))
    return (IntegerMatrix2.identity(),) + tuple(out)


def mobius_enclosure(M: IntegerMatrix2, x: CertifiedValue) -> Optional[CertifiedValue]:
    """Certified image of an interval, or ``None`` if the pole may lie inside."""
    lo, hi = x.lo, x.hi
    den_lo, den_hi = M.c * lo + M.d, M.c * hi + M.d
    if den_lo == 0 or den_hi == 0 or (den_lo > 0) != (den_hi > 0):
        return None
    # a Mobius map is monotone away from its pole
    return CertifiedValue.from_bounds((M.a * lo + M.b) / den_lo, (M.a * hi + M.b) / den_hi)


def gl2z_matrix_search(
    cf: ContinuedFraction, other: ContinuedFraction, bound: int, tol
) -> Optional[IntegerMatrix2]:
    """First matrix (in enumeration order) moving ``alpha`` to within ``tol`` of ``alpha'``.

    Both values are enclosed at precision ``tol/4`` and the interval image
    must lie entirely within ``tol`` of the target enclosure.
    """
    tol = as_fraction(tol)
    if bound < 1 or tol <= 0:
        raise ValueError("bound and tol must be positive")
    x = evaluate(cf, tol / 4)
    y = evaluate(other, tol / 4)
    xf, yf, tf = float(x.midpoint), float(y.midpoint), float(tol)
    for M in gl2z_matrices(bound):
        den = M.c * xf + M.d
        # float prefilter; the decision itself is the exact interval test below
        if den != 0 and abs((M.a * xf + M.b) / den - yf) > 2 * tf + 1e-9:
            continue
        img = mobius_enclosure(M, x)
        if img is None:
            continue
        if max(img.hi - y.lo, y.hi - img.lo) <= tol:
            return M
    return None


def value_float(cf: ContinuedFraction) -> float:
    return float(evaluate(cf, Fraction(1, 2 ** 60)).midpoint)

