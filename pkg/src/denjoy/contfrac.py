"""Continued fractions of irrationals in (0, 1).

A :class:`ContinuedFraction` is either a quadratic irrational (finite prefix
followed by a periodic tail) or a *stream*: a finite known prefix of an
infinite expansion whose continuation is unknown.  Operations that need
more partial quotients than a stream provides raise :class:`DepthExhausted`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .certified import CertifiedValue, as_fraction
from .errors import DepthExhausted, ParseError


def _minimal_period(block: tuple[int, ...]) -> tuple[int, ...]:
    n = len(block)
    for p in range(1, n + 1):
        if n % p == 0 and block[:p] * (n // p) == block:
            return block[:p]
    return block


def least_rotation(block: Sequence[int]) -> tuple[int, ...]:
    block = tuple(block)
    return min(block[i:] + block[:i] for i in range(len(block)))


@dataclass(frozen=True)
class ContinuedFraction:
    """``[0; prefix..., (tail...)]`` with the integer part fixed at 0.

    The constructor normalizes to the shortest period and the shortest
    prefix, so two periodic instances are equal iff they denote the same
    number.
    """

    prefix: tuple[int, ...] = ()
    periodic_tail: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        prefix = tuple(int(a) for a in self.prefix)
        tail = None if self.periodic_tail is None else tuple(int(a) for a in self.periodic_tail)
        if any(a < 1 for a in prefix) or (tail is not None and any(a < 1 for a in tail)):
            raise ValueError("partial quotients must be positive integers")
        if tail is not None:
            if not tail:
                raise ValueError("periodic tail must be nonempty")
            tail = _minimal_period(tail)
            while prefix and prefix[-1] == tail[-1]:
                prefix = prefix[:-1]
                tail = (tail[-1],) + tail[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "periodic_tail", tail)

    @classmethod
    def periodic(cls, tail: Sequence[int], prefix: Sequence[int] = ()) -> ContinuedFraction:
        return cls(tuple(prefix), tuple(tail))

    @classmethod
    def stream(cls, terms: Sequence[int]) -> ContinuedFraction:
        return cls(tuple(terms), None)

    @property
    def is_quadratic(self) -> bool:
        return self.periodic_tail is not None

    @property
    def available_terms(self) -> float:
        return math.inf if self.is_quadratic else len(self.prefix)

    def canonical_tail(self) -> Optional[tuple[int, ...]]:
        if self.periodic_tail is None:
            return None
        return least_rotation(self.periodic_tail)

    def partial_quotient(self, i: int) -> int:
        """The partial quotient ``a_i`` (1-indexed; ``a_0 = 0``)."""
        if i == 0:
            return 0
        if i < 0:
            raise IndexError(i)
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        if self.periodic_tail is None:
            raise DepthExhausted(f"stream has only {len(self.prefix)} known partial quotients")
        tail = self.periodic_tail
        return tail[(i - len(self.prefix) - 1) % len(tail)]

    def terms(self, k: int) -> tuple[int, ...]:
        return tuple(self.partial_quotient(i) for i in range(1, k + 1))

    def iter_terms(self) -> Iterator[int]:
        i = 1
        while True:
            try:
                yield self.partial_quotient(i)
            except DepthExhausted:
                return
            i += 1

    def __str__(self):
        return format_cf(self)

    def __repr__(self):
        return f"ContinuedFraction({format_cf(self)!r})"


_CF_RE = re.compile(r"^\[\s*(-?\d+)\s*;(.*)\]$", re.S)


def parse_cf(text: str) -> ContinuedFraction:
    """Parse ``"[0; 1, 2, (2, 3)]"``; a parenthesized final block is the period."""
    m = _CF_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed continued fraction: {text!r}")
    if int(m.group(1)) != 0:
        raise ParseError("integer part must be 0 (values live in (0, 1))")
    body = m.group(2).strip()
    tail = None
    if "(" in body:
        head, _, rest = body.partition("(")
        inner, close, trailing = rest.partition(")")
        if not close or trailing.strip():
            raise ParseError(f"periodic block must close the expansion: {text!r}")
        tail = _int_list(inner, text)
        if not tail:
            raise ParseError("empty periodic block")
        body = head.strip().rstrip(",")
    prefix = _int_list(body, text)
    try:
        return ContinuedFraction(tuple(prefix), None if tail is None else tuple(tail))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _int_list(body: str, text: str) -> list[int]:
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if not re.fullmatch(r"\d+", tok):
            raise ParseError(f"bad partial quotient {tok!r} in {text!r}")
        out.append(int(tok))
    return out


def format_cf(cf: ContinuedFraction) -> str:
    parts = [str(a) for a in cf.prefix]
    if cf.periodic_tail is not None:
        parts.append("(" + ", ".join(str(a) for a in cf.periodic_tail) + ")")
    return "[0; " + ", ".join(parts) + "]"


@lru_cache(maxsize=4096)
def _convergent_table(cf: ContinuedFraction, k: int) -> tuple[tuple[int, int], ...]:
    """``((p_0, q_0), ..., (p_k, q_k))`` with ``p_0/q_0 = 0/1``."""
    p_prev, q_prev = 1, 0
    p, q = 0, 1
    out = [(p, q)]
    for i in range(1, k + 1):
        a = cf.partial_quotient(i)
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append((p, q))
    return tuple(out)


def convergents(cf: ContinuedFraction, k: int) -> list[Fraction]:
    """The first ``k`` convergents ``p_1/q_1, ..., p_k/q_k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    table = _convergent_table(cf, k)
    return [Fraction(p, q) for p, q in table[1:]]


def denominators(cf: ContinuedFraction) -> Iterator[int]:
    """``q_0 = 1, q_1, q_2, ...`` for as long as partial quotients are known."""
    q_prev, q = 0, 1
    yield q
    for a in cf.iter_terms():
        q, q_prev = a * q + q_prev, q
        yield q


@lru_cache(maxsize=8192)
def evaluate(cf: ContinuedFraction, eps: Fraction) -> CertifiedValue:
    """Enclosure of the value with radius ``<= eps``.

    Consecutive convergents bracket the value, so the enclosure is the
    interval they span.
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eps >= Fraction(1, 2):
        return CertifiedValue(Fraction(1, 2), Fraction(1, 2))
    p_prev, q_prev = 1, 0
    p, q = 0, 1
    i = 0
    while True:
        i += 1
        try:
            a = cf.partial_quotient(i)
        except DepthExhausted as exc:
            raise DepthExhausted(f"cannot reach precision {eps}: {exc}") from None
        p_next, q_next = a * p + p_prev, a * q + q_prev
        if 2 * eps * q * q_next >= 1:
            return CertifiedValue.from_bounds(Fraction(p, q), Fraction(p_next, q_next))
        p_prev, q_prev, p, q = p, q, p_next, q_next


def frac_multiple(
    cf: ContinuedFraction, n: int, eps: Fraction, offset: Fraction = Fraction(0)
) -> CertifiedValue:
    """Enclosure of ``{offset + n*alpha}`` in ``[0, 1)`` with radius ``<= eps``.

    The integer part is removed exactly before the enclosure is returned, so
    the radius never depends on ``|n|``.
    """
    eps = as_fraction(eps)
    offset = as_fraction(offset)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if n == 0:
        return CertifiedValue.exact(offset - math.floor(offset))
    tol = min(eps, Fraction(1, 4))
    while True:
        a = evaluate(cf, tol / abs(n))
        mid = offset + n * a.midpoint
        rad = abs(n) * a.radius
        k = math.floor(mid - rad)
        # offset + n*alpha is irrational, so refinement always separates it from Z
        if mid - rad > k and mid + rad < k + 1:
            return CertifiedValue(mid - k, rad)
        tol /= 16


def separation_lower_bound(cf: ContinuedFraction, N: int) -> Fraction:
    """``b`` with ``||k alpha|| >= b`` for all ``0 < |k| <= N``.

    Uses the best-approximation property of convergent denominators and
    ``||q_j alpha|| >= 1/(q_j + q_{j+1})`` for the largest ``q_j <= N``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    prev = None
    for q in denominators(cf):
        if q > N:
            return Fraction(1, prev + q)
        prev = q
    raise DepthExhausted(f"stream too short to bound separation up to N={N}")
