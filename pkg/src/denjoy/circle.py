"""The blown-up circle and the Denjoy homeomorphism.

Angles live on R/Z with the point ``1`` of the unit circle at angle 0.  An
orbit point ``{r + j*alpha}`` is kept symbolically as an :class:`OrbitAngle`
so that equality tests are exact; numerical enclosures are produced only
when an order comparison is needed.

Blown coordinates measure arc length from angle 0 on a circle of
circumference ``1 + L``.  A gap whose base point is at angle 0 starts at
blown coordinate 0 (half-open convention ``[0, x)``).
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .certified import CertifiedValue, as_fraction, circle_disjoint
from .contfrac import ContinuedFraction, evaluate, frac_multiple, separation_lower_bound
from .errors import (
    InvalidWeight,
    OrbitCollision,
    OrbitHit,
    ResolvedDepthError,
    UndecidableComparison,
)


@dataclass(frozen=True)
class OrbitAngle:
    """The angle ``{offset + turns * alpha}``, kept exactly."""

    offset: Fraction = Fraction(0)
    turns: int = 0

    def __post_init__(self):
        off = as_fraction(self.offset)
        object.__setattr__(self, "offset", off - math.floor(off))

    def shifted(self, k: int) -> OrbitAngle:
        return OrbitAngle(self.offset, self.turns + k)

    def same_orbit(self, other: OrbitAngle) -> bool:
        # alpha is irrational, so r + j alpha = r' + j' alpha (mod 1) iff r = r' (mod 1) and j = j'
        return self.offset == other.offset

    def enclose(self, alpha: ContinuedFraction, eps: Fraction) -> CertifiedValue:
        return frac_multiple(alpha, self.turns, eps, self.offset)


@dataclass(frozen=True)
class OrbitSeed:
    angle: OrbitAngle
    weight: Fraction = Fraction(1)


@dataclass(frozen=True)
class BlowupSchedule:
    """Blown-up orbits: gap ``(i, n)`` sits over ``seed_i + n*alpha`` with length ``w_i / 2^|n|``."""

    alpha: ContinuedFraction
    seeds: tuple[OrbitSeed, ...]

    def __post_init__(self):
        seeds = tuple(self.seeds)
        if not seeds:
            raise ValueError("at least one orbit seed is required")
        for s in seeds:
            w = s.weight
            if not isinstance(w, (int, Fraction)) or w <= 0:
                raise InvalidWeight(f"weight {w!r} must be a positive rational")
        for i, a in enumerate(seeds):
            for j in range(i):
                if a.angle.same_orbit(seeds[j].angle):
                    raise OrbitCollision(f"seeds {j} and {i} lie on the same rotation orbit")
        object.__setattr__(self, "seeds", seeds)

    @classmethod
    def single(cls, alpha: ContinuedFraction, weight=1) -> BlowupSchedule:
        return cls(alpha, (OrbitSeed(OrbitAngle(), as_fraction(weight)),))

    @classmethod
    def from_angles(cls, alpha: ContinuedFraction, angles: Sequence, weights: Optional[Sequence] = None):
        """Seeds from rational angles or ``OrbitAngle`` values; weights default to 1."""
        weights = [1] * len(angles) if weights is None else list(weights)
        if len(weights) != len(angles):
            raise ValueError("one weight per seed")
        seeds = []
        for a, w in zip(angles, weights):
            angle = a if isinstance(a, OrbitAngle) else OrbitAngle(as_fraction(a))
            if not isinstance(w, (int, Fraction)):
                raise InvalidWeight(f"weight {w!r} must be an exact rational")
            seeds.append(OrbitSeed(angle, as_fraction(w)))
        return cls(alpha, tuple(seeds))

    @property
    def orbit_count(self) -> int:
        return len(self.seeds)

    @property
    def inserted_length(self) -> Fraction:
        # sum over n in Z of 2^-|n| is 3
        return sum((3 * s.weight for s in self.seeds), Fraction(0))

    def gap_length(self, orbit_id: int, n: int) -> Fraction:
        return self.seeds[orbit_id].weight / 2 ** abs(n)

    def base_angle(self, orbit_id: int, n: int) -> OrbitAngle:
        return self.seeds[orbit_id].angle.shifted(n)


@dataclass(frozen=True, order=True)
class GapIndex:
    orbit_id: int
    n: int


@dataclass(frozen=True)
class Gap:
    index: GapIndex
    t: Fraction

    def __post_init__(self):
        t = as_fraction(self.t)
        if not 0 <= t <= 1:
            raise ValueError(f"relative position {t} outside [0, 1]")
        object.__setattr__(self, "t", t)

    @property
    def is_endpoint(self) -> bool:
        return self.t in (0, 1)


@dataclass(frozen=True)
class Base:
    """A point off the resolved orbits, stored by its collapsed angle."""

    angle: CertifiedValue


BlownPoint = Union[Gap, Base]


@dataclass(frozen=True)
class ResolvedGap:
    index: GapIndex
    angle: OrbitAngle
    enclosure: CertifiedValue
    length: Fraction
    offset: Fraction  # total length of resolved gaps strictly before this one


@dataclass(frozen=True)
class DenjoyMap:
    schedule: BlowupSchedule
    depth: int
    grid_bits: int
    gaps: tuple[ResolvedGap, ...]
    alpha_step: CertifiedValue
    _position: dict = field(compare=False, repr=False)
    _mids: tuple = field(compare=False, repr=False)

    @property
    def alpha(self) -> ContinuedFraction:
        return self.schedule.alpha

    @property
    def tail_bound(self) -> Fraction:
        return sum((2 * s.weight / 2 ** self.depth for s in self.schedule.seeds), Fraction(0))

    @property
    def circumference(self) -> Fraction:
        return 1 + self.schedule.inserted_length

    @property
    def resolved_length(self) -> Fraction:
        return sum((g.length for g in self.gaps), Fraction(0))

    def position(self, index: GapIndex) -> int:
        try:
            return self._position[index]
        except KeyError:
            raise ResolvedDepthError(index.orbit_id, index.n, self.depth) from None

    def resolved(self, index: GapIndex) -> ResolvedGap:
        return self.gaps[self.position(index)]

    def check_clear(self, x: CertifiedValue, error=UndecidableComparison) -> int:
        """Raise ``error`` unless ``x`` avoids every resolved base point.

        Returns the number of resolved base points below ``x.midpoint`` in [0, 1).
        """
        m = x.midpoint - math.floor(x.midpoint)
        i = bisect.bisect_left(self._mids, m)
        M = len(self.gaps)
        for j in {i % M, (i - 1) % M}:
            g = self.gaps[j]
            if not circle_disjoint(x, g.enclosure):
                raise error(f"angle {float(m):.17g} may coincide with x_{g.index.n} of orbit {g.index.orbit_id}")
        return i


def build_map(schedule: BlowupSchedule, N: int, grid_bits: int = 60) -> DenjoyMap:
    """Resolve all gaps with ``|n| <= N`` and certify their circular order."""
    if N < 0:
        raise ValueError("truncation depth must be >= 0")
    if not 8 <= grid_bits <= 61:
        raise ValueError("grid_bits must lie in [8, 61]")
    alpha = schedule.alpha
    m = schedule.orbit_count
    indices = [GapIndex(i, n) for i in range(m) for n in range(-N, N + 1)]
    angles = [schedule.base_angle(ix.orbit_id, ix.n) for ix in indices]
    eps = separation_lower_bound(alpha, max(2 * N, 1)) / 4
    while True:
        encl = [a.enclose(alpha, eps) for a in angles]
        order = sorted(range(len(indices)), key=lambda j: encl[j].midpoint)
        if all(encl[a].hi < encl[b].lo for a, b in zip(order, order[1:])):
            break
        if eps < Fraction(1, 2 ** 4096):
            raise UndecidableComparison("resolved orbit points could not be separated")
        # only distinct seeds on different orbits can still be this close; refine
        eps /= 2 ** 16
    # the order is certified; tighten every enclosure for later point tests
    fine = Fraction(1, 2 ** (grid_bits + 8))
    gaps = []
    running = Fraction(0)
    for j in order:
        ix = indices[j]
        length = schedule.gap_length(ix.orbit_id, ix.n)
        tight = angles[j].enclose(alpha, fine) if eps > fine else encl[j]
        gaps.append(ResolvedGap(ix, angles[j], tight, length, running))
        running += length
    return DenjoyMap(
        schedule=schedule,
        depth=N,
        grid_bits=grid_bits,
        gaps=tuple(gaps),
        alpha_step=_grid_enclosure(frac_multiple(alpha, 1, Fraction(1, 2 ** (grid_bits + 8))), grid_bits),
        _position={g.index: p for p, g in enumerate(gaps)},
        _mids=tuple(g.enclosure.midpoint for g in gaps),
    )


def _grid_enclosure(x: CertifiedValue, bits: int) -> CertifiedValue:
    """Move the midpoint onto the ``2^-bits`` grid, absorbing the shift into the radius."""
    scale = 2 ** bits
    k = round(x.midpoint * scale)
    mid = Fraction(k, scale)
    return CertifiedValue(mid, x.radius + abs(mid - x.midpoint))


def insertion_offset(dmap: DenjoyMap, x: CertifiedValue) -> CertifiedValue:
    """Total inserted length over ``[0, x)``: resolved gaps exactly, deeper ones within the tail bound."""
    if x.is_exact and x.midpoint == 0:
        return CertifiedValue.exact(0)
    if x.lo < 0 or x.hi >= 1:
        raise UndecidableComparison("angle enclosure must lie inside [0, 1)")
    if x.is_exact:
        # an exact rational hit is only possible for a rational seed with n = 0
        i = bisect.bisect_left(dmap._mids, x.midpoint)
        for j in (i - 1, i):
            if 0 <= j < len(dmap.gaps):
                e = dmap.gaps[j].enclosure
                if e.contains(x.midpoint) and not (e.is_exact and e.midpoint == x.midpoint):
                    raise UndecidableComparison("angle may coincide with a resolved point")
    else:
        i = dmap.check_clear(x)
    tail = dmap.tail_bound
    base = dmap.gaps[i - 1].offset + dmap.gaps[i - 1].length if i else Fraction(0)
    return CertifiedValue(base + tail / 2, tail / 2)


def collapse(dmap: DenjoyMap, p: BlownPoint) -> CertifiedValue:
    """The semi-conjugacy: a gap goes to its base orbit point, a base point to its angle."""
    if isinstance(p, Base):
        return p.angle
    if abs(p.index.n) <= dmap.depth:
        return dmap.resolved(p.index).enclosure
    angle = dmap.schedule.base_angle(p.index.orbit_id, p.index.n)
    return angle.enclose(dmap.alpha, Fraction(1, 2 ** dmap.grid_bits))


def collapse_exact(dmap: DenjoyMap, p: Gap) -> OrbitAngle:
    return dmap.schedule.base_angle(p.index.orbit_id, p.index.n)


def section(dmap: DenjoyMap, x: CertifiedValue) -> Base:
    """The point over angle ``x``; the angle must avoid every resolved orbit point."""
    dmap.check_clear(x, OrbitHit)
    return Base(x.mod1())


def blown_coordinate(dmap: DenjoyMap, p: BlownPoint) -> CertifiedValue:
    """Arc-length coordinate of ``p`` on the circle of circumference ``1 + L``."""
    tail = dmap.tail_bound
    if isinstance(p, Gap):
        g = dmap.resolved(p.index)
        left = g.enclosure + g.offset
        if not (g.enclosure.is_exact and g.enclosure.midpoint == 0):
            left = left + CertifiedValue(tail / 2, tail / 2)
        return left + p.t * g.length
    x = p.angle
    if x.lo < 0 or x.hi >= 1:
        raise UndecidableComparison("angle enclosure straddles 0; blown coordinate is ambiguous")
    return x + insertion_offset(dmap, x)


def _gap_step(dmap: DenjoyMap, p: Gap, k: int) -> Gap:
    n = p.index.n + k
    if abs(n) > dmap.depth:
        raise ResolvedDepthError(p.index.orbit_id, n, dmap.depth)
    return Gap(GapIndex(p.index.orbit_id, n), p.t)


def denjoy_eval(dmap: DenjoyMap, p: BlownPoint) -> BlownPoint:
    """One application of the Denjoy map."""
    if isinstance(p, Gap):
        return _gap_step(dmap, p, 1)
    x = (p.angle + dmap.alpha_step).mod1()
    dmap.check_clear(x)
    return Base(x)


def denjoy_inverse(dmap: DenjoyMap, p: BlownPoint) -> BlownPoint:
    if isinstance(p, Gap):
        return _gap_step(dmap, p, -1)
    x = (p.angle - dmap.alpha_step).mod1()
    dmap.check_clear(x)
    return Base(x)


def denjoy_iterate(dmap: DenjoyMap, p: BlownPoint, k: int) -> BlownPoint:
    step = denjoy_eval if k >= 0 else denjoy_inverse
    for _ in range(abs(k)):
        p = step(dmap, p)
    return p


def gap_circular_order(dmap: DenjoyMap) -> list[GapIndex]:
    """Resolved gaps in increasing angle, starting from the first at or after angle 0."""
    return [g.index for g in dmap.gaps]


@dataclass(frozen=True)
class Arc:
    index: int
    after: GapIndex
    before: GapIndex
    left: CertifiedValue
    right: CertifiedValue
    length: CertifiedValue


@dataclass(frozen=True)
class CantorApprox:
    resolution: int
    circumference: Fraction
    arcs: tuple[Arc, ...]

    @property
    def total_length(self) -> Fraction:
        return sum((a.right.midpoint - a.left.midpoint for a in self.arcs), Fraction(0))


def _arc_between(dmap: DenjoyMap, p: int, q: int, index: int) -> Arc:
    """Arc from the right end of gap ``p`` to the left end of gap ``q`` (cyclic)."""
    gp, gq = dmap.gaps[p], dmap.gaps[q]
    left = blown_coordinate(dmap, Gap(gp.index, 1))
    right = blown_coordinate(dmap, Gap(gq.index, 0))
    if q <= p:
        right = right + dmap.circumference
    span = (gq.enclosure - gp.enclosure)
    if q <= p:
        span = span + 1
    tail = dmap.tail_bound
    skipped = sum((g.length for g in dmap.gaps[p + 1 : q]), Fraction(0)) if p < q else (
        sum((g.length for g in dmap.gaps[p + 1 :]), Fraction(0)) + sum((g.length for g in dmap.gaps[:q]), Fraction(0))
    )
    length = span + skipped + CertifiedValue(tail / 2, tail / 2)
    return Arc(index, gp.index, gq.index, left, right, length)


def cantor_approx(dmap: DenjoyMap, resolution: Optional[int] = None) -> CantorApprox:
    """Closed arcs complementary to the gaps with ``|n| <= resolution`` (default: the map depth)."""
    N = dmap.depth if resolution is None else resolution
    if N > dmap.depth:
        raise ResolvedDepthError(0, N, dmap.depth)
    kept = [p for p, g in enumerate(dmap.gaps) if abs(g.index.n) <= N]
    arcs = tuple(
        _arc_between(dmap, p, kept[(j + 1) % len(kept)], j) for j, p in enumerate(kept)
    )
    return CantorApprox(N, dmap.circumference, arcs)
