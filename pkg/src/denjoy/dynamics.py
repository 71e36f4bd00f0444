"""Certified checks of the Denjoy dynamics: semi-conjugacy, wandering gaps, minimality."""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .certified import CertifiedValue
from .circle import (
    Base,
    BlownPoint,
    DenjoyMap,
    Gap,
    GapIndex,
    OrbitAngle,
    _grid_enclosure,
    cantor_approx,
    denjoy_iterate,
)
from .contfrac import frac_multiple
from .errors import ResolvedDepthError, UndecidableComparison
from .prng import LCG


@dataclass(frozen=True)
class SemiconjugacyReport:
    max_residual: Fraction
    gap_residual: Fraction
    base_residual: Fraction
    gap_samples: int
    base_samples: int
    iterations: int
    rejected: int


def draw_gap_samples(dmap: DenjoyMap, count: int, rng: LCG) -> list[Gap]:
    N, m = dmap.depth, dmap.schedule.orbit_count
    out = []
    for _ in range(count):
        i = rng.below(m)
        n = rng.below(2 * N + 1) - N
        out.append(Gap(GapIndex(i, n), Fraction(rng.below(2 ** 16 + 1), 2 ** 16)))
    return out


def draw_base_samples(dmap: DenjoyMap, count: int, rng: LCG) -> tuple[list[Fraction], int]:
    """Exact 53-bit angles avoiding the resolved orbit points; also returns the rejection count."""
    out, rejected = [], 0
    while len(out) < count:
        x = rng.fraction(53)
        try:
            dmap.check_clear(CertifiedValue.exact(x))
        except UndecidableComparison:
            rejected += 1
            continue
        out.append(x)
    return out, rejected


def semiconjugacy_check(
    dmap: DenjoyMap,
    sample_count: int,
    iterations: int,
    seed: int = 0,
    kinds: tuple[str, ...] = ("gap", "base"),
) -> SemiconjugacyReport:
    """Bound ``|P(f^k p) - rho^k(P p)|`` over seeded samples and ``1 <= k <= iterations``.

    Route (a) applies the map step by step; route (b) rotates the collapsed
    point once by a high-precision enclosure of ``k*alpha``.  Gap samples are
    followed through the symbolic gap rule, so their residual is exact.
    Base samples are run in bulk as integers on the ``2^-grid_bits`` grid
    used by :func:`denjoy_eval`, which produces the same midpoints as the
    scalar map.
    """
    if sample_count < 0 or iterations < 0:
        raise ValueError("sample_count and iterations must be nonnegative")
    unknown = set(kinds) - {"gap", "base"}
    if unknown:
        raise ValueError(f"unknown sample kinds {sorted(unknown)}")
    rng = LCG(seed)
    gap_res = base_res = Fraction(0)
    n_gap = n_base = rejected = 0
    if "gap" in kinds:
        gaps = draw_gap_samples(dmap, sample_count, rng)
        n_gap = len(gaps)
        gap_res = _gap_residual(dmap, gaps, iterations)
    if "base" in kinds:
        xs, rejected = draw_base_samples(dmap, sample_count, rng)
        n_base = len(xs)
        base_res = _base_residual(dmap, xs, iterations)
    return SemiconjugacyReport(
        max(gap_res, base_res), gap_res, base_res, n_gap, n_base, iterations, rejected
    )


def _gap_residual(dmap: DenjoyMap, gaps: list[Gap], iterations: int) -> Fraction:
    if not gaps or iterations == 0:
        return Fraction(0)
    seeds = dmap.schedule.seeds
    orbit = np.array([g.index.orbit_id for g in gaps])
    n = np.array([g.index.n for g in gaps], dtype=np.int64)
    seed_turns = np.array([seeds[i].angle.turns for i in orbit], dtype=np.int64)
    rotated = seed_turns + n  # P(p) as turns of alpha over the seed offset
    stepped = n.copy()
    worst = Fraction(0)
    for k in range(1, iterations + 1):
        stepped += 1  # f: (i, n) -> (i, n+1), t unchanged
        bad = np.nonzero(seed_turns + stepped != rotated + k)[0]
        for j in bad:
            a = OrbitAngle(seeds[orbit[j]].angle.offset, int(seed_turns[j] + stepped[j]))
            b = OrbitAngle(seeds[orbit[j]].angle.offset, int(rotated[j] + k))
            eps = Fraction(1, 2 ** dmap.grid_bits)
            d = a.enclose(dmap.alpha, eps) - b.enclose(dmap.alpha, eps)
            worst = max(worst, abs(d.midpoint) + d.radius)
    return worst


def _base_residual(dmap: DenjoyMap, xs: list[Fraction], iterations: int) -> Fraction:
    if not xs or iterations == 0:
        return Fraction(0)
    P = dmap.grid_bits
    scale = 1 << P
    mask = np.int64(scale - 1)
    m0 = np.array([int(x * scale) for x in xs], dtype=np.int64)
    step = dmap.alpha_step
    a = np.int64(int(step.midpoint * scale))
    centers = np.array([int(g.enclosure.midpoint * scale) for g in dmap.gaps], dtype=np.int64)
    # the midpoint was floored onto the grid, costing at most one grid unit
    halo = np.array([-(-(g.enclosure.radius * scale) // 1) + 1 for g in dmap.gaps], dtype=np.int64)
    fine = Fraction(1, 2 ** (P + 8))
    ma = m0.copy()
    worst = Fraction(0)
    for k in range(1, iterations + 1):
        ma = (ma + a) & mask
        rad_a = k * step.radius
        _assert_clear(ma, centers, halo, -(-(rad_a * scale) // 1), scale, k)
        rot = _grid_enclosure(frac_multiple(dmap.alpha, k, fine), P)
        b = np.int64(int(rot.midpoint * scale) % scale)
        mb = (m0 + b) & mask
        d = (ma - mb) & mask
        dist = int(np.minimum(d, scale - d).max())
        worst = max(worst, Fraction(dist, scale) + rad_a + rot.radius)
    return worst


def _assert_clear(pts, centers, halo, rad, scale, k):
    M = len(centers)
    idx = np.searchsorted(centers, pts)
    nxt = centers[idx % M] + np.where(idx == M, scale, 0)
    prv = centers[(idx - 1) % M] - np.where(idx == 0, scale, 0)
    ok = (nxt - pts > halo[idx % M] + rad) & (pts - prv > halo[(idx - 1) % M] + rad)
    if not ok.all():
        j = int(np.argmin(ok))
        raise UndecidableComparison(f"sample {j} may meet a resolved orbit point at step {k}")


@dataclass(frozen=True)
class WanderingReport:
    passed: bool
    k: int
    gap_orbits: int
    checked_gaps: int
    first_violation: Optional[str] = None


def wandering_images(dmap: DenjoyMap, k: int) -> WanderingReport:
    """Check ``f^j(I_{i,0}) = I_{i,j}`` for ``|j| <= |k|`` and certified disjointness of all resolved gaps."""
    k = abs(k)
    if k > dmap.depth:
        raise ResolvedDepthError(0, k, dmap.depth)
    m = dmap.schedule.orbit_count
    for i in range(m):
        for sign in (1, -1):
            for t in (Fraction(0), Fraction(1, 2), Fraction(1)):
                p = Gap(GapIndex(i, 0), t)
                for j in range(1, k + 1):
                    p = denjoy_iterate(dmap, p, sign)
                    want = Gap(GapIndex(i, sign * j), t)
                    if p != want:
                        return WanderingReport(False, k, m, 0, f"f^{sign * j}(I_({i},0)) at t={t} is {p}")
    gaps = dmap.gaps
    for a, b in zip(gaps, gaps[1:]):
        if not a.enclosure.hi < b.enclosure.lo:
            return WanderingReport(False, k, m, len(gaps), f"base points of {a.index} and {b.index} not separated")
    for arc in cantor_approx(dmap).arcs:
        if not arc.length.lo > 0:
            return WanderingReport(False, k, m, len(gaps), f"gaps {arc.after} and {arc.before} may touch")
    return WanderingReport(True, k, m, len(gaps))


@dataclass(frozen=True)
class DensityReport:
    dense_at_resolution: bool
    iterations_used: int
    resolution: int
    arc_count: int
    visited: tuple[int, ...]
    unvisited: tuple[int, ...]


class _ArcLocator:
    """Which resolution-``N'`` arc holds a Cantor point."""

    def __init__(self, dmap: DenjoyMap, resolution: int):
        self.dmap = dmap
        self.kept = [p for p, g in enumerate(dmap.gaps) if abs(g.index.n) <= resolution]
        self.kept_index = {p: j for j, p in enumerate(self.kept)}
        self.count = len(self.kept)

    def _after_count(self, c: int) -> int:
        # c kept base points lie below the point: it sits on the arc after the c-th
        return (c - 1) % self.count

    def gap_endpoint(self, p: Gap) -> int:
        dmap = self.dmap
        if abs(p.index.n) <= dmap.depth:
            pos = dmap.position(p.index)
            j = self.kept_index.get(pos)
            if j is not None:
                return j if p.t == 1 else (j - 1) % self.count
            return self._after_count(bisect.bisect_left(self.kept, pos))
        return self.angle(dmap.schedule.base_angle(p.index.orbit_id, p.index.n))

    def angle(self, y: OrbitAngle) -> int:
        dmap = self.dmap
        eps = Fraction(1, 2 ** (dmap.grid_bits + 8))
        kept = [dmap.gaps[p] for p in self.kept]
        mids = [g.enclosure.midpoint for g in kept]
        while True:
            e = y.enclose(dmap.alpha, eps)
            c = bisect.bisect_left(mids, e.midpoint)
            near = {c % self.count, (c - 1) % self.count}
            if all(_apart(e, g.angle.enclose(dmap.alpha, eps)) for g in (kept[j] for j in near)):
                return self._after_count(c)
            if eps < Fraction(1, 2 ** 4096):
                raise UndecidableComparison("orbit point could not be located")
            eps /= 2 ** 32

    def base(self, x: CertifiedValue) -> int:
        kept = [self.dmap.gaps[p] for p in self.kept]
        mids = [g.enclosure.midpoint for g in kept]
        c = bisect.bisect_left(mids, x.midpoint)
        for j in {c % self.count, (c - 1) % self.count}:
            if not _apart(x, kept[j].enclosure):
                raise UndecidableComparison("base point too close to a resolved gap")
        return self._after_count(c)


def _apart(a: CertifiedValue, b: CertifiedValue) -> bool:
    # both enclosures sit inside [0, 1), so the plain order on the line decides
    return a.hi < b.lo or b.hi < a.lo


def orbit_density(dmap: DenjoyMap, start: BlownPoint, resolution: int, max_iter: int) -> DensityReport:
    """Follow the orbit of a Cantor point and record the resolution-``N'`` arcs it visits.

    Density is judged after each application of the map, so ``max_iter = 0``
    never reports a dense orbit.
    """
    if resolution > dmap.depth:
        raise ResolvedDepthError(0, resolution, dmap.depth)
    if resolution < 0 or max_iter < 0:
        raise ValueError("resolution and max_iter must be nonnegative")
    loc = _ArcLocator(dmap, resolution)
    if isinstance(start, Gap):
        if not start.is_endpoint:
            raise ValueError("a gap start must be an endpoint (t in {0, 1})")
        if abs(start.index.n) > dmap.depth:
            raise ResolvedDepthError(start.index.orbit_id, start.index.n, dmap.depth)
        where = loc.gap_endpoint(start)
    else:
        dmap.check_clear(start.angle)
        where = loc.base(start.angle)
    visited = {where}
    p = start
    used = 0
    dense = False
    for used in range(1, max_iter + 1):
        if isinstance(p, Gap):
            # the gap rule is exact beyond the resolved window too
            p = Gap(GapIndex(p.index.orbit_id, p.index.n + 1), p.t)
            visited.add(loc.gap_endpoint(p))
        else:
            p = Base((p.angle + dmap.alpha_step).mod1())
            dmap.check_clear(p.angle)
            visited.add(loc.base(p.angle))
        if len(visited) == loc.count:
            dense = True
            break
    return DensityReport(
        dense,
        used,
        resolution,
        loc.count,
        tuple(sorted(visited)),
        tuple(j for j in range(loc.count) if j not in visited),
    )
