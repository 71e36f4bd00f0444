"""Sphere extension, suspension flow and end-space estimates."""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import networkx as nx

from .certified import as_fraction
from .circle import BlownPoint, DenjoyMap, Gap, GapIndex, denjoy_eval, denjoy_inverse


@dataclass(frozen=True)
class SpherePoint:
    """A point of the suspended circle; ``base`` is dropped at the poles ``u = +-1``."""

    base: Optional[BlownPoint]
    height: Fraction

    def __post_init__(self):
        u = as_fraction(self.height)
        if not -1 <= u <= 1:
            raise ValueError(f"height {u} outside [-1, 1]")
        object.__setattr__(self, "height", u)
        if abs(u) == 1:
            object.__setattr__(self, "base", None)
        elif self.base is None:
            raise ValueError("only the poles may omit the base point")

    @classmethod
    def north(cls) -> SpherePoint:
        return cls(None, Fraction(1))

    @classmethod
    def south(cls) -> SpherePoint:
        return cls(None, Fraction(-1))

    @property
    def is_pole(self) -> bool:
        return self.base is None


@dataclass(frozen=True)
class TorusPoint:
    fiber: SpherePoint
    tau: Fraction

    def __post_init__(self):
        tau = as_fraction(self.tau)
        if not 0 <= tau < 1:
            raise ValueError(f"time {tau} outside [0, 1)")
        object.__setattr__(self, "tau", tau)
        f = self.fiber
        # the equatorial Cantor set is removed from the fiber surface
        if f.height == 0 and not (isinstance(f.base, Gap) and not f.base.is_endpoint):
            raise ValueError("equatorial Cantor points are not in the fiber surface")


def sphere_eval(dmap: DenjoyMap, p: SpherePoint) -> SpherePoint:
    if p.is_pole:
        return p
    return SpherePoint(denjoy_eval(dmap, p.base), p.height)


def sphere_inverse(dmap: DenjoyMap, p: SpherePoint) -> SpherePoint:
    if p.is_pole:
        return p
    return SpherePoint(denjoy_inverse(dmap, p.base), p.height)


def suspension_flow(dmap: DenjoyMap, p: TorusPoint, s) -> TorusPoint:
    """Flow for time ``s``; every crossing of ``tau = 1`` applies the first-return map once."""
    total = p.tau + as_fraction(s)
    returns = math.floor(total)
    step = sphere_eval if returns >= 0 else sphere_inverse
    fiber = p.fiber
    for _ in range(abs(returns)):
        fiber = step(dmap, fiber)
    return TorusPoint(fiber, total - returns)


@dataclass(frozen=True)
class CantorEnds:
    """Resolution-``N'`` arcs and the relation ``A -> B`` when ``f(A)`` meets ``B``."""

    resolution: int
    arc_count: int
    edges: tuple[tuple[int, int], ...]

    def successors(self, arc: int) -> list[int]:
        return [b for a, b in self.edges if a == arc]

    def to_json(self) -> dict:
        return {
            "resolution": self.resolution,
            "arcs": list(range(self.arc_count)),
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class FiniteEnds:
    """``m`` ends permuted by a 1-based permutation (``perm[i-1]`` is the image of end ``i``)."""

    count: int
    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(self.perm)
        if len(perm) != self.count or sorted(perm) != list(range(1, self.count + 1)):
            raise ValueError("permutation must be a bijection of {1..m}")
        object.__setattr__(self, "perm", perm)


EndsModel = Union[CantorEnds, FiniteEnds]


def induced_end_map(dmap: DenjoyMap, resolution: int) -> CantorEnds:
    """Arc transition relation at resolution ``N' <= N - 1``.

    The arc between kept gaps ``g`` and ``g'`` is carried onto the stretch
    from ``f(g)`` to ``f(g')``; walking the exact circular order of the
    resolved gaps across that stretch lists every arc it meets.
    """
    if not 0 <= resolution <= dmap.depth - 1:
        raise ValueError(f"resolution must lie in [0, {dmap.depth - 1}]")
    gaps = dmap.gaps
    total = len(gaps)
    kept = [p for p, g in enumerate(gaps) if abs(g.index.n) <= resolution]
    count = len(kept)
    kept_set = set(kept)

    def arc_of_right_end(pos: int) -> int:
        # arc starting at (or containing) the right endpoint of gap ``pos``
        return (bisect.bisect_right(kept, pos) - 1) % count

    edges = set()
    for j, p in enumerate(kept):
        q = kept[(j + 1) % count]
        start = dmap.position(_shift(gaps[p].index))
        stop = dmap.position(_shift(gaps[q].index))
        arc = arc_of_right_end(start)
        edges.add((j, arc))
        span = (stop - start) % total or total
        for step in range(1, span):
            pos = (start + step) % total
            if pos in kept_set:
                arc = (arc + 1) % count
                edges.add((j, arc))
    return CantorEnds(resolution, count, tuple(sorted(edges)))


def _shift(ix: GapIndex) -> GapIndex:
    return GapIndex(ix.orbit_id, ix.n + 1)


def end_count(model: EndsModel) -> int:
    if isinstance(model, FiniteEnds):
        g = nx.DiGraph()
        g.add_nodes_from(range(1, model.count + 1))
        g.add_edges_from((i + 1, j) for i, j in enumerate(model.perm))
    else:
        g = nx.DiGraph()
        g.add_nodes_from(range(model.arc_count))
        g.add_edges_from(model.edges)
    # for a permutation the weak components are exactly its cycles
    return nx.number_weakly_connected_components(g)
