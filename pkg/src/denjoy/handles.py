"""Handle bookkeeping: base pieces plus 1-handles, read off through boundary Euler characteristic."""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .errors import DisconnectedError


@dataclass(frozen=True)
class Piece:
    kind: str  # "ball", "solid_torus" or "thickened_surface"
    genus: int = 0
    boundary_count: int = 0

    def __post_init__(self):
        if self.kind not in ("ball", "solid_torus", "thickened_surface"):
            raise ValueError(f"unknown piece kind {self.kind!r}")
        if self.kind == "thickened_surface":
            if self.genus < 0 or self.boundary_count < 1:
                # a closed surface times an interval has two boundary components
                raise ValueError("thickened surfaces need genus >= 0 and at least one boundary circle")

    @property
    def boundary_euler(self) -> int:
        if self.kind == "ball":
            return 2
        if self.kind == "solid_torus":
            return 0
        # the boundary of S x I is the double of S
        return 2 * (2 - 2 * self.genus - self.boundary_count)


BALL = Piece("ball")
SOLID_TORUS = Piece("solid_torus")


def thickened_surface(genus: int, boundary_count: int) -> Piece:
    return Piece("thickened_surface", genus, boundary_count)


@dataclass(frozen=True)
class Attachment:
    first: int
    second: int
    orientable: bool = True


@dataclass(frozen=True)
class HandleRecord:
    pieces: tuple[Piece, ...]
    one_handles: tuple[Attachment, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        hs = tuple(a if isinstance(a, Attachment) else Attachment(*a) for a in self.one_handles)
        for a in hs:
            if not (0 <= a.first < len(self.pieces) and 0 <= a.second < len(self.pieces)):
                raise ValueError(f"attachment {a} names a missing piece")
        object.__setattr__(self, "one_handles", hs)

    def is_connected(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.pieces)))
        g.add_edges_from((a.first, a.second) for a in self.one_handles)
        return len(self.pieces) > 0 and nx.is_connected(g)

    @property
    def boundary_euler(self) -> int:
        return sum(p.boundary_euler for p in self.pieces) - 2 * len(self.one_handles)

    @property
    def orientable(self) -> bool:
        return all(a.orientable for a in self.one_handles)

    def join(self, other: HandleRecord, orientable: bool = True) -> HandleRecord:
        """Disjoint union of two records, connected by one new 1-handle."""
        shift = len(self.pieces)
        moved = tuple(Attachment(a.first + shift, a.second + shift, a.orientable) for a in other.one_handles)
        return HandleRecord(
            self.pieces + other.pieces,
            self.one_handles + moved + (Attachment(0, shift, orientable),),
            self.notes + other.notes,
        )


def boundary_genus(h: HandleRecord) -> tuple[int, bool]:
    """Genus ``1 - chi(boundary)/2`` of the connected boundary and the orientability flag."""
    if not h.is_connected():
        raise DisconnectedError("handle record is not connected")
    chi = h.boundary_euler
    return 1 - chi // 2, h.orientable


def nonorientable_boundary_genus(h: HandleRecord) -> int:
    """Cross-cap count ``2 - chi`` of the boundary surface when it is non-orientable."""
    return 2 - h.boundary_euler
