"""Finite cell complexes for the spine graph and the mapping-torus cubulation."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

import networkx as nx

from .errors import ComplexError, DisconnectedError, UnsupportedFacePattern

SignedEdge = tuple[int, int]  # (edge index, +1 or -1)


@dataclass(frozen=True)
class CWComplex:
    """Vertices ``0..vertex_count-1``, oriented edges ``(tail, head)`` and faces as closed edge words."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[SignedEdge, ...], ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "faces", tuple(tuple(tuple(s) for s in f) for f in self.faces))
        V = self.vertex_count
        for u, v in self.edges:
            if not (0 <= u < V and 0 <= v < V):
                raise ComplexError(f"edge ({u}, {v}) has an invalid endpoint")
        for f in self.faces:
            self._check_word(f)

    def _check_word(self, word):
        if not word:
            raise ComplexError("empty face boundary")
        ends = []
        for e, s in word:
            if not 0 <= e < len(self.edges) or s not in (1, -1):
                raise ComplexError(f"bad signed edge ({e}, {s})")
            u, v = self.edges[e]
            ends.append((u, v) if s == 1 else (v, u))
        for (_, head), (tail, _) in zip(ends, ends[1:] + ends[:1]):
            if head != tail:
                raise ComplexError(f"face word {word} is not a closed path")

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - len(self.edges) + len(self.faces)

    def is_connected(self) -> bool:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return self.vertex_count > 0 and nx.is_connected(g)


def spine_complex(m: int, k: int) -> CWComplex:
    """Two vertices joined by one edge per gap ``(i, j)``, ``|j| <= k``."""
    if m < 1 or k < 0:
        raise ValueError("need m >= 1 and k >= 0")
    labels = tuple(f"e[{i},{j}]" for i in range(m) for j in range(-k, k + 1))
    return CWComplex(2, ((1, 0),) * len(labels), (), labels)


def mapping_torus_complex(m: int, k: int) -> CWComplex:
    """The cubulated mapping torus truncated at ``|j| <= k``.

    Vertex 0 is the image of ``nu``, vertex 1 of ``sigma``; edges 0 and 1 are
    their circle directions.  Strip edge ``e_{i,j}`` runs from sigma to nu, and
    each square has boundary ``e_j . e_nu . e_{j+1}^-1 . e_sigma^-1``.
    """
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    edges = [(0, 0), (1, 1)]
    labels = ["e_nu", "e_sigma"]
    idx = {}
    for i in range(m):
        for j in range(-k, k + 1):
            idx[i, j] = len(edges)
            edges.append((1, 0))
            labels.append(f"e[{i},{j}]")
    faces = [
        ((idx[i, j], 1), (0, 1), (idx[i, j + 1], -1), (1, -1))
        for i in range(m)
        for j in range(-k, k)
    ]
    return CWComplex(2, tuple(edges), tuple(faces), tuple(labels))


def euler_and_rank(cw: CWComplex) -> tuple[int, int]:
    """Euler characteristic and free rank of the fundamental group.

    Faces are removed by elementary collapses through free edges (an edge
    used exactly once by all remaining faces).  If every face goes, the
    complex deformation retracts to a graph and the group is free of rank
    ``1 - chi``; otherwise the pattern is rejected.
    """
    if not cw.is_connected():
        raise DisconnectedError("complex is not connected")
    use = Counter(e for f in cw.faces for e, _ in f)
    on_edge: dict[int, list[int]] = {}
    for n, f in enumerate(cw.faces):
        for e, _ in f:
            on_edge.setdefault(e, []).append(n)
    alive = set(range(len(cw.faces)))
    queue = deque(e for e, c in use.items() if c == 1)
    while queue:
        e = queue.popleft()
        if use[e] != 1:
            continue
        (n,) = (n for n in on_edge[e] if n in alive)
        alive.discard(n)
        for edge, _ in cw.faces[n]:
            use[edge] -= 1
            if use[edge] == 1:
                queue.append(edge)
    if alive:
        raise UnsupportedFacePattern(f"{len(alive)} faces admit no free edge")
    chi = cw.euler_characteristic
    return chi, 1 - chi


def gap_orbit_genus(m: int, k: int) -> int:
    """Genus ``#orbits + 1`` for the shift ``(i, n) -> (i, n + k)`` on ``m`` gap orbits."""
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    # every orbit of the shift meets the window 0 <= n < k exactly once
    orbits = {(i, n % k) for i in range(m) for n in range(k)}
    return len(orbits) + 1
