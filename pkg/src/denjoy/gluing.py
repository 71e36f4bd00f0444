"""Symbolic gluing expressions and their evaluation to handlebody genus.

Grammar (prefix calls, integer arguments positional or by keyword)::

    denjoy(m=1)            power(denjoy(m=1), k=3)
    disk()                 annulus()
    shift_or(g=1, n=0)     shift_nonor(g=2, n=1)
    glue(expr, expr, ...)

``glue`` is associative: nested glues are flattened before evaluation, so
the result never depends on how the tree is bracketed.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from typing import Union

from .errors import BoundaryMismatch, ParseError
from .handles import BALL, SOLID_TORUS, Attachment, HandleRecord, boundary_genus


@dataclass(frozen=True)
class DenjoyBlock:
    m: int = 1


@dataclass(frozen=True)
class PowerOf:
    block: DenjoyBlock
    k: int


@dataclass(frozen=True)
class DiskBlock:
    pass


@dataclass(frozen=True)
class AnnulusBlock:
    pass


@dataclass(frozen=True)
class ShiftBlockOrientable:
    g: int
    n: int


@dataclass(frozen=True)
class ShiftBlockNonorientable:
    g: int
    n: int


@dataclass(frozen=True)
class Glue:
    parts: tuple


GluingExpression = Union[
    DenjoyBlock, PowerOf, DiskBlock, AnnulusBlock, ShiftBlockOrientable, ShiftBlockNonorientable, Glue
]


@dataclass(frozen=True)
class ManifoldDescriptor:
    genus: int
    orientable: bool
    trace: tuple[str, ...]

    def to_json(self) -> str:
        return json.dumps({"genus": self.genus, "orientable": self.orientable, "trace": list(self.trace)})


# --- parsing -------------------------------------------------------------

_SIGNATURES = {
    "denjoy": ("m",),
    "power": ("block", "k"),
    "disk": (),
    "annulus": (),
    "shift_or": ("g", "n"),
    "shift_nonor": ("g", "n"),
}


def parse_expression(text: str) -> GluingExpression:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse gluing expression: {exc.msg}") from None
    return _build(tree.body)


def _build(node) -> GluingExpression:
    if not isinstance(node, ast.Call) or not isinstance(node.func, ast.Name):
        raise ParseError("expected a call such as denjoy(m=1)")
    name = node.func.id
    if name == "glue":
        if node.keywords or len(node.args) < 2:
            raise ParseError("glue takes two or more positional sub-expressions")
        return Glue(tuple(_build(a) for a in node.args))
    if name not in _SIGNATURES:
        raise ParseError(f"unknown block {name!r}")
    params = _SIGNATURES[name]
    if len(node.args) > len(params):
        raise ParseError(f"{name} takes at most {len(params)} arguments")
    values = dict(zip(params, node.args))
    for kw in node.keywords:
        if kw.arg not in params or kw.arg in values:
            raise ParseError(f"bad keyword {kw.arg!r} for {name}")
        values[kw.arg] = kw.value
    if name == "power":
        if set(values) != {"block", "k"}:
            raise ParseError("power needs a block and k")
        block = _build(values["block"])
        if not isinstance(block, DenjoyBlock):
            raise ParseError("power applies to a denjoy block")
        return PowerOf(block, _int(values["k"], "k", 1))
    ints = {p: _int(v, p, 0 if name.startswith("shift") else 1) for p, v in values.items()}
    if name == "denjoy":
        return DenjoyBlock(ints.get("m", 1))
    if name == "disk":
        return DiskBlock()
    if name == "annulus":
        return AnnulusBlock()
    if set(ints) != {"g", "n"}:
        raise ParseError(f"{name} needs g and n")
    if name == "shift_or":
        if ints["g"] < 0:
            raise ParseError("g must be >= 0")
        return ShiftBlockOrientable(ints["g"], ints["n"])
    if ints["g"] < 1:
        raise ParseError("a non-orientable surface has genus >= 1")
    return ShiftBlockNonorientable(ints["g"], ints["n"])


def _int(node, name: str, minimum: int) -> int:
    if not (isinstance(node, ast.Constant) and type(node.value) is int):
        raise ParseError(f"{name} must be an integer literal")
    if node.value < minimum:
        raise ParseError(f"{name} must be >= {minimum}")
    return node.value


# --- evaluation ----------------------------------------------------------


def _flatten(expr) -> list:
    if isinstance(expr, Glue):
        return [a for part in expr.parts for a in _flatten(part)]
    return [expr]


def _nonorientable_handles(g: int) -> tuple[int, int, str]:
    """(non-orientable, orientable) 1-handles replacing a genus-g cross-cap surface."""
    if g == 1:
        return 1, 0, "g = 1: one non-orientable handle"
    if g == 2:
        return 1, 1, "g = 2: one non-orientable and one orientable handle"
    if g % 2:
        return 1, g - 1, f"g = {g} odd: one non-orientable and {g - 1} orientable handles"
    return 2, g - 2, f"g = {g} even: two non-orientable and {g - 2} orientable handles"


def _host_record(atom) -> tuple[HandleRecord, str]:
    m, k = (atom.m, 1) if isinstance(atom, DenjoyBlock) else (atom.block.m, atom.k)
    handles = m * k + 1
    note = f"host: {m} blown orbit(s), power {k}: {m * k} gap orbit(s) give a ball with {handles} handles"
    return HandleRecord((BALL,), tuple(Attachment(0, 0) for _ in range(handles))), note


def _shift_record(atom) -> tuple[HandleRecord, list[str]]:
    if isinstance(atom, ShiftBlockOrientable):
        count = 2 * atom.g + atom.n
        note = f"shift_or({atom.g}, {atom.n}): ball with 2g+n = {count} orientable handles"
        return HandleRecord((BALL,), tuple(Attachment(0, 0) for _ in range(count))), [note]
    bad, good, rule = _nonorientable_handles(atom.g)
    if bad + good != atom.g:
        raise AssertionError("parity rule must use g handles in total")
    hs = [Attachment(0, 0, False)] * bad + [Attachment(0, 0)] * (good + atom.n)
    note = f"shift_nonor({atom.g}, {atom.n}): {rule}, plus {atom.n} orientable"
    return HandleRecord((BALL,), tuple(hs)), [note]


def glue_eval(expr: GluingExpression) -> ManifoldDescriptor:
    """Handle count of the glued mapping torus.

    Each shift block replaces a tube drilled out of the host and is glued
    back along an annulus; in handle terms that is one extra 1-handle
    joining the block's ball to the host.
    """
    atoms = _flatten(expr)
    trace: list[str] = []
    standalone = [a for a in atoms if isinstance(a, (DiskBlock, AnnulusBlock))]
    if standalone:
        if len(atoms) > 1:
            raise BoundaryMismatch("disk and annulus blocks carry torus boundaries that nothing here can fill")
        if isinstance(atoms[0], DiskBlock):
            rec = HandleRecord((SOLID_TORUS,), (Attachment(0, 0),))
            trace.append("disk block: solid torus plus one 1-handle on its boundary torus; one torus boundary left open")
        else:
            rec = HandleRecord((SOLID_TORUS, SOLID_TORUS), (Attachment(0, 1),))
            trace.append("annulus block: one 1-handle joining two solid tori; two torus boundaries left open")
        genus, orientable = boundary_genus(rec)
        trace.append(f"boundary chi = {rec.boundary_euler}, genus {genus}")
        return ManifoldDescriptor(genus, orientable, tuple(trace))
    hosts = [a for a in atoms if isinstance(a, (DenjoyBlock, PowerOf))]
    shifts = [a for a in atoms if isinstance(a, (ShiftBlockOrientable, ShiftBlockNonorientable))]
    if len(hosts) != 1:
        raise BoundaryMismatch(f"expected exactly one denjoy host, found {len(hosts)}")
    rec, note = _host_record(hosts[0])
    trace.append(note)
    chi = 1 - len(rec.one_handles)
    for atom in shifts:
        block, notes = _shift_record(atom)
        trace.extend(notes)
        trace.append("drill one tube from the host and glue the block along the annulus (+1 handle)")
        chi += -1 + (1 - len(block.one_handles))
        rec = rec.join(block)
    genus, orientable = boundary_genus(rec)
    if genus != 1 - chi:
        raise AssertionError("handle count and Euler characteristic disagree")
    trace.append(f"boundary chi = {rec.boundary_euler}, genus {genus}, {'orientable' if orientable else 'non-orientable'}")
    return ManifoldDescriptor(genus, orientable, tuple(trace))
