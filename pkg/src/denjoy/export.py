"""CSV, JSON and SVG writers.  All output is deterministic text."""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Sequence

from .certified import format_rational
from .circle import BlownPoint, CantorApprox, DenjoyMap, Gap, blown_coordinate, collapse

TRAJECTORY_COLUMNS = ["step", "kind", "orbit_id", "n", "t_num", "t_den", "collapsed_mid", "collapsed_radius"]
CANTOR_COLUMNS = ["index", "left_mid", "left_rad", "right_mid", "right_rad"]


def trajectory_csv(dmap: DenjoyMap, points: Sequence[BlownPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRAJECTORY_COLUMNS)
    for step, p in enumerate(points):
        c = collapse(dmap, p)
        mid, rad = format_rational(c.midpoint), format_rational(c.radius)
        if isinstance(p, Gap):
            w.writerow([step, "gap", p.index.orbit_id, p.index.n, p.t.numerator, p.t.denominator, mid, rad])
        else:
            w.writerow([step, "base", "", "", "", "", mid, rad])
    return buf.getvalue()


def cantor_csv(approx: CantorApprox) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CANTOR_COLUMNS)
    for a in approx.arcs:
        w.writerow([
            a.index,
            format_rational(a.left.midpoint),
            format_rational(a.left.radius),
            format_rational(a.right.midpoint),
            format_rational(a.right.radius),
        ])
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _f(x) -> str:
    return f"{float(x):.4f}"


def plot_svg(dmap: DenjoyMap) -> str:
    """The blown-up circle with its resolved gaps, beside the staircase graph of the collapse map."""
    C = dmap.circumference
    r, cx, cy = 90, 120, 120
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="520" height="260" viewBox="0 0 520 260">',
        f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#888" stroke-width="1"/>',
    ]

    def polar(u: Fraction) -> tuple[str, str]:
        theta = 2 * math.pi * float(u / C)
        return _f(cx + r * math.cos(theta)), _f(cy - r * math.sin(theta))

    segments = []
    for g in dmap.gaps:
        left = blown_coordinate(dmap, Gap(g.index, 0)).midpoint
        right = left + g.length
        segments.append((left, right, g))
        x0, y0 = polar(left)
        x1, y1 = polar(right)
        large = 1 if g.length / C > Fraction(1, 2) else 0
        out.append(
            f'<path d="M {x0} {y0} A {r} {r} 0 {large} 0 {x1} {y1}" fill="none" stroke="#c33" stroke-width="4">'
            f"<title>I({g.index.orbit_id},{g.index.n})</title></path>"
        )
    # staircase: flat over each gap, linear across the Cantor part between gaps
    ox, oy, w, h = 280, 230, 220, 200
    out.append(f'<rect x="{ox}" y="{oy - h}" width="{w}" height="{h}" fill="none" stroke="#888"/>')

    def pt(u: Fraction, v: Fraction) -> str:
        return f"{_f(ox + w * u / C)},{_f(oy - h * v)}"

    pts = [pt(Fraction(0), Fraction(0))]
    for left, right, g in segments:
        v = g.enclosure.midpoint
        pts += [pt(left, v), pt(right, v)]
    pts.append(pt(C, Fraction(1)))
    out.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="#236" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
