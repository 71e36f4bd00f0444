"""Command-line front end (``denjoy``).

Exit codes: 0 success (or Equivalent), 1 failure (or NotEquivalent),
2 UnknownUpToDepth, 3 usage, parse or I/O error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import export
from .certified import CertifiedValue, format_rational, parse_rational
from .circle import Base, BlowupSchedule, Gap, GapIndex, build_map, cantor_approx, denjoy_eval
from .contfrac import ContinuedFraction, format_cf, parse_cf
from .cwcomplex import euler_and_rank, mapping_torus_complex, spine_complex
from .dynamics import orbit_density, semiconjugacy_check, wandering_images
from .equivalence import Verdict, gl2z_equivalent, gl2z_matrix_search
from .errors import DenjoyError, ParseError, ResolvedDepthError
from .gluing import glue_eval, parse_expression
from .suspension import end_count, induced_end_map

EXIT_USAGE = 3

# flags accepted both before and after the subcommand
_GLOBAL_DEFAULTS = {
    "alpha": "[0; (2)]",
    "depth": None,
    "resolution": None,
    "seed": 0,
    "tol": None,
    "out": None,
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    alpha: ContinuedFraction
    depth: Optional[int]
    resolution: Optional[int]
    seed: int
    tol: Optional[Fraction]
    out: Optional[Path]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _rational(text: str) -> Fraction:
    try:
        v = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--alpha", help="rotation number as continued-fraction text, e.g. '[0; (2)]'", **kw)
    p.add_argument("--depth", type=_positive_int, help="truncation depth N", **kw)
    p.add_argument("--resolution", type=_positive_int, help="arc resolution N'", **kw)
    p.add_argument("--seed", type=int, help="LCG seed (default 0)", **kw)
    p.add_argument("--tol", type=_rational, help="tolerance as a rational, e.g. 1/1000000", **kw)
    p.add_argument("--out", type=Path, help="output file or directory", **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="denjoy", description="Denjoy maps, their mapping tori and rotation-number classification")
    _add_globals(parser, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _add_globals(p, suppress=True)
        return p

    p = add("classify", "decide GL(2,Z)-equivalence of two rotation numbers")
    p.add_argument("numbers", nargs="*", help="one or two continued fractions (the first may come from --alpha)")
    p.add_argument("--bound", type=_positive_int, default=2, help="entry bound B for the matrix search")

    p = add("verify", "semi-conjugacy, wandering-gap and density checks")
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.add_argument("--iters", type=_positive_int, default=100)
    p.add_argument("--density-iters", type=_positive_int, default=10000)

    p = add("genus", "evaluate a gluing expression")
    p.add_argument("expression")

    add("ends", "end count of the mapping torus at a resolution")

    p = add("orbit", "trajectory CSV of a point")
    p.add_argument("--start", default="gap:0:0:0", help="'gap:ORBIT:N:T' or 'base:ANGLE'")
    p.add_argument("--steps", type=_positive_int, default=10)

    add("cantor", "arc CSV of the Cantor approximation")

    p = add("complex", "Euler characteristic and free rank of a cell complex")
    p.add_argument("--kind", choices=("torus", "spine"), default="torus")
    p.add_argument("--orbits", type=int, default=1)
    p.add_argument("--k", type=_positive_int, default=1)

    add("plot", "SVG of the blown-up circle and staircase, plus CSV exports")
    return parser


def _config(args) -> RunConfig:
    vals = {k: getattr(args, k, d) for k, d in _GLOBAL_DEFAULTS.items()}
    return RunConfig(
        command=args.command,
        alpha=parse_cf(vals["alpha"]),
        depth=vals["depth"],
        resolution=vals["resolution"],
        seed=vals["seed"],
        tol=vals["tol"],
        out=vals["out"],
    )


def _emit(cfg: RunConfig, text: str, name: Optional[str] = None):
    if cfg.out is None:
        sys.stdout.write(text)
        return
    path = cfg.out / name if name and cfg.out.is_dir() else cfg.out
    path.write_text(text)


def cmd_classify(cfg: RunConfig, args) -> int:
    numbers = list(args.numbers)
    if len(numbers) == 1:
        numbers.insert(0, format_cf(cfg.alpha))
    if len(numbers) != 2:
        raise ParseError("classify needs two continued fractions")
    a, b = (parse_cf(t) for t in numbers)
    result = gl2z_equivalent(a, b, cfg.depth or 32)
    lines = [f"verdict: {result.verdict.value}"]
    if result.tail is not None:
        lines.append(f"tails: {result.tail} {result.other_tail}")
    if result.verdict is Verdict.EQUIVALENT:
        M = gl2z_matrix_search(a, b, args.bound, cfg.tol or Fraction(1, 10 ** 10))
        lines.append(f"witness tail: {result.witness}")
        lines.append(f"matrix: {M if M is not None else f'none with entries <= {args.bound}'}")
    elif result.verdict is Verdict.UNKNOWN:
        lines.append(f"consistent shifts: {len(result.shifts)}")
    print("\n".join(lines))
    return {Verdict.EQUIVALENT: 0, Verdict.NOT_EQUIVALENT: 1, Verdict.UNKNOWN: 2}[result.verdict]


def cmd_verify(cfg: RunConfig, args) -> int:
    N = 30 if cfg.depth is None else cfg.depth
    tol = cfg.tol or Fraction(1, 2 ** 20)
    density_res = 3 if cfg.resolution is None else cfg.resolution
    rows = []
    dmap = build_map(BlowupSchedule.single(cfg.alpha), N)

    def run(name, fn):
        try:
            ok, detail = fn()
        except ResolvedDepthError as exc:
            ok, detail = False, f"resolved-depth: gap index ({exc.orbit_id}, {exc.n}) outside |n| <= {exc.depth}"
        except DenjoyError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append((name, "PASS" if ok else "FAIL", detail))

    def semi():
        r = semiconjugacy_check(dmap, args.samples, args.iters, cfg.seed)
        return r.max_residual <= tol, (
            f"gap residual {format_rational(r.gap_residual)}; base residual <= 2^{_log2(r.base_residual)}"
            f" over {r.base_samples} base and {r.gap_samples} gap samples, {r.iterations} iterates"
        )

    def wander():
        r = wandering_images(dmap, N)
        return r.passed, r.first_violation or f"f^j(I_0) = I_j for |j| <= {N}; {r.checked_gaps} gaps disjoint"

    def dense():
        r = orbit_density(dmap, Gap(GapIndex(0, 0), 0), density_res, args.density_iters)
        return r.dense_at_resolution, (
            f"{r.arc_count - len(r.unvisited)}/{r.arc_count} arcs at N'={density_res} after {r.iterations_used} steps"
        )

    run("semiconjugacy", semi)
    run("wandering", wander)
    run("density", dense)
    print(f"alpha={format_cf(cfg.alpha)} N={N} samples={args.samples} iters={args.iters} seed={cfg.seed}")
    width = max(len(r[0]) for r in rows)
    for name, status, detail in rows:
        print(f"{name:<{width}}  {status}  {detail}")
    ok = all(r[1] == "PASS" for r in rows)
    print("overall: " + ("PASS" if ok else "FAIL"))
    return 0 if ok else 1


def _log2(x: Fraction) -> str:
    if x == 0:
        return "-inf"
    # ceiling of log2 for a positive rational, exact
    e = x.numerator.bit_length() - x.denominator.bit_length()
    while Fraction(2) ** e < x:
        e += 1
    while Fraction(2) ** (e - 1) >= x:
        e -= 1
    return str(e)


def cmd_genus(cfg: RunConfig, args) -> int:
    desc = glue_eval(parse_expression(args.expression))
    _emit(cfg, desc.to_json() + "\n", "genus.json")
    return 0


def cmd_ends(cfg: RunConfig, args) -> int:
    res = 4 if cfg.resolution is None else cfg.resolution
    N = res + 1 if cfg.depth is None else cfg.depth
    model = induced_end_map(build_map(BlowupSchedule.single(cfg.alpha), N), res)
    if cfg.out is not None:
        _emit(cfg, export.dumps(model.to_json()), "ends.json")
    print(export.dumps({"resolution": res, "count": end_count(model)}), end="")
    return 0


def _parse_start(text: str):
    kind, _, rest = text.partition(":")
    try:
        if kind == "gap":
            i, n, t = rest.split(":")
            return Gap(GapIndex(int(i), int(n)), parse_rational(t))
        if kind == "base":
            return Base(CertifiedValue.exact(parse_rational(rest)))
    except ValueError as exc:
        raise ParseError(f"bad start point {text!r}: {exc}") from None
    raise ParseError(f"bad start point {text!r}")


def cmd_orbit(cfg: RunConfig, args) -> int:
    N = 10 if cfg.depth is None else cfg.depth
    dmap = build_map(BlowupSchedule.single(cfg.alpha), N)
    p = _parse_start(args.start)
    if isinstance(p, Base):
        dmap.check_clear(p.angle)
    points = [p]
    for _ in range(args.steps):
        p = denjoy_eval(dmap, p)
        points.append(p)
    _emit(cfg, export.trajectory_csv(dmap, points), "trajectory.csv")
    return 0


def cmd_cantor(cfg: RunConfig, args) -> int:
    N = 3 if cfg.depth is None else cfg.depth
    dmap = build_map(BlowupSchedule.single(cfg.alpha), N)
    _emit(cfg, export.cantor_csv(cantor_approx(dmap, cfg.resolution)), "cantor.csv")
    return 0


def cmd_complex(cfg: RunConfig, args) -> int:
    if args.kind == "torus":
        cw = mapping_torus_complex(args.orbits, max(args.k, 1))
    else:
        cw = spine_complex(args.orbits, args.k)
    chi, rank = euler_and_rank(cw)
    report = {
        "kind": args.kind,
        "vertices": cw.vertex_count,
        "edges": len(cw.edges),
        "faces": len(cw.faces),
        "euler_characteristic": chi,
        "free_rank": rank,
    }
    _emit(cfg, export.dumps(report), "complex.json")
    return 0


def cmd_plot(cfg: RunConfig, args) -> int:
    N = 4 if cfg.depth is None else cfg.depth
    out = cfg.out or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    dmap = build_map(BlowupSchedule.single(cfg.alpha), N)
    (out / "denjoy.svg").write_text(export.plot_svg(dmap))
    (out / "cantor.csv").write_text(export.cantor_csv(cantor_approx(dmap)))
    points = [Gap(GapIndex(0, n), 0) for n in range(-N, N + 1)]
    (out / "trajectory.csv").write_text(export.trajectory_csv(dmap, points))
    print(f"wrote {out / 'denjoy.svg'}, {out / 'cantor.csv'}, {out / 'trajectory.csv'}")
    return 0


COMMANDS = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "genus": cmd_genus,
    "ends": cmd_ends,
    "orbit": cmd_orbit,
    "cantor": cmd_cantor,
    "complex": cmd_complex,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, usage errors exit EXIT_USAGE; return rather than raise either way
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args)
    except ParseError as exc:
        print(f"denjoy: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DenjoyError as exc:
        print(f"denjoy: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"denjoy: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
