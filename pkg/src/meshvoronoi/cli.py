"""Command-line interface: ``meshvoronoi {gen,compute,verify,bench,render}``.

Exit codes: 0 success, 1 verification or invariant failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .bench import format_rows, format_table, run_bench
from .complex import InvariantViolation
from .document import PointFileError, ResultDocument, document_from_result, format_points, parse_points
from .generators import FAMILIES, TWO_SCALE_K, generate
from .kernel import power_sign
from .kinetic import InteriorSteinerError
from .mesher import RefinementError
from .oracle import brute_delaunay, verify_equal
from .pipeline import AgreementError, PipelineConfig, compute
from .render import render_svg
from .simplices import SimplexSet

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

ORACLE_CAP = 300
SAMPLE_SIZE = 200


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _config(args) -> PipelineConfig:
    try:
        return PipelineConfig(
            tau=args.tau,
            box_scale=args.box_scale,
            max_points=args.max_points,
            seed=args.seed,
            check_invariants=args.check_invariants,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_points(path: str):
    try:
        return parse_points(_read_text(path))
    except PointFileError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _run(points, cfg: PipelineConfig, trace_path: str | None):
    if trace_path is None:
        return compute(points, cfg)
    with open(trace_path, "w") as fh:
        return compute(points, cfg, trace=lambda rec: fh.write(json.dumps(rec, sort_keys=True) + "\n"))


def sampled_check(points, final: SimplexSet, samples: int, seed: int = 0) -> list[str]:
    """Exact empty-circle test of a random sample of output triangles against every input."""
    problems = []
    tris = sorted(final.triangles)
    rng = random.Random(seed)
    chosen = tris if len(tris) <= samples else rng.sample(tris, samples)
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    for a, b, c in chosen:
        for d in range(len(points)):
            if d in (a, b, c):
                continue
            s = power_sign(
                (xs[a], xs[b], xs[c], xs[d]), (ys[a], ys[b], ys[c], ys[d]), (False,) * 4, (a, b, c, d)
            )
            if s < 0:
                problems.append(f"triangle {(a, b, c)} has input {d} inside its circumcircle")
                break
    uses: dict = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            e = (min(e), max(e))
            uses[e] = uses.get(e, 0) + 1
    problems += [f"edge {e} is shared by {k} triangles" for e, k in uses.items() if k > 2]
    return problems


def verify_points(points, cfg: PipelineConfig, sampled: bool = False, cap: int = ORACLE_CAP, tamper=None):
    """Compute and check against the brute-force oracle; returns ``(ok, lines)``.

    ``tamper`` may rewrite the computed complex before the comparison, which
    lets tests confirm that a corrupted result is caught.
    """
    n = len(points)
    if n > cap and not sampled:
        raise UsageError(f"{n} points exceed the oracle cap of {cap}; pass --sampled")
    res = compute(points, cfg)
    final = res.final if tamper is None else tamper(res.final)
    if n <= cap:
        # a single point is its own complex
        expected = brute_delaunay(points) if n >= 2 else SimplexSet.build(vertices=[0])
        diff = verify_equal(final, expected)
        return diff.ok, [f"n={n} full check: {diff.summary()}"]
    problems = sampled_check(points, final, SAMPLE_SIZE, cfg.seed)
    lines = [f"n={n} sampled check of {min(SAMPLE_SIZE, len(final.triangles))} triangles: "
             + ("no violations" if not problems else f"{len(problems)} violations")]
    return not problems, lines + problems[:20]


def cmd_gen(args) -> int:
    try:
        pts = generate(args.family, args.n, args.seed, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_text(args.output, format_points(pts, f"{args.family} n={args.n} seed={args.seed}"))
    return EXIT_OK


def cmd_compute(args) -> int:
    points = _load_points(args.input)
    res = _run(points, _config(args), args.trace)
    doc = document_from_result(res)
    if args.format == "svg":
        _write_text(args.output, render_svg(doc, voronoi=args.voronoi))
    else:
        _write_text(args.output, doc.dumps())
    return EXIT_OK


def cmd_verify(args) -> int:
    points = _load_points(args.input)
    ok, lines = verify_points(points, _config(args), args.sampled, args.cap)
    print("\n".join(lines))
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_bench(args) -> int:
    fams = [f for f in args.families.split(",") if f]
    bad = [f for f in fams if f not in FAMILIES]
    if bad:
        raise UsageError(f"unknown families: {', '.join(bad)}")
    rows = run_bench(fams, args.sizes, args.seeds, _config(args), args.jobs, args.k)
    sys.stdout.write(format_table(rows))
    if args.rows:
        _write_text(args.rows, format_rows(rows))
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        doc = ResultDocument.loads(_read_text(args.input))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.input}: not a result document ({exc})") from None
    _write_text(args.output, render_svg(doc, size=args.size, voronoi=args.voronoi))
    return EXIT_OK


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau", type=float, default=3.0, help="well-spacedness threshold (default 3)")
    p.add_argument("--box-scale", type=float, default=3.0, help="bounding square size relative to the input extent")
    p.add_argument("--max-points", type=int, default=2_000_000, help="abort refinement beyond this many vertices")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--check-invariants", action="store_true", help="validate structure and sample the weighted oracle mid-run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meshvoronoi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated point file")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=TWO_SCALE_K, help="cluster scale exponent for two-scale")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("compute", help="Delaunay complex of a point file")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("doc", "svg"), default="doc")
    p.add_argument("--voronoi", action="store_true", help="overlay the Voronoi diagram in svg output")
    p.add_argument("--trace", metavar="FILE", help="write one JSON record per flip")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="compute and compare with the brute-force oracle")
    p.add_argument("input")
    p.add_argument("--sampled", action="store_true", help="allow inputs above the cap using a sampled check")
    p.add_argument("--cap", type=int, default=ORACLE_CAP)
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="bound-ratio table over generated instances")
    p.add_argument("--families", default="uniform")
    p.add_argument("--sizes", type=_int_list, default=[128, 256, 512])
    p.add_argument("--seeds", type=_int_list, default=[0, 1, 2])
    p.add_argument("--k", type=int, default=TWO_SCALE_K)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--rows", metavar="FILE", help="also write JSON-lines rows")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="draw a result document as SVG")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--size", type=int, default=800)
    p.add_argument("--voronoi", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InteriorSteinerError, InvariantViolation, AgreementError, RefinementError) as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
