"""Command line front end: ``triangulate``, ``verify``, ``gen`` and ``bench``.

Every failure prints one line ``shull: error E_CODE: message`` on stderr and
exits with status 1 (2 for usage errors).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import DuplicatePoints, ShullError
from .generate import KINDS, generate
from .io import canonical_hull, dedup_points, read_mesh, read_points, write_mesh, write_points
from .oracle import audit, same_cycle
from .pipeline import PipelineOptions, bench, run_pipeline
from .render import parse_stage, render_svg, snapshot
from .sweephull import Triangulation


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _with_lines(exc: ShullError, linenos, kept) -> str:
    msg = str(exc)
    if isinstance(exc, DuplicatePoints) and exc.indices:
        lines = [int(linenos[kept[i]]) for i in exc.indices]
        msg += f" (input lines {', '.join(map(str, lines))})"
    return msg


def cmd_triangulate(args) -> int:
    stage = parse_stage(args.stage) if args.stage else None
    pts, linenos = read_points(args.input, with_lines=True)
    opts = PipelineOptions(dedup=args.dedup, flip=not args.no_flip)
    try:
        res = run_pipeline(pts, opts)
    except ShullError as exc:
        kept = dedup_points(pts)[1] if args.dedup else np.arange(len(pts))
        raise _Fail(exc.code, _with_lines(exc, linenos, kept)) from None
    state = res.state
    write_mesh(args.output, state.points, state.triangles,
               canonical_hull(state.hull.vertices()))
    if args.svg:
        stage = stage or parse_stage("final")
        shot = state if stage.kind == "final" else snapshot(state.points, stage)
        render_svg(shot, stage, args.svg)
    print(f"points {len(state.points)} triangles {state.n_triangles} "
          f"hull {len(state.hull.vertices())} passes {res.stats.passes} "
          f"flips {res.stats.flips_total} pairs_hit_limit {res.stats.pairs_hit_limit} "
          f"build_s {res.timings.build:.6f} flip_s {res.timings.flip:.6f}")
    return 0


def cmd_verify(args) -> int:
    pts = read_points(args.input)
    mesh = read_mesh(args.mesh)
    if mesh.points.shape != pts.shape or not np.array_equal(mesh.points, pts):
        raise _Fail("E_MESH_MISMATCH", f"{args.mesh}: points differ from {args.input}")
    state = Triangulation.from_triangles(mesh.points, mesh.triangles)
    rep = audit(state, check_delaunay=not args.structure_only)
    print(rep.summary())
    ring = state.hull.vertices() if state.n_triangles else []
    if not same_cycle(mesh.hull, ring):
        print("hull_line_matches: False")
        raise _Fail("E_AUDIT_FAILED", "hull line differs from the mesh boundary")
    print("hull_line_matches: True")
    if not rep.ok:
        raise _Fail("E_AUDIT_FAILED",
                    f"{len(rep.delaunay_violations)} circumcircle violations"
                    + ("; " + "; ".join(rep.notes) if rep.notes else ""))
    print("ok")
    return 0


def cmd_gen(args) -> int:
    write_points(args.output, generate(args.kind, args.n, args.seed))
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise _Fail("E_USAGE", f"--sizes must be comma-separated integers, got {args.sizes!r}")
    if not sizes or min(sizes) < 3:
        raise _Fail("E_USAGE", "--sizes needs at least one size, each >= 3")
    report = bench(sizes, args.repeats, args.seed)
    print(report.table())
    if args.csv:
        try:
            with open(args.csv, "w", encoding="ascii") as fh:
                fh.write(report.csv())
        except OSError as exc:
            raise _Fail("E_FILE_WRITE", f"{args.csv}: {exc.strerror or exc}") from None
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"shull: error E_USAGE: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shull", description="2D Delaunay triangulation by sweep-hull")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("triangulate", help="triangulate a point file")
    t.add_argument("--input", required=True)
    t.add_argument("--output", required=True)
    t.add_argument("--svg")
    t.add_argument("--stage", help="seed, final or stepN (default final)")
    t.add_argument("--dedup", action="store_true", help="drop exact duplicate points first")
    t.add_argument("--no-flip", action="store_true", help="stop before edge flipping")
    t.set_defaults(func=cmd_triangulate)

    v = sub.add_parser("verify", help="audit a mesh against the brute-force oracles")
    v.add_argument("--input", required=True)
    v.add_argument("--mesh", required=True)
    v.add_argument("--structure-only", action="store_true",
                   help="skip the empty-circumcircle scan (for --no-flip meshes)")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write a generated point set")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--n", required=True, type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", required=True)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time the pipeline on uniform input")
    b.add_argument("--sizes", default="100,1000,10000,100000,1000000")
    b.add_argument("--repeats", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv", help="also write the rows as CSV")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        code, msg = exc.code, str(exc)
    except ShullError as exc:
        code, msg = exc.code, str(exc)
    except MemoryError:
        code, msg = "E_MEMORY", "out of memory"
    except Exception as exc:  # noqa: BLE001 - report, never dump a traceback
        code, msg = "E_INTERNAL", f"{type(exc).__name__}: {exc}"
    print(f"shull: error {code}: {' '.join(msg.split())}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
