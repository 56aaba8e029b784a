"""End-to-end triangulation and the timing harness."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .flipping import DEFAULT_MAX_FLIPS_PER_PAIR, FlipStats, legalize
from .generate import generate
from .geometry import as_coords
from .io import canonical_hull, dedup_points, format_mesh
from .sweephull import Triangulation, triangulate_nonoverlapping


@dataclass(frozen=True)
class PipelineOptions:
    dedup: bool = False
    flip: bool = True
    max_flips_per_pair: int = DEFAULT_MAX_FLIPS_PER_PAIR
    max_passes: int | None = None


@dataclass(frozen=True)
class Timings:
    build: float
    flip: float

    @property
    def total(self) -> float:
        return self.build + self.flip


@dataclass
class PipelineResult:
    state: Triangulation
    stats: FlipStats
    timings: Timings
    #: original index of each point in ``state.points`` (identity unless deduplicated)
    kept: np.ndarray

    def __iter__(self):
        # allows ``state, stats, timings = run_pipeline(...)``
        return iter((self.state, self.stats, self.timings))

    def mesh_text(self) -> str:
        return mesh_text(self.state)


def mesh_text(state: Triangulation) -> str:
    return format_mesh(state.points, state.triangles, canonical_hull(state.hull.vertices()))


def run_pipeline(points, options: PipelineOptions | None = None) -> PipelineResult:
    """Seed, sweep and (unless ``options.flip`` is off) legalize.

    Construction time covers seeding, both sorts and the sweep; flip time
    covers legalization.  Neither includes any file I/O.
    """
    options = options or PipelineOptions()
    coords = as_coords(points)
    kept = np.arange(len(coords))
    if options.dedup:
        coords, kept = dedup_points(coords)
    t0 = time.perf_counter()
    state = triangulate_nonoverlapping(coords)
    t1 = time.perf_counter()
    if options.flip:
        state, stats = legalize(state, options.max_flips_per_pair, options.max_passes)
    else:
        stats = FlipStats(0, 0, 0)
    t2 = time.perf_counter()
    return PipelineResult(state, stats, Timings(t1 - t0, t2 - t1), kept)


@dataclass(frozen=True)
class BenchRow:
    n: int
    build_s: float
    flip_s: float
    total_s: float
    triangles: int
    passes: int


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    repeats: int = 3
    seed: int = 0

    def ratios(self) -> list[float | None]:
        """total(n) / total(previous n), ``None`` for the first row."""
        out: list[float | None] = [None]
        for prev, row in zip(self.rows, self.rows[1:]):
            out.append(row.total_s / prev.total_s if prev.total_s > 0 else float("inf"))
        return out

    def table(self) -> str:
        head = (f"# uniform input, seed {self.seed}, median of {self.repeats} interleaved runs; "
                "times include sorting, exclude file I/O")
        cols = f"{'n':>9} {'build_s':>10} {'flip_s':>10} {'total_s':>10} {'ratio':>7} " \
               f"{'triangles':>10} {'passes':>6}"
        lines = [head, cols]
        for row, ratio in zip(self.rows, self.ratios()):
            r = "-" if ratio is None else f"{ratio:.1f}"
            lines.append(f"{row.n:>9} {row.build_s:>10.4f} {row.flip_s:>10.4f} "
                         f"{row.total_s:>10.4f} {r:>7} {row.triangles:>10} {row.passes:>6}")
        return "\n".join(lines)

    def csv(self) -> str:
        lines = ["n,build_s,flip_s,total_s,triangles,passes"]
        lines += [f"{r.n},{r.build_s!r},{r.flip_s!r},{r.total_s!r},{r.triangles},{r.passes}"
                  for r in self.rows]
        return "\n".join(lines) + "\n"


def _warm_up() -> None:
    # triggers numba compilation (or cache loading) outside the timed region
    run_pipeline(generate("uniform", 64, 0))


def bench(sizes, repeats: int = 3, rng_seed: int = 0) -> BenchReport:
    """Time the pipeline on uniform input; one row per size, medians of ``repeats``.

    Trials run one at a time, cycling through the sizes once per repeat, so
    a burst of machine noise lands on every size rather than on one.
    """
    sizes = [int(n) for n in sizes]
    if not sizes:
        raise ValueError("sizes must be nonempty")
    repeats = max(1, int(repeats))
    _warm_up()
    inputs = [generate("uniform", n, rng_seed) for n in sizes]
    builds = [[] for _ in sizes]
    flips = [[] for _ in sizes]
    totals = [[] for _ in sizes]
    counts = [set() for _ in sizes]
    passes = [0] * len(sizes)
    for _ in range(repeats):
        for i, pts in enumerate(inputs):
            res = run_pipeline(pts)
            builds[i].append(res.timings.build)
            flips[i].append(res.timings.flip)
            totals[i].append(res.timings.total)
            counts[i].add(res.state.n_triangles)
            passes[i] = res.stats.passes
            del res
    report = BenchReport(repeats=repeats, seed=rng_seed)
    for i, n in enumerate(sizes):
        if len(counts[i]) != 1:
            raise RuntimeError(f"triangle count differs between repeats at n={n}")
        report.rows.append(BenchRow(
            n, statistics.median(builds[i]), statistics.median(flips[i]),
            statistics.median(totals[i]), counts[i].pop(), passes[i],
        ))
    return report
