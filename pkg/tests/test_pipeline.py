import numpy as np
import pytest

from shull.errors import AllCollinear, DuplicatePoints
from shull.generate import generate
from shull.oracle import audit, gift_wrap_hull
from shull.pipeline import BenchReport, BenchRow, PipelineOptions, bench, mesh_text, run_pipeline


def test_three_points():
    state, stats, timings = run_pipeline([(0, 0), (1, 0), (0, 1)])
    assert state.n_triangles == 1
    assert stats.flips_total == 0
    assert timings.total >= 0


def test_uniform_thousand():
    pts = generate("uniform", 1000, 7)
    res = run_pipeline(pts)
    h = len(gift_wrap_hull(pts))
    assert res.state.n_triangles == 2 * 1000 - 2 - h
    assert audit(res.state).ok
    assert res.timings.total == pytest.approx(res.timings.build + res.timings.flip)


def test_collinear_error():
    with pytest.raises(AllCollinear):
        run_pipeline(generate("collinear", 50, 0))


def test_dedup_option():
    pts = [(0, 0), (1, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(DuplicatePoints):
        run_pipeline(pts)
    res = run_pipeline(pts, PipelineOptions(dedup=True))
    assert res.kept.tolist() == [0, 1, 2, 4]
    assert len(res.state.points) == 4


def test_no_flip_option():
    pts = generate("uniform", 500, 3)
    res = run_pipeline(pts, PipelineOptions(flip=False))
    assert res.stats.flips_total == 0 and res.timings.flip >= 0
    rep = audit(res.state)
    assert rep.delaunay_violations
    assert rep.euler_ok and rep.manifold_ok and rep.adjacency_ok and rep.area_mismatch <= 1e-9


def test_mesh_text_bit_identical():
    pts = generate("uniform", 3000, 11)
    assert mesh_text(run_pipeline(pts).state) == mesh_text(run_pipeline(pts.copy()).state)


def test_bench_rows_and_outputs():
    report = bench([100, 1000], repeats=3, rng_seed=0)
    assert [r.n for r in report.rows] == [100, 1000]
    assert all(r.triangles > 0 and r.passes >= 1 for r in report.rows)
    assert report.ratios()[0] is None and report.ratios()[1] > 0
    table = report.table()
    assert "include sorting" in table and "exclude file I/O" in table
    assert len(table.splitlines()) == 4
    assert report.csv().splitlines()[0] == "n,build_s,flip_s,total_s,triangles,passes"


def test_bench_report_ratios():
    rep = BenchReport([BenchRow(10, 1, 1, 2.0, 1, 1), BenchRow(100, 1, 1, 30.0, 1, 1)])
    assert rep.ratios() == [None, 15.0]


def test_bench_needs_sizes():
    with pytest.raises(ValueError):
        bench([])


def test_points_are_not_mutated():
    pts = generate("uniform", 200, 0)
    before = pts.copy()
    run_pipeline(pts)
    assert np.array_equal(pts, before)
