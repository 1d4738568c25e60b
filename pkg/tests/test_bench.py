"""Benchmark harness: weight laws, sweeps, report round trips."""

import csv
import math

import numpy as np
import pytest

from rank1gen import (
    BenchError,
    BenchResult,
    RandomStream,
    doubling_ratios,
    draw_weights,
    emit_report,
    load_results_csv,
    paired_prep_margins,
    run_sweep,
)


def test_draw_weights_uniform():
    w = draw_weights(500, 8.0, "uniform", RandomStream(1))
    assert w.shape == (500,)
    assert float(w.sum()) == pytest.approx(4000.0, rel=1e-12)
    assert np.all(w == w[0])


def test_draw_weights_two_block():
    n = 1000
    w = draw_weights(n, 10.0, "two-block", RandomStream(2))
    assert float(w.sum()) == pytest.approx(10.0 * n, rel=1e-12)
    kinds = np.unique(np.round(w, 9))
    assert kinds.shape[0] == 2
    heavy = int(np.count_nonzero(w > kinds[0]))
    assert heavy == n // 10
    assert kinds[1] / kinds[0] == pytest.approx(10.0, rel=1e-9)


def test_draw_weights_two_block_placement_varies():
    a = draw_weights(200, 10.0, "two-block", RandomStream(3))
    b = draw_weights(200, 10.0, "two-block", RandomStream(4))
    assert not np.array_equal(a, b)


def test_draw_weights_pareto_truncation():
    n = 4096
    target = 10.0 * n
    w = draw_weights(n, 10.0, "pareto", RandomStream(5))
    assert float(w.sum()) == pytest.approx(target, rel=1e-12)
    # cap applies before the rescale; after rescaling the max can only
    # shrink further when mass was clipped away
    cap = math.sqrt(target) / math.log(n)
    assert float(w.max()) <= cap * 1.0001
    wu = draw_weights(n, 10.0, "pareto", RandomStream(5), untruncated_tail=True)
    assert float(wu.max()) >= float(w.max())


def test_draw_weights_unknown_law():
    with pytest.raises(BenchError):
        draw_weights(10, 2.0, "zipf", RandomStream(1))


def test_sweep_argument_validation():
    kw = dict(mean_degree=8.0, weight_law="uniform", models=["nr-event"],
              reps=3, seed=1)
    with pytest.raises(BenchError, match="single-threaded"):
        run_sweep([64, 128], **kw, threads=2)
    with pytest.raises(BenchError, match="ascending"):
        run_sweep([128, 64], **kw)
    with pytest.raises(BenchError):
        run_sweep([64, 128], mean_degree=8.0, weight_law="uniform",
                  models=["mystery"], reps=3, seed=1)
    with pytest.raises(BenchError):
        run_sweep([64, 128], mean_degree=8.0, weight_law="zipf",
                  models=["nr-event"], reps=3, seed=1)
    with pytest.raises(BenchError):
        run_sweep([64, 128], mean_degree=8.0, weight_law="uniform",
                  models=["nr-event"], reps=0, seed=1)
    with pytest.raises(BenchError, match="oracle"):
        run_sweep([2**18], mean_degree=8.0, weight_law="uniform",
                  models=["nr-oracle"], reps=3, seed=1)


def _tiny_sweep():
    return run_sweep([2048, 4096], 8.0, "uniform",
                     ["nr-event", "cl-skip"], 3, 77, tune_allocator=False)


def test_sweep_results_shape():
    res = _tiny_sweep()
    assert len(res) == 4
    assert [r.n for r in res] == [2048, 2048, 4096, 4096]
    for r in res:
        assert isinstance(r, BenchResult)
        assert r.t_total == r.t_preprocess + r.t_generate
        assert r.events >= r.edges >= 0
        assert r.reps == 3
        assert r.law == "uniform"
        assert r.model in ("nr-event", "cl-skip")
        assert r.target_mean_degree == 8.0
    ev = [r for r in res if r.model == "nr-event"]
    for r in ev:
        # event budget concentrates near mean_degree * n / 2
        assert abs(r.events - 4.0 * r.n) < 0.2 * 4.0 * r.n


def test_doubling_ratios():
    res = _tiny_sweep()
    ratios = doubling_ratios(res)
    assert set(ratios) == {"nr-event", "cl-skip"}
    assert len(ratios["nr-event"]) == 1
    r = BenchResult(n=1, target_mean_degree=1, t_preprocess=1, t_generate=1,
                    t_total=2, events=1, edges=1, model="m", law="uniform",
                    backend="pure", reps=1)
    r2 = BenchResult(n=2, target_mean_degree=1, t_preprocess=2, t_generate=4,
                     t_total=6, events=2, edges=2, model="m", law="uniform",
                     backend="pure", reps=1)
    assert doubling_ratios([r, r2]) == {"m": [3.0]}
    assert doubling_ratios([r, r2], "t_preprocess") == {"m": [2.0]}


def test_report_csv_round_trip(tmp_path):
    res = _tiny_sweep()
    csv_path = str(tmp_path / "out.csv")
    plot_path = str(tmp_path / "out.tsv")
    text = emit_report(res, csv_path, plot_path)
    assert open(csv_path).read() == text
    back = load_results_csv(csv_path)
    assert back == res

    # an independent reader recomputes the same doubling ratios
    rows = list(csv.DictReader(open(csv_path)))
    totals = {}
    for row in rows:
        totals.setdefault(row["model"], []).append(
            (int(row["n"]), float(row["t_total"]))
        )
    for model, cells in totals.items():
        cells.sort()
        recomputed = [b / a for (_, a), (_, b) in zip(cells, cells[1:])]
        assert recomputed == pytest.approx(doubling_ratios(res)[model])

    plot_lines = open(plot_path).read().splitlines()
    assert plot_lines[0] == "model\tn\tt_total_ns"
    assert len(plot_lines) == 1 + len(res)


def test_paired_prep_margins_smoke():
    out = paired_prep_margins([2048, 4096], 8.0, "uniform", 9,
                              rounds=4, tune_allocator=False)
    assert set(out) == {"ratios", "margins"}
    assert len(out["margins"]) == 1
    assert set(out["ratios"]) == {"nr-event", "cl-skip"}


def test_paired_prep_margins_validation():
    with pytest.raises(BenchError):
        paired_prep_margins([2048], 8.0, "uniform", 9, rounds=4)
    with pytest.raises(BenchError):
        paired_prep_margins([2048, 4096], 8.0, "uniform", 9, rounds=2)
    with pytest.raises(BenchError):
        paired_prep_margins([2048, 4096], 8.0, "uniform", 9,
                            models=("nr-event",), rounds=4)
