"""Reference baselines: pairwise oracle and sorted edge-skipping scan."""

import math

import numpy as np
import pytest

from rank1gen import (
    RandomStream,
    WeightSequence,
    generate_chung_lu_skip,
    generate_nr_oracle,
    prepare_chung_lu,
)


def _assert_simple(g):
    if g.num_edges == 0:
        return
    assert np.all(g.u < g.v)
    assert int(g.v.max()) < g.n
    keys = g.u.astype(np.uint64) * np.uint64(g.n) + g.v.astype(np.uint64)
    assert len(np.unique(keys)) == g.num_edges


def test_oracle_outcome(fig_weights):
    out = generate_nr_oracle(fig_weights, RandomStream(1))
    _assert_simple(out.graph)
    assert out.event_budget == out.graph.num_edges
    assert out.loops_discarded == 0
    assert out.duplicates_merged == 0
    assert out.excess_edges == 0


def test_oracle_determinism(fig_weights):
    a = generate_nr_oracle(fig_weights, RandomStream(2))
    b = generate_nr_oracle(fig_weights, RandomStream(2))
    assert np.array_equal(a.graph.u, b.graph.u)
    assert np.array_equal(a.graph.v, b.graph.v)


def test_oracle_edge_frequency():
    # x={1,1}: edge probability 1 - e^{-1/2}
    w = WeightSequence.from_values([1.0, 1.0])
    runs = 20000
    rng = RandomStream(3)
    hits = sum(generate_nr_oracle(w, rng).graph.num_edges for _ in range(runs))
    p = 1.0 - math.exp(-0.5)
    se = math.sqrt(p * (1 - p) / runs)
    assert abs(hits / runs - p) < 5 * se


def test_oracle_zero_pair_never_connects():
    w = WeightSequence.from_values([0.0, 5.0])
    rng = RandomStream(4)
    for _ in range(200):
        assert generate_nr_oracle(w, rng).graph.num_edges == 0


def test_prepare_returns_descending_gather(fig_weights):
    w_sorted, order = prepare_chung_lu(fig_weights)
    assert np.all(w_sorted[:-1] >= w_sorted[1:])
    assert np.array_equal(w_sorted, fig_weights.values[order])
    assert sorted(order.tolist()) == list(range(fig_weights.n))


def test_prepare_stable_on_ties():
    w = WeightSequence.from_values([2.0, 3.0, 2.0, 3.0])
    _, order = prepare_chung_lu(w)
    assert np.array_equal(order, [1, 3, 0, 2])


def test_cl_outcome(fig_weights):
    out = generate_chung_lu_skip(fig_weights, RandomStream(5))
    _assert_simple(out.graph)
    assert out.event_budget == out.graph.num_edges
    assert out.excess_edges == 0


def test_cl_prepared_reuse_identical(fig_weights):
    prepared = prepare_chung_lu(fig_weights)
    a = generate_chung_lu_skip(fig_weights, RandomStream(6), prepared=prepared)
    b = generate_chung_lu_skip(fig_weights, RandomStream(6))
    assert np.array_equal(a.graph.u, b.graph.u)
    assert np.array_equal(a.graph.v, b.graph.v)


def test_cl_edge_frequency_uniform():
    # x={1,1,1}: per-pair probability exactly 1/3
    w = WeightSequence.from_values([1.0, 1.0, 1.0])
    runs = 30000
    rng = RandomStream(7)
    counts = np.zeros(3)
    pair_idx = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
    for _ in range(runs):
        g = generate_chung_lu_skip(w, rng).graph
        for a, b in zip(g.u.tolist(), g.v.tolist()):
            counts[pair_idx[(a, b)]] += 1
    p = 1.0 / 3.0
    se = math.sqrt(p * (1 - p) / runs)
    assert np.all(np.abs(counts / runs - p) < 5 * se)


def test_cl_probability_cap():
    # two hubs with x_i x_j > L: the capped probability is 1, so the
    # hub-hub edge appears in every sample
    w = WeightSequence.from_values([10.0, 10.0, 0.5, 0.5])
    rng = RandomStream(8)
    for _ in range(100):
        g = generate_chung_lu_skip(w, rng).graph
        assert (0, 1) in g.edge_set()


def test_cl_zero_weights_fine():
    w = WeightSequence.from_values([2.0, 0.0, 1.0, 0.0])
    rng = RandomStream(9)
    for _ in range(100):
        g = generate_chung_lu_skip(w, rng).graph
        for a, b in zip(g.u.tolist(), g.v.tolist()):
            assert a in (0, 2) and b in (0, 2)
