"""Generator outcomes: laws, invariants, determinism."""

import math

import numpy as np
import pytest

from rank1gen import (
    DomainError,
    Multigraph,
    RandomStream,
    SimpleGraph,
    WeightSequence,
    build_alias,
    generate_er,
    generate_nr_multigraph,
    generate_nr_simple,
    project_simple,
)
from rank1gen.generators import (
    CORRUPT_BUDGET_HALF,
    CORRUPT_KEEP_LOOPS,
    CORRUPT_SKIP_DEDUP,
)


def _assert_simple(g: SimpleGraph):
    if g.num_edges == 0:
        return
    assert np.all(g.u < g.v)
    assert int(g.v.max()) < g.n
    keys = g.u.astype(np.uint64) * np.uint64(g.n) + g.v.astype(np.uint64)
    assert len(np.unique(keys)) == g.num_edges


def test_outcome_identity(fig_weights):
    out = generate_nr_simple(fig_weights, RandomStream(1))
    assert out.event_budget == (out.graph.num_edges
                                + out.loops_discarded
                                + out.duplicates_merged)
    assert out.excess_edges == out.loops_discarded + out.duplicates_merged
    _assert_simple(out.graph)


def test_determinism(fig_weights):
    a = generate_nr_simple(fig_weights, RandomStream(7))
    b = generate_nr_simple(fig_weights, RandomStream(7))
    assert np.array_equal(a.graph.u, b.graph.u)
    assert np.array_equal(a.graph.v, b.graph.v)
    assert a.event_budget == b.event_budget


def test_presize_toggle_inert(fig_weights):
    a = generate_nr_simple(fig_weights, RandomStream(7), presize=True)
    b = generate_nr_simple(fig_weights, RandomStream(7), presize=False)
    assert np.array_equal(a.graph.u, b.graph.u)
    assert np.array_equal(a.graph.v, b.graph.v)


def test_prebuilt_table_equivalent(fig_weights):
    t = build_alias(fig_weights)
    a = generate_nr_simple(fig_weights, RandomStream(7), table=t)
    b = generate_nr_simple(fig_weights, RandomStream(7))
    assert np.array_equal(a.graph.u, b.graph.u)
    assert np.array_equal(a.graph.v, b.graph.v)


def test_multigraph_projection_equals_simple_path(fig_weights):
    simple = generate_nr_simple(fig_weights, RandomStream(21))
    multi = generate_nr_multigraph(fig_weights, RandomStream(21))
    proj = project_simple(multi.graph)
    assert proj.event_budget == multi.graph.num_events
    assert np.array_equal(proj.graph.u, simple.graph.u)
    assert np.array_equal(proj.graph.v, simple.graph.v)
    assert proj.loops_discarded == simple.loops_discarded
    assert proj.duplicates_merged == simple.duplicates_merged


def test_projection_idempotent(fig_weights):
    multi = generate_nr_multigraph(fig_weights, RandomStream(3))
    once = project_simple(multi.graph)
    again = project_simple(
        Multigraph(n=once.graph.n, u=once.graph.u, v=once.graph.v)
    )
    assert np.array_equal(once.graph.u, again.graph.u)
    assert np.array_equal(once.graph.v, again.graph.v)
    assert again.loops_discarded == 0
    assert again.duplicates_merged == 0


def test_single_vertex_all_loops():
    w = WeightSequence.from_values([1.0])
    outs = [generate_nr_simple(w, RandomStream(s)) for s in range(200)]
    assert all(o.graph.num_edges == 0 for o in outs)
    assert all(o.loops_discarded == o.event_budget for o in outs)
    budgets = [o.event_budget for o in outs]
    assert 0.3 < np.mean(budgets) < 0.75  # Poisson(1/2) mean


def test_zero_weight_vertex_isolated():
    w = WeightSequence.from_values([0.0, 1.0, 1.0])
    for s in range(100):
        g = generate_nr_simple(w, RandomStream(s)).graph
        if g.num_edges:
            assert 0 not in set(g.u.tolist()) | set(g.v.tolist())


def test_pair_multiplicity_mean():
    # two unit weights: pair multiplicity mean 1/2, loop mean 1/4 per vertex
    w = WeightSequence.from_values([1.0, 1.0])
    runs = 20000
    rng = RandomStream(5)
    pair = loops0 = 0
    for _ in range(runs):
        mg = generate_nr_multigraph(w, rng).graph
        pair += mg.multiplicity(0, 1)
        loops0 += mg.multiplicity(0, 0)
    se_pair = math.sqrt(0.5 / runs)
    se_loop = math.sqrt(0.25 / runs)
    assert abs(pair / runs - 0.5) < 5 * se_pair
    assert abs(loops0 / runs - 0.25) < 5 * se_loop


def test_multigraph_degrees_count_loops_twice():
    mg = Multigraph(n=3, u=np.array([0, 1], dtype=np.uint32),
                    v=np.array([0, 2], dtype=np.uint32))
    assert np.array_equal(mg.degrees(), [2, 1, 1])
    assert mg.multiplicity(0, 0) == 1
    assert mg.multiplicity(1, 2) == 1
    assert mg.multiplicity(2, 1) == 1


def test_er_basic():
    out = generate_er(30, 0.2, RandomStream(9))
    _assert_simple(out.graph)
    assert out.graph.n == 30
    assert out.event_budget == (out.graph.num_edges
                                + out.loops_discarded
                                + out.duplicates_merged)


def test_er_determinism_and_presize():
    a = generate_er(30, 0.2, RandomStream(9), presize=True)
    b = generate_er(30, 0.2, RandomStream(9), presize=False)
    assert np.array_equal(a.graph.u, b.graph.u)
    assert np.array_equal(a.graph.v, b.graph.v)


def test_er_p_zero_empty():
    out = generate_er(10, 0.0, RandomStream(1))
    assert out.graph.num_edges == 0
    assert out.event_budget == 0


def test_er_single_vertex():
    out = generate_er(1, 0.5, RandomStream(1))
    assert out.graph.num_edges == 0
    assert out.loops_discarded == out.event_budget


def test_er_domain_errors():
    with pytest.raises(DomainError):
        generate_er(10, 1.0, RandomStream(1))
    with pytest.raises(DomainError):
        generate_er(10, -0.1, RandomStream(1))
    with pytest.raises(DomainError):
        generate_er(0, 0.5, RandomStream(1))


def test_er_edge_frequency():
    # n=2, p=0.3: single possible edge
    runs = 20000
    rng = RandomStream(33)
    hits = sum(generate_er(2, 0.3, rng).graph.num_edges for _ in range(runs))
    se = math.sqrt(0.3 * 0.7 / runs)
    assert abs(hits / runs - 0.3) < 5 * se


def test_corrupt_budget_half(fig_weights):
    runs = 2000
    rng_good = RandomStream(40)
    rng_bad = RandomStream(40)
    good = np.mean([generate_nr_simple(fig_weights, rng_good).event_budget
                    for _ in range(runs)])
    bad = np.mean([generate_nr_simple(fig_weights, rng_bad,
                                      _corrupt=CORRUPT_BUDGET_HALF).event_budget
                   for _ in range(runs)])
    assert bad < 0.7 * good


def test_corrupt_keep_loops(fig_weights):
    rng = RandomStream(41)
    seen_loop = False
    for _ in range(200):
        g = generate_nr_simple(fig_weights, rng,
                               _corrupt=CORRUPT_KEEP_LOOPS).graph
        if g.num_edges and np.any(g.u == g.v):
            seen_loop = True
            break
    assert seen_loop


def test_corrupt_skip_dedup(fig_weights):
    rng = RandomStream(42)
    seen_dup = False
    for _ in range(200):
        g = generate_nr_simple(fig_weights, rng,
                               _corrupt=CORRUPT_SKIP_DEDUP).graph
        if g.num_edges:
            keys = g.u.astype(np.uint64) * np.uint64(g.n) + g.v.astype(np.uint64)
            if len(np.unique(keys)) != len(keys):
                seen_dup = True
                break
    assert seen_dup


def test_backends_give_identical_outcomes(fig_weights):
    a = generate_nr_simple(fig_weights, RandomStream(50), backend="pure")
    b = generate_nr_simple(fig_weights, RandomStream(50), backend="compiled")
    assert np.array_equal(a.graph.u, b.graph.u)
    assert np.array_equal(a.graph.v, b.graph.v)
    assert (a.event_budget, a.loops_discarded, a.duplicates_merged) == \
           (b.event_budget, b.loops_discarded, b.duplicates_merged)
