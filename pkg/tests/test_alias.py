"""Alias table construction and sampling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rank1gen import (
    DegeneracyError,
    RandomStream,
    WeightSequence,
    build_alias,
    dump_alias_tsv,
    reconstruction_error,
    sample_vertex,
)
from rank1gen._backend import get_impl


def test_uniform_weights_self_alias():
    w = WeightSequence.from_values([1.0, 1.0, 1.0])
    t = build_alias(w)
    assert np.array_equal(t.cutoff, [1.0, 1.0, 1.0])
    assert np.array_equal(t.alias, [0, 1, 2])


def test_example_table_shape(fig_weights):
    t = build_alias(fig_weights)
    assert t.n == 5
    assert t.cutoff.shape == (5,)
    assert t.alias.shape == (5,)
    assert np.all(t.cutoff >= 0.0) and np.all(t.cutoff <= 1.0)
    assert np.all(t.alias >= 0) and np.all(t.alias < 5)
    assert not t.cutoff.flags.writeable
    assert not t.alias.flags.writeable


def test_ops_bound(fig_weights):
    t = build_alias(fig_weights)
    assert t.ops <= 4 * fig_weights.n


def test_reconstruction_exact(fig_weights):
    assert reconstruction_error(build_alias(fig_weights), fig_weights) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(min_value=0.01, max_value=100.0), min_size=1, max_size=64))
def test_reconstruction_property(values):
    w = WeightSequence.from_values(values)
    t = build_alias(w)
    assert t.ops <= 4 * w.n
    assert reconstruction_error(t, w) <= 1e-12


def test_zero_mass_rejected():
    w = WeightSequence.from_values([0.0, 1.0])
    bad = WeightSequence(values=w.values, total_mass=0.0, n=2)
    with pytest.raises(DegeneracyError):
        build_alias(bad)


def test_zero_weight_vertex_never_sampled():
    w = WeightSequence.from_values([0.0, 1.0])
    t = build_alias(w)
    rng = RandomStream(3)
    draws = [sample_vertex(t, rng) for _ in range(5000)]
    assert set(draws) == {1}


def test_sample_vertex_frequencies(fig_weights):
    t = build_alias(fig_weights)
    impl = get_impl(None)
    draws = 10**6
    counts = impl.alias_counts(t.cutoff, t.alias, 123, draws)
    probs = fig_weights.values / fig_weights.total_mass
    z = (counts / draws - probs) / np.sqrt(probs * (1 - probs) / draws)
    assert np.max(np.abs(z)) < 5.0


def test_sample_vertex_matches_kernel(fig_weights):
    # same seed, same decision rule: the scalar sampler replays the
    # kernel's picks exactly
    t = build_alias(fig_weights)
    impl = get_impl(None)
    picks = impl.alias_pick_array(t.cutoff, t.alias, 55, 200)
    rng = RandomStream(55)
    replay = [sample_vertex(t, rng) for _ in range(200)]
    assert np.array_equal(picks, replay)


def test_backend_choice_explicit(fig_weights):
    tp = build_alias(fig_weights, backend="pure")
    tc = build_alias(fig_weights, backend="compiled")
    assert tp.cutoff.tobytes() == tc.cutoff.tobytes()
    assert np.array_equal(tp.alias, tc.alias)


def test_dump_tsv(tmp_path, fig_weights):
    t = build_alias(fig_weights)
    p = str(tmp_path / "alias.tsv")
    dump_alias_tsv(p, t)
    lines = open(p).read().splitlines()
    assert lines[0] == "index\tcutoff\talias"
    assert len(lines) == 6
    idx, cutoff, alias = lines[1].split("\t")
    assert idx == "0"
    assert float(cutoff) == t.cutoff[0]
    assert int(alias) == t.alias[0]
