"""Weight sequence parsing, validation, and summary statistics."""

import io
import math

import numpy as np
import pytest

from rank1gen import (
    DegeneracyError,
    DomainError,
    EmptyInputError,
    ParseError,
    WeightSequence,
    dump_weights,
    load_weights,
    regularity_report,
)


def test_from_values_basic(fig_weights):
    assert fig_weights.n == 5
    assert fig_weights.total_mass == 20.0
    assert fig_weights.values.dtype == np.float64
    assert not fig_weights.values.flags.writeable


def test_from_values_rejections():
    with pytest.raises(EmptyInputError):
        WeightSequence.from_values([])
    with pytest.raises(DomainError):
        WeightSequence.from_values([1.0, -0.5])
    with pytest.raises(DomainError):
        WeightSequence.from_values([1.0, math.nan])
    with pytest.raises(DomainError):
        WeightSequence.from_values([1.0, math.inf])
    with pytest.raises(DomainError):
        WeightSequence.from_values([[1.0, 2.0]])
    with pytest.raises(DegeneracyError):
        WeightSequence.from_values([0.0, 0.0])


def test_zero_weights_permitted():
    w = WeightSequence.from_values([0.0, 0.0, 5.0])
    assert w.total_mass == 5.0
    rep = regularity_report(w)
    assert rep.max_weight == 5.0
    assert rep.hub_ratio == pytest.approx(math.sqrt(5.0))
    assert rep.sum_squares == 25.0
    assert rep.mean_degree_target == pytest.approx(5.0 / 3.0)


def test_regularity_report_values(fig_weights):
    rep = regularity_report(fig_weights)
    assert rep.total_mass == 20.0
    assert rep.max_weight == 7.0
    assert rep.hub_ratio == pytest.approx(7.0 / math.sqrt(20.0))
    assert rep.sum_squares == 106.0
    assert rep.mean_degree_target == 4.0


def test_regularity_report_uniform():
    rep = regularity_report(WeightSequence.from_values([1.0] * 4))
    assert rep.total_mass == 4.0
    assert rep.hub_ratio == 0.5
    assert rep.sum_squares == 4.0
    assert rep.mean_degree_target == 1.0


def test_load_text_stream():
    w = load_weights(io.BytesIO(b"4\n1\n6\n7\n2\n"), "text")
    assert w.n == 5
    assert w.total_mass == 20.0
    assert np.array_equal(w.values, [4, 1, 6, 7, 2])


def test_load_text_comments_and_blanks():
    text = b"# header comment\n4\n\n  1.5\n# tail\n2e0\n"
    w = load_weights(io.BytesIO(text), "text")
    assert np.array_equal(w.values, [4.0, 1.5, 2.0])


def test_load_text_bad_token_reports_line():
    with pytest.raises(ParseError, match="line 3"):
        load_weights(io.BytesIO(b"1\n2\npotato\n"), "text")


def test_load_text_negative_reports_line():
    with pytest.raises(DomainError, match="line 2"):
        load_weights(io.BytesIO(b"1\n-3\n"), "text")


def test_load_text_empty():
    with pytest.raises(EmptyInputError):
        load_weights(io.BytesIO(b"# nothing\n"), "text")


def test_text_round_trip(tmp_path, fig_weights):
    p = str(tmp_path / "w.txt")
    dump_weights(p, fig_weights, "text")
    w = load_weights(p, "text")
    assert np.array_equal(w.values, fig_weights.values)
    assert w.total_mass == fig_weights.total_mass


def test_text_round_trip_preserves_bits(tmp_path):
    vals = np.random.default_rng(0).uniform(0.1, 3.0, size=64)
    w = WeightSequence.from_values(vals)
    p = str(tmp_path / "w.txt")
    dump_weights(p, w, "text")
    # repr emits shortest round-tripping decimal, so bits survive
    assert load_weights(p, "text").values.tobytes() == w.values.tobytes()


def test_binary_round_trip(tmp_path, fig_weights):
    p = str(tmp_path / "w.bin")
    dump_weights(p, fig_weights, "bin")
    w = load_weights(p, "bin")
    assert w.values.tobytes() == fig_weights.values.tobytes()


def test_binary_bad_magic():
    with pytest.raises(ParseError, match="magic"):
        load_weights(io.BytesIO(b"NOPE" + b"\x00" * 16), "bin")


def test_binary_truncated_payload():
    import struct

    blob = b"RGWT" + struct.pack("<Q", 4) + struct.pack("<d", 1.0)
    with pytest.raises(ParseError):
        load_weights(io.BytesIO(blob), "bin")


def test_unknown_format():
    with pytest.raises(DomainError):
        load_weights(io.BytesIO(b"1\n"), "yaml")
