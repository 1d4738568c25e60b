"""Edge-list serialization round trips and malformed-input handling."""

import io
import struct

import numpy as np
import pytest

from rank1gen import (
    ParseError,
    RandomStream,
    generate_nr_simple,
    read_edges_binary,
    read_edges_text,
    write_edges_binary,
    write_edges_text,
)


def _sample(fig_weights):
    g = generate_nr_simple(fig_weights, RandomStream(7)).graph
    return g.n, g.u, g.v


def test_text_round_trip(tmp_path, fig_weights):
    n, u, v = _sample(fig_weights)
    p = str(tmp_path / "g.txt")
    write_edges_text(p, n, u, v, 7)
    rn, rm, rseed, ru, rv = read_edges_text(p)
    assert (rn, rm, rseed) == (n, len(u), 7)
    assert np.array_equal(ru, u) and np.array_equal(rv, v)


def test_text_header_format(fig_weights):
    n, u, v = _sample(fig_weights)
    buf = io.StringIO()
    write_edges_text(buf, n, u, v, 7)
    lines = buf.getvalue().splitlines()
    assert lines[0] == f"# n={n} m={len(u)} seed=7"
    assert len(lines) == 1 + len(u)
    for line in lines[1:]:
        a, b = line.split("\t")
        assert int(a) < int(b)


def test_text_empty_graph():
    buf = io.StringIO()
    write_edges_text(buf, 4, np.empty(0, np.uint32), np.empty(0, np.uint32), 1)
    n, m, seed, u, v = read_edges_text(io.StringIO(buf.getvalue()))
    assert (n, m, seed) == (4, 0, 1)
    assert u.shape == (0,) and v.shape == (0,)


@pytest.mark.parametrize("text,frag", [
    ("1\t2\n", "header"),
    ("# n=x m=0 seed=0\n", "header"),
    ("# n=3 m=2 seed=0\n0\t1\n", "edges"),
    ("# n=3 m=1 seed=0\n0\t1\n1\t2\n", "edges"),
    ("# n=3 m=1 seed=0\n0;1\n", "line 2"),
    ("# n=3 m=1 seed=0\nx\ty\n", "line 2"),
])
def test_text_malformed(text, frag):
    with pytest.raises(ParseError, match=frag):
        read_edges_text(io.StringIO(text))


def test_binary_round_trip(tmp_path, fig_weights):
    n, u, v = _sample(fig_weights)
    p = str(tmp_path / "g.bin")
    write_edges_binary(p, n, u, v, 7)
    rn, rm, ru, rv = read_edges_binary(p)
    assert (rn, rm) == (n, len(u))
    assert np.array_equal(ru, u) and np.array_equal(rv, v)


def test_binary_layout_narrow():
    u = np.array([0, 1], dtype=np.uint32)
    v = np.array([2, 3], dtype=np.uint32)
    buf = io.BytesIO()
    write_edges_binary(buf, 4, u, v, 9)
    blob = buf.getvalue()
    assert blob[:4] == b"RGEL"
    n, m = struct.unpack_from("<QQ", blob, 4)
    assert (n, m) == (4, 2)
    assert len(blob) == 4 + 16 + 2 * 2 * 4  # magic, header, u32 pairs


def test_binary_wide_indices():
    # vertex ids at or beyond 2^32 force the u64 pair encoding
    big = 2**32
    u = np.array([0], dtype=np.uint64)
    v = np.array([big], dtype=np.uint64)
    buf = io.BytesIO()
    write_edges_binary(buf, big + 1, u, v, 0)
    blob = buf.getvalue()
    assert len(blob) == 4 + 16 + 1 * 2 * 8
    buf.seek(0)
    n, m, ru, rv = read_edges_binary(buf)
    assert n == big + 1 and m == 1
    assert ru[0] == 0 and rv[0] == big


def test_binary_bad_magic():
    with pytest.raises(ParseError, match="magic"):
        read_edges_binary(io.BytesIO(b"XXXX" + b"\x00" * 16))


def test_binary_truncated():
    buf = io.BytesIO()
    write_edges_binary(buf, 4, np.array([0], np.uint32), np.array([1], np.uint32), 0)
    blob = buf.getvalue()
    with pytest.raises(ParseError):
        read_edges_binary(io.BytesIO(blob[:-3]))
    with pytest.raises(ParseError):
        read_edges_binary(io.BytesIO(blob[:10]))
