"""Edge-list serialization, text and binary.

Text: a header line '# n=<n> m=<m> seed=<seed>' followed by one
'u<TAB>v' row per edge, 0-based. Binary: magic 'RGEL', little-endian
u64 vertex count, u64 edge count, then edge pairs as u32 words, or u64
words once the vertex count needs more than 32 bits. Multigraph event
lists use the same shapes with loops and duplicates retained in
generation order.
"""

from __future__ import annotations

import struct
from typing import BinaryIO, TextIO, Union

import numpy as np

from .errors import ParseError

_EDGE_MAGIC = b"RGEL"
_WIDE_THRESHOLD = 1 << 32


def _pair_dtype(n: int) -> np.dtype:
    return np.dtype("<u8" if n >= _WIDE_THRESHOLD else "<u4")


def write_edges_text(
    dest: Union[str, TextIO], n: int, u: np.ndarray, v: np.ndarray, seed: int
) -> None:
    m = int(u.shape[0])
    if isinstance(dest, str):
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            _write_text(fh, n, m, u, v, seed)
    else:
        _write_text(dest, n, m, u, v, seed)


def _write_text(fh: TextIO, n: int, m: int, u, v, seed: int) -> None:
    fh.write(f"# n={n} m={m} seed={seed}\n")
    ul = u.tolist()
    vl = v.tolist()
    fh.write("".join(f"{a}\t{b}\n" for a, b in zip(ul, vl)))


def write_edges_binary(
    dest: Union[str, BinaryIO], n: int, u: np.ndarray, v: np.ndarray, seed: int
) -> None:
    # seed is not part of the binary layout; the header carries only the
    # structural fields. Callers wanting provenance keep the text form.
    m = int(u.shape[0])
    dt = _pair_dtype(n)
    pairs = np.empty((m, 2), dtype=dt)
    pairs[:, 0] = u
    pairs[:, 1] = v
    blob = _EDGE_MAGIC + struct.pack("<QQ", n, m) + pairs.tobytes()
    if isinstance(dest, str):
        with open(dest, "wb") as fh:
            fh.write(blob)
    else:
        dest.write(blob)


def read_edges_text(src: Union[str, TextIO]):
    """Returns (n, m, seed, u, v); validates the header and row count."""
    if isinstance(src, str):
        with open(src, "r", encoding="utf-8") as fh:
            return _read_text(fh)
    return _read_text(src)


def _read_text(fh: TextIO):
    header = fh.readline()
    parts = header.strip().split()
    if len(parts) != 4 or parts[0] != "#":
        raise ParseError(f"bad header {header!r}", 1)
    try:
        n = int(parts[1].removeprefix("n="))
        m = int(parts[2].removeprefix("m="))
        seed = int(parts[3].removeprefix("seed="))
    except ValueError:
        raise ParseError(f"bad header {header!r}", 1) from None
    dt = _pair_dtype(n)
    u = np.empty(m, dtype=dt)
    v = np.empty(m, dtype=dt)
    count = 0
    for lineno, raw in enumerate(fh, start=2):
        line = raw.strip()
        if not line:
            continue
        if count >= m:
            raise ParseError("more edges than the header declares", lineno)
        try:
            a, b = line.split("\t")
            u[count] = int(a)
            v[count] = int(b)
        except ValueError:
            raise ParseError(f"bad edge row {line!r}", lineno) from None
        count += 1
    if count != m:
        raise ParseError(f"header declares m={m} but file has {count} edges")
    return n, m, seed, u, v


def read_edges_binary(src: Union[str, BinaryIO]):
    """Returns (n, m, u, v)."""
    if isinstance(src, str):
        with open(src, "rb") as fh:
            return _read_binary(fh)
    return _read_binary(src)


def _read_binary(fh: BinaryIO):
    magic = fh.read(4)
    if magic != _EDGE_MAGIC:
        raise ParseError(f"bad magic {magic!r}, expected {_EDGE_MAGIC!r}")
    head = fh.read(16)
    if len(head) != 16:
        raise ParseError("truncated header")
    n, m = struct.unpack("<QQ", head)
    dt = _pair_dtype(n)
    payload = fh.read(2 * m * dt.itemsize)
    if len(payload) != 2 * m * dt.itemsize:
        raise ParseError("truncated edge payload")
    pairs = np.frombuffer(payload, dtype=dt).reshape(m, 2)
    return int(n), int(m), pairs[:, 0].copy(), pairs[:, 1].copy()
