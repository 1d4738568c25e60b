"""Weight-sequence ingestion, validation, and diagnostics.

The weight of a vertex is its expected-degree propensity; the sampling
distribution over vertices is weight / total_mass. Total mass is always
computed by compensated summation because the event budget mean is half
the total mass, so any drift in the sum biases every edge count
downstream.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Union

import numpy as np

from ._backend import get_impl
from .errors import DegeneracyError, DomainError, EmptyInputError, ParseError

_WEIGHT_MAGIC = b"RGWT"


@dataclass(frozen=True)
class WeightSequence:
    """Immutable nonnegative vertex weights with cached total mass."""

    values: np.ndarray
    total_mass: float
    n: int

    @staticmethod
    def from_values(values: Iterable[float]) -> "WeightSequence":
        """Validate and freeze a weight vector.

        Zero entries are legal (the vertex is simply never drawn); an
        all-zero vector is not, because the vertex distribution would be
        undefined.
        """
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.float64)
        if arr.ndim != 1:
            raise DomainError("weights must be a one-dimensional sequence")
        if arr.shape[0] == 0:
            raise EmptyInputError("weight sequence is empty")
        if not np.all(np.isfinite(arr)):
            raise DomainError("weights must be finite")
        if np.any(arr < 0.0):
            raise DomainError("weights must be nonnegative")
        if not np.any(arr > 0.0):
            raise DegeneracyError("all weights are zero; vertex distribution undefined")
        arr = arr.copy()
        arr.setflags(write=False)
        total = get_impl().kahan_sum(arr)
        return WeightSequence(values=arr, total_mass=total, n=int(arr.shape[0]))


@dataclass(frozen=True)
class RegularityReport:
    """Diagnostics for the sparse-regime assumptions.

    These are advisory: the underlying conditions are asymptotic, so a
    single finite instance can only be flagged, never rejected. A
    hub_ratio above 1 means a single vertex carries more sampling mass
    than the sparse analysis tolerates.
    """

    total_mass: float
    max_weight: float
    hub_ratio: float
    sum_squares: float
    mean_degree_target: float


def regularity_report(w: WeightSequence) -> RegularityReport:
    """Compute all regularity diagnostics; accepts any valid weights."""
    max_w = float(np.max(w.values))
    return RegularityReport(
        total_mass=w.total_mass,
        max_weight=max_w,
        hub_ratio=max_w / math.sqrt(w.total_mass),
        sum_squares=float(np.dot(w.values, w.values)),
        mean_degree_target=w.total_mass / w.n,
    )


def _load_text(stream: BinaryIO) -> WeightSequence:
    vals: list[float] = []
    saw_content = False
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8", errors="replace").strip()
        if not line or line.startswith("#"):
            continue
        saw_content = True
        try:
            x = float(line)
        except ValueError:
            raise ParseError(f"expected a decimal weight, got {line!r}", lineno) from None
        if not math.isfinite(x):
            raise DomainError("weight must be finite", lineno)
        if x < 0.0:
            raise DomainError(f"negative weight {x!r}", lineno)
        vals.append(x)
    if not saw_content:
        raise EmptyInputError("no weights found in input")
    return WeightSequence.from_values(np.array(vals, dtype=np.float64))


def _load_binary(stream: BinaryIO) -> WeightSequence:
    magic = stream.read(4)
    if magic != _WEIGHT_MAGIC:
        raise ParseError(f"bad magic {magic!r}, expected {_WEIGHT_MAGIC!r}")
    head = stream.read(8)
    if len(head) != 8:
        raise ParseError("truncated header")
    (n,) = struct.unpack("<Q", head)
    if n == 0:
        raise EmptyInputError("binary weight file declares zero vertices")
    payload = stream.read(8 * n)
    if len(payload) != 8 * n:
        raise ParseError(f"expected {8 * n} payload bytes, got {len(payload)}")
    arr = np.frombuffer(payload, dtype="<f8", count=n).astype(np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError("weights must be finite")
    if np.any(arr < 0.0):
        raise DomainError("weights must be nonnegative")
    return WeightSequence.from_values(arr)


def load_weights(source: Union[str, BinaryIO], fmt: str = "text") -> WeightSequence:
    """Read weights from a path or binary stream.

    Text format: one decimal weight per line; blank lines and lines
    starting with '#' are ignored. Binary format: magic 'RGWT', u64
    little-endian count, then that many little-endian f64 values.
    Vertex index equals position in the stream, 0-based.
    """
    if fmt not in ("text", "bin"):
        raise DomainError(f"unknown weight format {fmt!r}")
    if isinstance(source, (str, bytes)):
        with open(source, "rb") as fh:
            return _load_text(fh) if fmt == "text" else _load_binary(fh)
    return _load_text(source) if fmt == "text" else _load_binary(source)


def dump_weights(path: str, w: WeightSequence, fmt: str = "text") -> None:
    """Write weights in either on-disk format (round-trips load_weights)."""
    if fmt == "text":
        with open(path, "w", encoding="utf-8") as fh:
            for x in w.values:
                fh.write(repr(float(x)) + "\n")
    elif fmt == "bin":
        with open(path, "wb") as fh:
            fh.write(_WEIGHT_MAGIC)
            fh.write(struct.pack("<Q", w.n))
            fh.write(np.ascontiguousarray(w.values, dtype="<f8").tobytes())
    else:
        raise DomainError(f"unknown weight format {fmt!r}")
