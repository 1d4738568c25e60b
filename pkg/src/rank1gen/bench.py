"""Scaling benchmark: event-driven generation vs the sorted baseline.

Two distinct preprocessing measurements exist, on purpose.

The per-cell numbers in BenchResult come from whole runs: each rep
times preprocessing and generation back to back, so the decomposition
t_total = t_preprocess + t_generate holds rep by rep and the CSV is
self-consistent.

Cross-model preprocessing ratio comparisons need more care. The
preprocessing phases are milliseconds-scale, and on shared machines the
effective memory bandwidth drifts in epochs of seconds to minutes,
which is larger than the asymptotic gap between a linear and an
n log n phase at these sizes. paired_prep_margins therefore measures
all (model, size) preprocessing cells adjacently in time, round-robin,
and aggregates per-round doubling-ratio differences by their median:
drift that is common to one round cancels inside that round's
difference. Medians over whole runs cannot cancel such drift; paired
rounds can.

Weight draws are scaled so the total mass is mean_degree * n, the
sparse regime throughout the sweep. The heavy-tailed law is truncated
at sqrt(total_mass) / log(n) so the hub-control assumption holds along
the sweep; pass untruncated_tail=True to stress the generator outside
its hypotheses.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._backend import get_backend, get_impl
from .errors import BenchError
from .randomness import STREAM_WEIGHTS, RandomStream

KNOWN_MODELS = ("nr-event", "cl-skip", "nr-oracle")
KNOWN_LAWS = ("uniform", "two-block", "pareto")

_ORACLE_SIZE_CAP = 100_000
_PARETO_ALPHA = 2.5
_DEFAULT_PREP_ROUNDS = 48


@dataclass(frozen=True)
class BenchResult:
    """Aggregated medians for one (size, model) cell."""

    n: int
    target_mean_degree: float
    t_preprocess: int
    t_generate: int
    t_total: int
    events: int
    edges: int
    model: str
    law: str
    backend: str
    reps: int


def _tune_allocator() -> None:
    """Disable mmap-backed large allocations and arena trimming.

    Page-fault storms on freshly mapped buffers dominate
    milliseconds-scale timings; keeping the arena hot removes them.
    Process-global and glibc-only; silently skipped elsewhere.
    """
    try:
        import ctypes

        libc = ctypes.CDLL("libc.so.6", use_errno=True)
        libc.mallopt(-3, 1 << 30)  # M_MMAP_THRESHOLD
        libc.mallopt(-1, 1 << 30)  # M_TRIM_THRESHOLD
    except Exception:
        pass


def draw_weights(
    n: int,
    mean_degree: float,
    law: str,
    rng: RandomStream,
    *,
    untruncated_tail: bool = False,
) -> np.ndarray:
    """One weight draw under the named law, scaled to total mass
    mean_degree * n."""
    if law == "uniform":
        return np.full(n, float(mean_degree))
    target = float(mean_degree) * n
    impl = get_impl()
    u = impl.uniform_array(rng.spawn_seed(), n)
    if law == "two-block":
        # 10% of vertices carry 10x the base weight; placement is random
        base = float(mean_degree) / 1.9
        w = np.full(n, base)
        heavy = max(1, n // 10)
        w[np.argpartition(u, heavy - 1)[:heavy]] = 10.0 * base
    elif law == "pareto":
        w = (1.0 - u) ** (-1.0 / _PARETO_ALPHA)
        if not untruncated_tail:
            # hub control must hold on the final scaled weights AND the
            # total mass must stay exact, so clip and rescale to the
            # joint fixed point: w_i = min(s * x_i, cap), sum(w) = target
            cap = float(np.sqrt(target) / np.log(max(n, 3)))
            if cap * n <= target:
                raise BenchError(
                    "mean degree too large for the hub-control truncation "
                    f"at n={n}; raise n or pass untruncated_tail"
                )
            for _ in range(128):
                w *= target / float(w.sum())
                if float(w.max()) <= cap * (1.0 + 1e-12):
                    return w
                np.minimum(w, cap, out=w)
            raise BenchError("hub-control truncation failed to converge")
    else:
        raise BenchError(f"unknown weight law {law!r}")
    w *= target / float(w.sum())
    return w


class _ModelOps:
    """Timed phases for one model; prep returns state for generate."""

    def __init__(self, model: str, impl, presize: bool):
        self.model = model
        self.impl = impl
        self.presize = presize

    def prep(self, values: np.ndarray):
        impl = self.impl
        if self.model == "nr-event":
            total = impl.kahan_sum(values)
            q, a, _ = impl.alias_build(values, total)
            return total, q, a
        if self.model == "cl-skip":
            order = impl.merge_sort_desc(values)
            w_sorted = values[np.asarray(order)]
            return impl.kahan_sum(values), w_sorted, order
        total = impl.kahan_sum(values)  # nr-oracle
        return (total,)

    def generate(self, values: np.ndarray, state, seed: int):
        impl = self.impl
        if self.model == "nr-event":
            total, q, a = state
            u, v, budget, loops, dups = impl.nr_simple_gen(
                q, a, total, seed, self.presize, 0
            )
            return int(budget), int(u.shape[0])
        if self.model == "cl-skip":
            total, w_sorted, order = state
            u, v = impl.cl_scan(w_sorted, order, total, seed)
            return int(u.shape[0]), int(u.shape[0])
        (total,) = state
        u, v = impl.oracle_gen(values, total, seed)
        return int(u.shape[0]), int(u.shape[0])


def _validate_sweep_args(sizes, mean_degree, weight_law, models, reps, threads):
    if threads != 1:
        raise BenchError(
            "timing runs are strictly single-threaded; refusing to parallelize"
        )
    if not sizes:
        raise BenchError("sizes must be nonempty")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise BenchError("sizes must be strictly ascending")
    if not mean_degree > 0.0:
        raise BenchError("mean degree must be positive")
    if weight_law not in KNOWN_LAWS:
        raise BenchError(f"unknown weight law {weight_law!r}")
    if not models:
        raise BenchError("models must be nonempty")
    for m in models:
        if m not in KNOWN_MODELS:
            raise BenchError(f"unknown model {m!r}")
    if "nr-oracle" in models and max(sizes) > _ORACLE_SIZE_CAP:
        raise BenchError(
            f"the pairwise oracle is quadratic; cap sizes at {_ORACLE_SIZE_CAP}"
        )
    if reps < 1:
        raise BenchError("reps must be at least 1")


def run_sweep(
    sizes: Sequence[int],
    mean_degree: float,
    weight_law: str,
    models: Sequence[str],
    reps: int,
    seed: int,
    *,
    presize: bool = True,
    untruncated_tail: bool = False,
    tune_allocator: bool = True,
    backend: Optional[str] = None,
    threads: int = 1,
) -> list[BenchResult]:
    """Median phase timings for every (size, model) cell.

    Every rep draws fresh weights, then times preprocessing and
    generation contiguously. Cells are visited size-major so the sweep
    degrades gracefully if a large cell exhausts memory: the error is
    reported per cell and the sweep continues.
    """
    sizes = [int(s) for s in sizes]
    models = list(models)
    _validate_sweep_args(sizes, mean_degree, weight_law, models, reps, threads)
    if tune_allocator:
        _tune_allocator()
    impl = get_impl(backend) if backend is not None else get_impl()
    backend_name = backend if backend is not None else get_backend()
    master = RandomStream(seed)
    w_rng = master.substream(STREAM_WEIGHTS)

    results: list[BenchResult] = []
    for n in sizes:
        draws = [
            draw_weights(n, mean_degree, weight_law, w_rng.spawn(),
                         untruncated_tail=untruncated_tail)
            for _ in range(reps)
        ]
        for model in models:
            ops = _ModelOps(model, impl, presize)
            preps: list[int] = []
            gens: list[int] = []
            totals: list[int] = []
            events_l: list[int] = []
            edges_l: list[int] = []
            try:
                for r in range(reps):
                    child = master.spawn_seed()
                    values = draws[r]
                    t0 = time.perf_counter_ns()
                    state = ops.prep(values)
                    t1 = time.perf_counter_ns()
                    events, edges = ops.generate(values, state, child)
                    t2 = time.perf_counter_ns()
                    preps.append(t1 - t0)
                    gens.append(t2 - t1)
                    totals.append(t2 - t0)
                    events_l.append(events)
                    edges_l.append(edges)
            except MemoryError as exc:
                # report and keep sweeping; other cells remain valid
                warnings.warn(f"cell n={n} model={model} skipped: {exc}")
                continue
            # report the whole rep whose total is the (lower) median, so
            # t_total == t_preprocess + t_generate holds exactly and every
            # field comes from one actual run
            order = sorted(range(reps), key=lambda r: (totals[r], r))
            mid = order[(reps - 1) // 2]
            if model == "nr-event":
                expect = 0.5 * mean_degree * n
                if abs(events_l[mid] - expect) > 0.05 * expect:
                    raise BenchError(
                        f"event budget sanity failed at n={n}: "
                        f"median rep saw {events_l[mid]} events, "
                        f"expected {expect:.0f}"
                    )
            results.append(
                BenchResult(
                    n=n,
                    target_mean_degree=float(mean_degree),
                    t_preprocess=preps[mid],
                    t_generate=gens[mid],
                    t_total=totals[mid],
                    events=events_l[mid],
                    edges=edges_l[mid],
                    model=model,
                    law=weight_law,
                    backend=backend_name,
                    reps=reps,
                )
            )
    return results


def paired_prep_margins(
    sizes: Sequence[int],
    mean_degree: float,
    weight_law: str,
    seed: int,
    *,
    models: Sequence[str] = ("nr-event", "cl-skip"),
    rounds: int = _DEFAULT_PREP_ROUNDS,
    tune_allocator: bool = True,
    backend: Optional[str] = None,
) -> dict:
    """Preprocessing doubling ratios measured in paired rounds.

    Each round times every (model, size) preprocessing cell once, in a
    fixed adjacent order, and contributes one doubling-ratio sample per
    model per size step plus one ratio-difference sample per step
    between the two models. Returns:

        {"ratios": {model: [median ratio per step]},
         "margins": [median ratio difference per step]}

    where margins[i] > 0 means the second model's preprocessing grew
    faster than the first's on step i. Aggregation is by median across
    rounds, so a bandwidth epoch affecting one stretch of rounds
    cannot flip the verdict.
    """
    sizes = [int(s) for s in sizes]
    models = list(models)
    _validate_sweep_args(sizes, mean_degree, weight_law, models, 1, 1)
    if len(models) != 2:
        raise BenchError("paired margins compare exactly two models")
    if len(sizes) < 2:
        raise BenchError("paired margins need at least two sizes")
    if rounds < 3:
        raise BenchError("rounds must be at least 3")
    if tune_allocator:
        _tune_allocator()
    impl = get_impl(backend) if backend is not None else get_impl()
    master = RandomStream(seed)
    w_rng = master.substream(STREAM_WEIGHTS)
    draws = {n: draw_weights(n, mean_degree, weight_law, w_rng.spawn()) for n in sizes}
    ops = {m: _ModelOps(m, impl, True) for m in models}
    cells = [(m, n) for n in sizes for m in models]

    for m, n in cells:  # first touch warms code paths and the allocator
        ops[m].prep(draws[n])
    samples: dict[tuple[str, int], list[int]] = {c: [] for c in cells}
    for _ in range(rounds):
        for m, n in cells:
            t0 = time.perf_counter_ns()
            ops[m].prep(draws[n])
            samples[(m, n)].append(time.perf_counter_ns() - t0)

    ratios: dict[str, list[float]] = {m: [] for m in models}
    margins: list[float] = []
    for lo, hi in zip(sizes, sizes[1:]):
        per_model: dict[str, list[float]] = {}
        for m in models:
            per_model[m] = [
                b / a for a, b in zip(samples[(m, lo)], samples[(m, hi)])
            ]
            ratios[m].append(statistics.median(per_model[m]))
        diffs = [
            rb - ra for ra, rb in zip(per_model[models[0]], per_model[models[1]])
        ]
        margins.append(statistics.median(diffs))
    return {"ratios": ratios, "margins": margins}


def doubling_ratios(
    results: Sequence[BenchResult], field: str = "t_total"
) -> dict[str, list[float]]:
    """Consecutive-size ratios of one timing field, per model."""
    if field not in ("t_preprocess", "t_generate", "t_total"):
        raise BenchError(f"unknown timing field {field!r}")
    by_model: dict[str, list[BenchResult]] = {}
    for r in results:
        by_model.setdefault(r.model, []).append(r)
    out: dict[str, list[float]] = {}
    for model, rows in by_model.items():
        rows = sorted(rows, key=lambda r: r.n)
        vals = [getattr(r, field) for r in rows]
        out[model] = [b / a for a, b in zip(vals, vals[1:])]
    return out


_CSV_FIELDS = [
    "n", "model", "law", "backend", "reps", "target_mean_degree",
    "t_preprocess", "t_generate", "t_total", "events", "edges",
]


def emit_report(
    results: Sequence[BenchResult],
    csv_path: Optional[str] = None,
    plot_path: Optional[str] = None,
) -> str:
    """Render results as CSV; optionally also a (n, t_total) plot TSV."""
    if not results:
        raise BenchError("no results to report")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in results:
        writer.writerow({k: getattr(r, k) for k in _CSV_FIELDS})
    text = buf.getvalue()
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if plot_path:
        with open(plot_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("model\tn\tt_total_ns\n")
            for r in sorted(results, key=lambda r: (r.model, r.n)):
                fh.write(f"{r.model}\t{r.n}\t{r.t_total}\n")
    return text


def load_results_csv(path: str) -> list[BenchResult]:
    """Inverse of emit_report's CSV; used to recheck ratios offline."""
    out: list[BenchResult] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(
                BenchResult(
                    n=int(row["n"]),
                    target_mean_degree=float(row["target_mean_degree"]),
                    t_preprocess=int(row["t_preprocess"]),
                    t_generate=int(row["t_generate"]),
                    t_total=int(row["t_total"]),
                    events=int(row["events"]),
                    edges=int(row["edges"]),
                    model=row["model"],
                    law=row["law"],
                    backend=row["backend"],
                    reps=int(row["reps"]),
                )
            )
    return out
