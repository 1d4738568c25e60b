"""Reference generators the event-driven algorithm is checked against.

The pairwise oracle walks every vertex pair and flips an independent
Bernoulli coin, so it is exact by construction and quadratic by
construction; use it up to a few thousand vertices. The edge-skipping
generator is the sorted-scan runtime baseline: per source vertex it
jumps over runs of absent edges with geometric skips, resampling the
skip parameter whenever the current probability changes. Its sort phase
is deliberately a data-independent mergesort so the cost stays
n log n on every input, including constant weights; adaptive library
sorts finish such inputs in linear time, which would quietly remove the
very cost the runtime comparison is about.
"""

from __future__ import annotations

import numpy as np

from ._backend import get_impl, impl_for_size
from .errors import DegeneracyError
from .generators import GenOutcome, SimpleGraph, _freeze
from .randomness import RandomStream
from .weights import WeightSequence


def _resolve_impl(backend, n):
    return get_impl(backend) if backend is not None else impl_for_size(n)


def generate_nr_oracle(
    w: WeightSequence, rng: RandomStream, *, backend: str | None = None
) -> GenOutcome:
    """Exact quadratic sampler: one Bernoulli per vertex pair.

    Edge probability 1 - exp(-x_i x_j / total_mass), identical in law
    to the event-driven simple generator. Intended for n up to ~1e4.
    """
    if not (w.total_mass > 0.0):
        raise DegeneracyError("total mass must be positive")
    impl = _resolve_impl(backend, w.n)
    seed = rng.spawn_seed()
    u, v = impl.oracle_gen(w.values, w.total_mass, seed)
    graph = SimpleGraph(n=w.n, u=_freeze(u), v=_freeze(v))
    return GenOutcome(
        graph=graph,
        event_budget=graph.num_edges,
        loops_discarded=0,
        duplicates_merged=0,
        excess_edges=0,
    )


def prepare_chung_lu(
    w: WeightSequence, *, backend: str | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Sort phase of the edge-skipping baseline.

    Returns (weights descending, original vertex id per rank). Kept
    separate from the scan so the n log n sort cost is attributable in
    benchmarks; generate_chung_lu_skip runs both phases.
    """
    impl = _resolve_impl(backend, w.n)
    order = impl.merge_sort_desc(w.values)
    w_sorted = w.values[np.asarray(order)]
    return w_sorted, np.asarray(order)


def generate_chung_lu_skip(
    w: WeightSequence,
    rng: RandomStream,
    *,
    backend: str | None = None,
    prepared: tuple[np.ndarray, np.ndarray] | None = None,
) -> GenOutcome:
    """Sorted scan with geometric skips over absent edges.

    Edge law: independent with probability min(x_i x_j / total_mass, 1).
    This differs from the event-driven target law at second order; use
    it for runtime comparison and aggregate cross-checks only. The cap
    at 1 is asserted inside the scan.
    """
    if not (w.total_mass > 0.0):
        raise DegeneracyError("total mass must be positive")
    impl = _resolve_impl(backend, w.n)
    if prepared is None:
        prepared = prepare_chung_lu(w, backend=backend)
    w_sorted, order = prepared
    seed = rng.spawn_seed()
    u, v = impl.cl_scan(w_sorted, order, w.total_mass, seed)
    graph = SimpleGraph(n=w.n, u=_freeze(u), v=_freeze(v))
    return GenOutcome(
        graph=graph,
        event_budget=graph.num_edges,
        loops_discarded=0,
        duplicates_merged=0,
        excess_edges=0,
    )
