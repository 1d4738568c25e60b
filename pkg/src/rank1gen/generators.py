"""Event-driven graph generation.

One Poisson draw fixes the number of edge events; each event picks two
endpoints independently from the weight distribution via the alias
table. Keeping every event gives the multigraph; discarding loops and
merging duplicates online through a presized hash set gives the simple
graph in O(n + m) expected time. The same temporal scheme with uniform
endpoints yields exact uniform random graphs.

Parallel contract (documented, not implemented here): draw the event
budget once, split it across P workers by a multinomial draw, give each
worker an independent child stream, concatenate the event lists, then
project once. The result is deterministic for a fixed P only, because
the event-to-worker assignment changes with P.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import get_impl, impl_for_size
from .alias import AliasTable, build_alias
from .errors import DegeneracyError, DomainError
from .randomness import RandomStream

# Corruption hooks for negative-control testing. Nonzero values make
# the generator deliberately wrong; they exist so the validation suite
# can demonstrate it catches each failure mode.
CORRUPT_NONE = 0
CORRUPT_BUDGET_HALF = 1
CORRUPT_KEEP_LOOPS = 2
CORRUPT_SKIP_DEDUP = 3

CORRUPT_BY_NAME = {
    "budget-half": CORRUPT_BUDGET_HALF,
    "keep-loops": CORRUPT_KEEP_LOOPS,
    "skip-dedup": CORRUPT_SKIP_DEDUP,
}


@dataclass(frozen=True)
class Multigraph:
    """Flat event list in generation order; loops and duplicates kept.

    Multiplicities are derived on demand, never stored as a matrix: a
    dense n-by-n representation would forfeit the linear-time claim.
    """

    n: int
    u: np.ndarray
    v: np.ndarray

    @property
    def num_events(self) -> int:
        return int(self.u.shape[0])

    def multiplicity(self, i: int, j: int) -> int:
        """Count of events on the unordered pair {i, j}."""
        if i == j:
            return int(np.count_nonzero((self.u == i) & (self.v == i)))
        a = np.count_nonzero((self.u == i) & (self.v == j))
        b = np.count_nonzero((self.u == j) & (self.v == i))
        return int(a + b)

    def degrees(self) -> np.ndarray:
        """Multigraph degrees; a loop adds 2 to its vertex."""
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.u, 1)
        np.add.at(deg, self.v, 1)
        return deg


@dataclass(frozen=True)
class SimpleGraph:
    """Canonical loop-free edge arrays with u < v in every row."""

    n: int
    u: np.ndarray
    v: np.ndarray

    @property
    def num_edges(self) -> int:
        return int(self.u.shape[0])

    def edge_set(self) -> set[tuple[int, int]]:
        """Materialize edges as a set of tuples; small graphs only."""
        return set(zip(self.u.tolist(), self.v.tolist()))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.u, 1)
        np.add.at(deg, self.v, 1)
        return deg


@dataclass(frozen=True)
class GenOutcome:
    """A generated graph plus the run's bookkeeping counters.

    excess_edges == loops_discarded + duplicates_merged always; in
    simple mode it also equals event_budget - num_edges.
    """

    graph: "SimpleGraph | Multigraph"
    event_budget: int
    loops_discarded: int
    duplicates_merged: int
    excess_edges: int


def _resolve_impl(backend: str | None, n: int):
    return get_impl(backend) if backend is not None else impl_for_size(n)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def generate_nr_simple(
    w,
    rng: RandomStream,
    *,
    backend: str | None = None,
    presize: bool = True,
    table: AliasTable | None = None,
    _corrupt: int = CORRUPT_NONE,
) -> GenOutcome:
    """Sample a simple graph whose edges are independent with
    probability 1 - exp(-x_i x_j / total_mass).

    presize=False lets the dedup hash set grow by rehashing instead of
    being sized to the expected event count up front; the output is
    identical, only the running time changes.
    """
    if not (w.total_mass > 0.0):
        raise DegeneracyError("total mass must be positive")
    impl = _resolve_impl(backend, w.n)
    if table is None:
        table = build_alias(w, backend=backend)
    seed = rng.spawn_seed()
    u, v, budget, loops, dups = impl.nr_simple_gen(
        table.cutoff, table.alias, w.total_mass, seed, presize, _corrupt
    )
    graph = SimpleGraph(n=w.n, u=_freeze(u), v=_freeze(v))
    return GenOutcome(
        graph=graph,
        event_budget=int(budget),
        loops_discarded=int(loops),
        duplicates_merged=int(dups),
        excess_edges=int(loops) + int(dups),
    )


def generate_nr_multigraph(
    w,
    rng: RandomStream,
    *,
    backend: str | None = None,
    table: AliasTable | None = None,
) -> GenOutcome:
    """Sample the multigraph stage: every event kept, in draw order."""
    if not (w.total_mass > 0.0):
        raise DegeneracyError("total mass must be positive")
    impl = _resolve_impl(backend, w.n)
    if table is None:
        table = build_alias(w, backend=backend)
    seed = rng.spawn_seed()
    u, v, budget = impl.nr_multi_gen(table.cutoff, table.alias, w.total_mass, seed)
    graph = Multigraph(n=w.n, u=_freeze(u), v=_freeze(v))
    return GenOutcome(
        graph=graph,
        event_budget=int(budget),
        loops_discarded=0,
        duplicates_merged=0,
        excess_edges=0,
    )


def generate_er(
    n: int,
    p: float,
    rng: RandomStream,
    *,
    backend: str | None = None,
    presize: bool = True,
) -> GenOutcome:
    """Sample a uniform random graph with edge probability p.

    The event budget is Poisson with mean -log(1-p) * n^2 / 2; loops
    and duplicate events are discarded, which makes the output law
    exactly the independent-edge law. p = 1 is rejected because the
    required budget diverges; build a complete graph directly instead.
    """
    if n < 1:
        raise DomainError("vertex count must be at least 1")
    if not (0.0 <= p < 1.0):
        raise DomainError("edge probability must satisfy 0 <= p < 1")
    impl = _resolve_impl(backend, n)
    mean_events = -math.log1p(-p) * (float(n) * float(n)) / 2.0
    seed = rng.spawn_seed()
    u, v, budget, loops, dups = impl.er_gen(n, mean_events, seed, presize)
    graph = SimpleGraph(n=n, u=_freeze(u), v=_freeze(v))
    return GenOutcome(
        graph=graph,
        event_budget=int(budget),
        loops_discarded=int(loops),
        duplicates_merged=int(dups),
        excess_edges=int(loops) + int(dups),
    )


def project_simple(mg: Multigraph, *, backend: str | None = None) -> GenOutcome:
    """Erase loops, merge duplicates, canonicalize endpoint order.

    Deterministic and idempotent: projecting a graph that is already
    simple returns it unchanged. First appearance fixes edge order.
    """
    impl = _resolve_impl(backend, mg.n)
    u, v, loops, dups = impl.project_arrays(mg.u, mg.v, mg.n)
    graph = SimpleGraph(n=mg.n, u=_freeze(u), v=_freeze(v))
    return GenOutcome(
        graph=graph,
        event_budget=mg.num_events,
        loops_discarded=int(loops),
        duplicates_merged=int(dups),
        excess_edges=int(loops) + int(dups),
    )
