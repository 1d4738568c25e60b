"""Pure-Python backend: reference implementations of every hot kernel.

This module is the semantic authority for the package's randomized kernels.
The compiled backend (``rank1gen._core``) mirrors each routine here
operation for operation, in the same floating-point evaluation order, so
that both backends produce bit-identical output for identical seeds.  Any
change here must be replicated there (``tests/test_backends.py`` enforces
the pairing).

Everything below works on plain integers, floats, and NumPy arrays; no
state is shared between calls.  Kernels take a raw 64-bit seed, never a
live stream, so a caller can reproduce any run from (seed, call site)
alone.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "pure"

_MASK64 = 0xFFFFFFFFFFFFFFFF

# splitmix64 increment; also used to seed the stream state.
_GOLDEN = 0x9E3779B97F4A7C15

# Distinct salts keep spawned children and fixed substreams from ever
# colliding: derive(seed, SPAWN, k) and derive(seed, SUBSTREAM, k') walk
# disjoint families for any k, k'.
SPAWN_SALT = 0xA0761D6478BD642F
SUBSTREAM_SALT = 0xE7037ED1A0B428DB

# Fixed substream ids: every generator kernel derives its per-purpose
# streams from the run seed with these offsets, so adding draws to one
# phase never perturbs another.
STREAM_BUDGET = 0
STREAM_ENDPOINT = 1
STREAM_PAIRS = 2
STREAM_SKIP = 3
STREAM_WEIGHTS = 4

# Corruption hooks for negative-control testing (see cli --corrupt).
CORRUPT_NONE = 0
CORRUPT_BUDGET_HALF = 1
CORRUPT_KEEP_LOOPS = 2
CORRUPT_SKIP_DEDUP = 3

# Mean at which the Poisson sampler switches from Knuth multiplication to
# transformed rejection; both are exact, the split is purely about speed.
POISSON_SPLIT = 10.0

_INV_2_53 = 1.0 / 9007199254740992.0

# A cutoff within 4 ulp of 1.0 is treated as a full alias bucket.
_FULL_EPS = 4.0 * 2.220446049250313e-16


def mix64(z: int) -> int:
    """Finalizing 64-bit avalanche (splitmix64's output stage)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, salt: int, k: int) -> int:
    """Derive an independent child seed from (seed, salt, k)."""
    return mix64((seed ^ mix64((salt + k) & _MASK64)) & _MASK64)


class Stream:
    """xoshiro256++ generator seeded through a splitmix64 chain.

    Period 2^256 - 1; the raw 64-bit output feeds every other primitive.
    """

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int) -> None:
        sm = seed & _MASK64
        sm = (sm + _GOLDEN) & _MASK64
        self.s0 = mix64(sm)
        sm = (sm + _GOLDEN) & _MASK64
        self.s1 = mix64(sm)
        sm = (sm + _GOLDEN) & _MASK64
        self.s2 = mix64(sm)
        sm = (sm + _GOLDEN) & _MASK64
        self.s3 = mix64(sm)

    def next_u64(self) -> int:
        s0 = self.s0
        s3 = self.s3
        t = (s0 + s3) & _MASK64
        result = ((((t << 23) & _MASK64) | (t >> 41)) + s0) & _MASK64
        s1 = self.s1
        s2 = self.s2
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self.s0 = s0
        self.s1 = s1
        self.s2 = s2
        self.s3 = ((s3 << 45) & _MASK64) | (s3 >> 19)
        return result

    def uniform(self) -> float:
        """Uniform in [0, 1) with 53 significant bits."""
        return (self.next_u64() >> 11) * _INV_2_53

    def index(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection; no modulo bias."""
        rem = ((1 << 64) % n) & _MASK64
        r = self.next_u64()
        while r < rem:
            r = self.next_u64()
        return r % n

    def poisson(self, lam: float) -> int:
        return _poisson(self, lam)


def _poisson_knuth(st: Stream, lam: float) -> int:
    enlam = math.exp(-lam)
    x = 0
    prod = 1.0
    while True:
        prod *= st.uniform()
        if prod > enlam:
            x += 1
        else:
            return x


def _poisson_ptrs(st: Stream, lam: float) -> int:
    # Transformed rejection with squeeze; exact for lam >= 10.
    slam = math.sqrt(lam)
    loglam = math.log(lam)
    b = 0.931 + 2.53 * slam
    a = -0.059 + 0.02483 * b
    invalpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2.0)
    while True:
        u = st.uniform() - 0.5
        v = st.uniform()
        us = 0.5 - abs(u)
        if us <= 0.0:
            continue
        k = math.floor((2.0 * a / us + b) * u + lam + 0.43)
        if us >= 0.07 and v <= vr:
            return int(k)
        if k < 0.0 or (us < 0.013 and v > us):
            continue
        if v <= 0.0:
            return int(k)
        if (
            math.log(v) + math.log(invalpha) - math.log(a / (us * us) + b)
            <= k * loglam - lam - math.lgamma(k + 1.0)
        ):
            return int(k)


def _poisson(st: Stream, lam: float) -> int:
    if lam >= POISSON_SPLIT:
        return _poisson_ptrs(st, lam)
    if lam > 0.0:
        return _poisson_knuth(st, lam)
    return 0


def kahan_sum(values: np.ndarray) -> float:
    """Compensated (Kahan) sum in index order."""
    s = 0.0
    c = 0.0
    for x in values.tolist():
        y = x - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


def alias_build(values: np.ndarray, total_mass: float):
    """Build cutoff/alias tables over buckets of width total_mass/n.

    Returns (cutoff float64[n], alias int64[n], ops) where ops counts
    work-list pushes and pops; ops <= 4n by construction.
    """
    n = int(values.shape[0])
    mu = total_mass / n
    vals = values.tolist()
    q = [0.0] * n
    a = [0] * n
    small: list[int] = []
    large: list[int] = []
    ops = 0
    for i in range(n):
        qi = vals[i] / mu
        q[i] = qi
        if abs(qi - 1.0) <= _FULL_EPS:
            a[i] = i
        elif qi < 1.0:
            small.append(i)
            ops += 1
        else:
            large.append(i)
            ops += 1
    while small and large:
        s = small.pop()
        big = large.pop()
        ops += 2
        a[s] = big
        qb = q[big] - (1.0 - q[s])
        q[big] = qb
        if abs(qb - 1.0) <= _FULL_EPS:
            a[big] = big
        elif qb < 1.0:
            small.append(big)
            ops += 1
        else:
            large.append(big)
            ops += 1
    # Leftovers differ from 1 only by accumulated rounding; treat as full.
    while large:
        big = large.pop()
        ops += 1
        a[big] = big
    while small:
        s = small.pop()
        ops += 1
        a[s] = s
    for i in range(n):
        if q[i] > 1.0:
            q[i] = 1.0
        elif q[i] < 0.0:
            q[i] = 0.0
    return (
        np.array(q, dtype=np.float64),
        np.array(a, dtype=np.int64),
        ops,
    )


def merge_sort_desc(values: np.ndarray) -> np.ndarray:
    """Stable descending order vector via bottom-up mergesort.

    Deliberately data-independent: every level merges full runs, so the
    cost is Theta(n log n) even on constant input.  The edge-skipping
    baseline is characterized by that sort cost, and an adaptive library
    sort would silently collapse it to O(n) on homogeneous weights.
    """
    n = int(values.shape[0])
    vals = values.tolist()
    src = list(range(n))
    dst = [0] * n
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            hi = mid + width
            if mid > n:
                mid = n
            if hi > n:
                hi = n
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                # Descending; ties keep the left run first (stable).
                if vals[src[i]] >= vals[src[j]]:
                    dst[k] = src[i]
                    i += 1
                else:
                    dst[k] = src[j]
                    j += 1
                k += 1
            while i < mid:
                dst[k] = src[i]
                i += 1
                k += 1
            while j < hi:
                dst[k] = src[j]
                j += 1
                k += 1
            lo = hi
        src, dst = dst, src
        width <<= 1
    return np.array(src, dtype=np.int64)


def _edge_dtype(n: int):
    return np.uint32 if n < (1 << 32) else np.uint64


def _alias_pick(st: Stream, q: list, a: list, n: int, rem: int) -> int:
    r = st.next_u64()
    while r < rem:
        r = st.next_u64()
    i = r % n
    u = (st.next_u64() >> 11) * _INV_2_53
    if u <= q[i]:
        return i
    return a[i]


def _nr_simple_run(q, a, n, rem, total_mass, seed, corrupt):
    """One event-driven run over pre-built alias lists.

    Returns (us, vs, budget, loops, dups) with us/vs as Python lists of
    canonical endpoints in insertion order.
    """
    bud = Stream(derive_seed(seed, SUBSTREAM_SALT, STREAM_BUDGET))
    end = Stream(derive_seed(seed, SUBSTREAM_SALT, STREAM_ENDPOINT))
    budget = _poisson(bud, 0.5 * total_mass)
    if corrupt == CORRUPT_BUDGET_HALF:
        budget //= 2
    seen: set[int] = set()
    us: list[int] = []
    vs: list[int] = []
    loops = 0
    dups = 0
    for _ in range(budget):
        u = _alias_pick(end, q, a, n, rem)
        v = _alias_pick(end, q, a, n, rem)
        if u == v:
            if corrupt == CORRUPT_KEEP_LOOPS:
                us.append(u)
                vs.append(v)
            else:
                loops += 1
            continue
        if u < v:
            lo, hi = u, v
        else:
            lo, hi = v, u
        if corrupt == CORRUPT_SKIP_DEDUP:
            us.append(lo)
            vs.append(hi)
            continue
        key = lo * n + hi
        if key in seen:
            dups += 1
        else:
            seen.add(key)
            us.append(lo)
            vs.append(hi)
    return us, vs, budget, loops, dups


def nr_simple_gen(q, a, total_mass, seed, presize=True, corrupt=0):
    """Event-driven simple-graph run; returns (u, v, budget, loops, dups).

    presize is accepted for signature parity with the compiled backend;
    the Python set manages its own capacity.
    """
    n = int(q.shape[0])
    rem = (1 << 64) % n
    us, vs, budget, loops, dups = _nr_simple_run(
        q.tolist(), a.tolist(), n, rem, total_mass, seed, corrupt
    )
    dt = _edge_dtype(n)
    return np.array(us, dtype=dt), np.array(vs, dtype=dt), budget, loops, dups


def nr_multi_gen(q, a, total_mass, seed):
    """Event-driven multigraph run; returns (u, v, budget) in event order."""
    n = int(q.shape[0])
    rem = (1 << 64) % n
    ql = q.tolist()
    al = a.tolist()
    bud = Stream(derive_seed(seed, SUBSTREAM_SALT, STREAM_BUDGET))
    end = Stream(derive_seed(seed, SUBSTREAM_SALT, STREAM_ENDPOINT))
    budget = _poisson(bud, 0.5 * total_mass)
    us = [0] * budget
    vs = [0] * budget
    for r in range(budget):
        us[r] = _alias_pick(end, ql, al, n, rem)
        vs[r] = _alias_pick(end, ql, al, n, rem)
    dt = _edge_dtype(n)
    return np.array(us, dtype=dt), np.array(vs, dtype=dt), budget


def er_gen(n, mean_events, seed, presize=True):
    """Temporal Erdos-Renyi run; returns (u, v, budget, loops, dups)."""
    us, vs, budget, loops, dups = _er_run(n, mean_events, seed)
    dt = _edge_dtype(n)
    return np.array(us, dtype=dt), np.array(vs, dtype=dt), budget, loops, dups


def oracle_gen(values, total_mass, seed):
    """Pairwise Bernoulli sampler; exact by construction, O(n^2) pairs."""
    n = int(values.shape[0])
    st = Stream(derive_seed(seed, SUBSTREAM_SALT, STREAM_PAIRS))
    vals = values.tolist()
    us: list[int] = []
    vs: list[int] = []
    for i in range(n - 1):
        xi = vals[i]
        for j in range(i + 1, n):
            u = (st.next_u64() >> 11) * _INV_2_53
            p = -math.expm1(-(xi * vals[j]) / total_mass)
            if u < p:
                us.append(i)
                vs.append(j)
    dt = _edge_dtype(n)
    return np.array(us, dtype=dt), np.array(vs, dtype=dt)


def _cl_scan_run(w_sorted, order, n, total_mass, seed, collect):
    """Sorted edge-skipping scan over one run.

    w_sorted must be descending; order[rank] is the original vertex id.
    Returns (us, vs, count); us/vs are canonical original-id endpoints
    when collect is true, otherwise empty.
    """
    st = Stream(derive_seed(seed, SUBSTREAM_SALT, STREAM_SKIP))
    us: list[int] = []
    vs: list[int] = []
    count = 0
    for i in range(n - 1):
        wi = w_sorted[i]
        if wi <= 0.0:
            break
        j = i + 1
        p = wi * w_sorted[j] / total_mass
        if p > 1.0:
            p = 1.0
        while j < n and p > 0.0:
            if p < 1.0:
                u = (st.next_u64() >> 11) * _INV_2_53
                skip = math.log1p(-u) / math.log1p(-p)
                if skip >= n - j:
                    j = n
                    break
                j += int(skip)
            q2 = wi * w_sorted[j] / total_mass
            if q2 > 1.0:
                q2 = 1.0
            assert q2 <= p <= 1.0
            u = (st.next_u64() >> 11) * _INV_2_53
            if u < q2 / p:
                count += 1
                if collect:
                    a = order[i]
                    b = order[j]
                    if a > b:
                        a, b = b, a
                    us.append(a)
                    vs.append(b)
            p = q2
            j += 1
    return us, vs, count


def cl_scan(w_sorted, order, total_mass, seed):
    """Edge-skipping run; returns (u, v) canonical pairs in scan order."""
    n = int(w_sorted.shape[0])
    us, vs, _ = _cl_scan_run(
        w_sorted.tolist(), order.tolist(), n, total_mass, seed, True
    )
    dt = _edge_dtype(n)
    return np.array(us, dtype=dt), np.array(vs, dtype=dt)


def project_arrays(eu, ev, n):
    """Erase loops and merge duplicates from event arrays.

    Returns (u, v, loops, dups) preserving first-appearance order.
    """
    seen: set[int] = set()
    us: list[int] = []
    vs: list[int] = []
    loops = 0
    dups = 0
    for u, v in zip(eu.tolist(), ev.tolist()):
        if u == v:
            loops += 1
            continue
        if u < v:
            lo, hi = u, v
        else:
            lo, hi = v, u
        key = lo * n + hi
        if key in seen:
            dups += 1
        else:
            seen.add(key)
            us.append(lo)
            vs.append(hi)
    dt = _edge_dtype(n)
    return np.array(us, dtype=dt), np.array(vs, dtype=dt), loops, dups


def _pair_index(lo, hi, n):
    return lo * (2 * n - lo - 1) // 2 + (hi - lo - 1)


def nr_simple_batch(
    q,
    a,
    total_mass,
    master_seed,
    child_start,
    runs,
    corrupt=0,
    want_pairs=False,
    want_codes=False,
):
    """Aggregate many event-driven runs without storing graphs.

    Run r uses the child seed derive_seed(master_seed, SPAWN_SALT,
    child_start + r), i.e. exactly the r-th sequential spawn, so batch
    totals match a loop of single runs draw for draw.
    """
    n = int(q.shape[0])
    rem = (1 << 64) % n
    ql = q.tolist()
    al = a.tolist()
    npairs = n * (n - 1) // 2
    if want_codes and npairs > 64:
        raise ValueError("graph codes need n*(n-1)/2 <= 64")
    budgets = np.empty(runs, dtype=np.int64)
    loops_arr = np.empty(runs, dtype=np.int64)
    dups_arr = np.empty(runs, dtype=np.int64)
    degree_sums = [0] * n
    pair_counts = [0] * npairs if want_pairs else None
    codes = np.zeros(runs, dtype=np.uint64) if want_codes else None
    for r in range(runs):
        child = derive_seed(master_seed, SPAWN_SALT, child_start + r)
        us, vs, budget, loops, dups = _nr_simple_run(
            ql, al, n, rem, total_mass, child, corrupt
        )
        budgets[r] = budget
        loops_arr[r] = loops
        dups_arr[r] = dups
        code = 0
        for u, v in zip(us, vs):
            degree_sums[u] += 1
            degree_sums[v] += 1
            # Loop events only reach the output under corruption; they
            # have no pair slot.
            if (want_pairs or want_codes) and u != v:
                if u < v:
                    pidx = _pair_index(u, v, n)
                else:
                    pidx = _pair_index(v, u, n)
                if want_pairs:
                    pair_counts[pidx] += 1
                if want_codes:
                    code |= 1 << pidx
        if want_codes:
            codes[r] = code
    out = {
        "budgets": budgets,
        "loops": loops_arr,
        "dups": dups_arr,
        "degree_sums": np.array(degree_sums, dtype=np.int64),
        "pair_counts": (
            np.array(pair_counts, dtype=np.int64) if want_pairs else None
        ),
        "codes": codes,
    }
    return out


def nr_multi_batch(
    q, a, total_mass, master_seed, child_start, runs, want_pairs=False
):
    """Aggregate many multigraph runs; degrees count loops twice."""
    n = int(q.shape[0])
    rem = (1 << 64) % n
    ql = q.tolist()
    al = a.tolist()
    npairs = n * (n - 1) // 2
    budgets = np.empty(runs, dtype=np.int64)
    degree_sums = [0] * n
    pair_counts = [0] * npairs if want_pairs else None
    loop_counts = [0] * n if want_pairs else None
    for r in range(runs):
        child = derive_seed(master_seed, SPAWN_SALT, child_start + r)
        bud = Stream(derive_seed(child, SUBSTREAM_SALT, STREAM_BUDGET))
        end = Stream(derive_seed(child, SUBSTREAM_SALT, STREAM_ENDPOINT))
        budget = _poisson(bud, 0.5 * total_mass)
        budgets[r] = budget
        for _ in range(budget):
            u = _alias_pick(end, ql, al, n, rem)
            v = _alias_pick(end, ql, al, n, rem)
            degree_sums[u] += 1
            degree_sums[v] += 1
            if want_pairs:
                if u == v:
                    loop_counts[u] += 1
                elif u < v:
                    pair_counts[_pair_index(u, v, n)] += 1
                else:
                    pair_counts[_pair_index(v, u, n)] += 1
    return {
        "budgets": budgets,
        "degree_sums": np.array(degree_sums, dtype=np.int64),
        "pair_counts": (
            np.array(pair_counts, dtype=np.int64) if want_pairs else None
        ),
        "loop_counts": (
            np.array(loop_counts, dtype=np.int64) if want_pairs else None
        ),
    }


def er_batch(n, mean_events, master_seed, child_start, runs, want_pairs=False):
    """Aggregate many temporal Erdos-Renyi runs."""
    npairs = n * (n - 1) // 2
    budgets = np.empty(runs, dtype=np.int64)
    loops_arr = np.empty(runs, dtype=np.int64)
    dups_arr = np.empty(runs, dtype=np.int64)
    degree_sums = [0] * n
    pair_counts = [0] * npairs if want_pairs else None
    for r in range(runs):
        child = derive_seed(master_seed, SPAWN_SALT, child_start + r)
        us, vs, budget, loops, dups = _er_run(n, mean_events, child)
        budgets[r] = budget
        loops_arr[r] = loops
        dups_arr[r] = dups
        for u, v in zip(us, vs):
            degree_sums[u] += 1
            degree_sums[v] += 1
            if want_pairs:
                pair_counts[_pair_index(u, v, n)] += 1
    return {
        "budgets": budgets,
        "loops": loops_arr,
        "dups": dups_arr,
        "degree_sums": np.array(degree_sums, dtype=np.int64),
        "pair_counts": (
            np.array(pair_counts, dtype=np.int64) if want_pairs else None
        ),
    }


def _er_run(n, mean_events, seed):
    rem = (1 << 64) % n
    bud = Stream(derive_seed(seed, SUBSTREAM_SALT, STREAM_BUDGET))
    end = Stream(derive_seed(seed, SUBSTREAM_SALT, STREAM_ENDPOINT))
    budget = _poisson(bud, mean_events)
    seen: set[int] = set()
    us: list[int] = []
    vs: list[int] = []
    loops = 0
    dups = 0
    for _ in range(budget):
        r = end.next_u64()
        while r < rem:
            r = end.next_u64()
        u = r % n
        r = end.next_u64()
        while r < rem:
            r = end.next_u64()
        v = r % n
        if u == v:
            loops += 1
            continue
        if u < v:
            lo, hi = u, v
        else:
            lo, hi = v, u
        key = lo * n + hi
        if key in seen:
            dups += 1
        else:
            seen.add(key)
            us.append(lo)
            vs.append(hi)
    return us, vs, budget, loops, dups


def oracle_batch(
    values,
    total_mass,
    master_seed,
    child_start,
    runs,
    want_pairs=False,
    want_codes=False,
):
    """Aggregate many pairwise-Bernoulli runs."""
    n = int(values.shape[0])
    npairs = n * (n - 1) // 2
    if want_codes and npairs > 64:
        raise ValueError("graph codes need n*(n-1)/2 <= 64")
    vals = values.tolist()
    probs = [0.0] * npairs
    idx = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            probs[idx] = -math.expm1(-(vals[i] * vals[j]) / total_mass)
            idx += 1
    edge_counts = np.empty(runs, dtype=np.int64)
    degree_sums = [0] * n
    pair_counts = [0] * npairs if want_pairs else None
    codes = np.zeros(runs, dtype=np.uint64) if want_codes else None
    for r in range(runs):
        child = derive_seed(master_seed, SPAWN_SALT, child_start + r)
        st = Stream(derive_seed(child, SUBSTREAM_SALT, STREAM_PAIRS))
        m = 0
        code = 0
        pidx = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                u = (st.next_u64() >> 11) * _INV_2_53
                if u < probs[pidx]:
                    m += 1
                    degree_sums[i] += 1
                    degree_sums[j] += 1
                    if want_pairs:
                        pair_counts[pidx] += 1
                    if want_codes:
                        code |= 1 << pidx
                pidx += 1
        edge_counts[r] = m
        if want_codes:
            codes[r] = code
    return {
        "edge_counts": edge_counts,
        "degree_sums": np.array(degree_sums, dtype=np.int64),
        "pair_counts": (
            np.array(pair_counts, dtype=np.int64) if want_pairs else None
        ),
        "codes": codes,
    }


def cl_count_batch(w_sorted, total_mass, master_seed, child_start, runs):
    """Edge counts over repeated edge-skipping runs."""
    n = int(w_sorted.shape[0])
    ws = w_sorted.tolist()
    order = list(range(n))
    edge_counts = np.empty(runs, dtype=np.int64)
    for r in range(runs):
        child = derive_seed(master_seed, SPAWN_SALT, child_start + r)
        _, _, count = _cl_scan_run(ws, order, n, total_mass, child, False)
        edge_counts[r] = count
    return {"edge_counts": edge_counts}


def uniform_array(seed, count):
    st = Stream(seed)
    out = np.empty(count, dtype=np.float64)
    for i in range(count):
        out[i] = st.uniform()
    return out


def index_counts(seed, n, draws):
    st = Stream(seed)
    counts = [0] * n
    for _ in range(draws):
        counts[st.index(n)] += 1
    return np.array(counts, dtype=np.int64)


def poisson_array(seed, lam, count):
    st = Stream(seed)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        out[i] = _poisson(st, lam)
    return out


def alias_counts(q, a, seed, draws):
    n = int(q.shape[0])
    rem = (1 << 64) % n
    ql = q.tolist()
    al = a.tolist()
    st = Stream(seed)
    counts = [0] * n
    for _ in range(draws):
        counts[_alias_pick(st, ql, al, n, rem)] += 1
    return np.array(counts, dtype=np.int64)


def alias_pick_array(q, a, seed, count):
    n = int(q.shape[0])
    rem = (1 << 64) % n
    ql = q.tolist()
    al = a.tolist()
    st = Stream(seed)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        out[i] = _alias_pick(st, ql, al, n, rem)
    return out
