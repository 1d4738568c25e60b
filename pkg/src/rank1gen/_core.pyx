# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
# cython: initializedcheck=False
"""Compiled backend: C implementations of every hot kernel.

Mirrors ``rank1gen._pure`` operation for operation, in the same
floating-point evaluation order, so both backends produce bit-identical
output for identical seeds.  The build pins ``-ffp-contract=off`` and no
fast-math so the C compiler cannot reassociate or fuse what Python will
not.  Any change here must be replicated in ``_pure`` and vice versa.
"""

from libc.math cimport exp, expm1, fabs, floor, lgamma, log, log1p, sqrt
from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.stdlib cimport free, malloc
import numpy as np

BACKEND_NAME = "compiled"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15
cdef uint64_t C_SPAWN_SALT = 0xA0761D6478BD642F
cdef uint64_t C_SUBSTREAM_SALT = 0xE7037ED1A0B428DB
cdef uint64_t EMPTY_KEY = 0xFFFFFFFFFFFFFFFF

SPAWN_SALT = 0xA0761D6478BD642F
SUBSTREAM_SALT = 0xE7037ED1A0B428DB

STREAM_BUDGET = 0
STREAM_ENDPOINT = 1
STREAM_PAIRS = 2
STREAM_SKIP = 3
STREAM_WEIGHTS = 4

CORRUPT_NONE = 0
CORRUPT_BUDGET_HALF = 1
CORRUPT_KEEP_LOOPS = 2
CORRUPT_SKIP_DEDUP = 3

POISSON_SPLIT = 10.0

cdef double INV_2_53 = 1.0 / 9007199254740992.0
cdef double FULL_EPS = 4.0 * 2.220446049250313e-16

cdef int C_BUDGET = 0
cdef int C_ENDPOINT = 1
cdef int C_PAIRS = 2
cdef int C_SKIP = 3

cdef int CC_BUDGET_HALF = 1
cdef int CC_KEEP_LOOPS = 2
cdef int CC_SKIP_DEDUP = 3


# ---------------------------------------------------------------------
# random stream


cdef struct XS:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3


cdef inline uint64_t _mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline uint64_t _derive(uint64_t seed, uint64_t salt, uint64_t k) noexcept nogil:
    return _mix64(seed ^ _mix64(salt + k))


cdef inline void _seed_stream(XS* st, uint64_t seed) noexcept nogil:
    cdef uint64_t sm = seed
    sm = sm + GOLDEN
    st.s0 = _mix64(sm)
    sm = sm + GOLDEN
    st.s1 = _mix64(sm)
    sm = sm + GOLDEN
    st.s2 = _mix64(sm)
    sm = sm + GOLDEN
    st.s3 = _mix64(sm)


cdef inline uint64_t _next_u64(XS* st) noexcept nogil:
    cdef uint64_t s0 = st.s0
    cdef uint64_t s1 = st.s1
    cdef uint64_t s2 = st.s2
    cdef uint64_t s3 = st.s3
    cdef uint64_t t = s0 + s3
    cdef uint64_t result = ((t << 23) | (t >> 41)) + s0
    t = s1 << 17
    s2 = s2 ^ s0
    s3 = s3 ^ s1
    s1 = s1 ^ s2
    s0 = s0 ^ s3
    s2 = s2 ^ t
    st.s0 = s0
    st.s1 = s1
    st.s2 = s2
    st.s3 = (s3 << 45) | (s3 >> 19)
    return result


cdef inline double _unif(XS* st) noexcept nogil:
    return <double>(_next_u64(st) >> 11) * INV_2_53


cdef inline uint64_t _index(XS* st, uint64_t n) noexcept nogil:
    cdef uint64_t rem = (<uint64_t>0 - n) % n
    cdef uint64_t r = _next_u64(st)
    while r < rem:
        r = _next_u64(st)
    return r % n


cdef int64_t _poisson_knuth(XS* st, double lam) noexcept nogil:
    cdef double enlam = exp(-lam)
    cdef int64_t x = 0
    cdef double prod = 1.0
    while True:
        prod = prod * _unif(st)
        if prod > enlam:
            x = x + 1
        else:
            return x


cdef int64_t _poisson_ptrs(XS* st, double lam) noexcept nogil:
    cdef double slam = sqrt(lam)
    cdef double loglam = log(lam)
    cdef double b = 0.931 + 2.53 * slam
    cdef double a = -0.059 + 0.02483 * b
    cdef double invalpha = 1.1239 + 1.1328 / (b - 3.4)
    cdef double vr = 0.9277 - 3.6224 / (b - 2.0)
    cdef double u, v, us, k
    while True:
        u = _unif(st) - 0.5
        v = _unif(st)
        us = 0.5 - fabs(u)
        if us <= 0.0:
            continue
        k = floor((2.0 * a / us + b) * u + lam + 0.43)
        if us >= 0.07 and v <= vr:
            return <int64_t>k
        if k < 0.0 or (us < 0.013 and v > us):
            continue
        if v <= 0.0:
            return <int64_t>k
        if (
            log(v) + log(invalpha) - log(a / (us * us) + b)
            <= k * loglam - lam - lgamma(k + 1.0)
        ):
            return <int64_t>k


cdef inline int64_t _poisson(XS* st, double lam) noexcept nogil:
    if lam >= 10.0:
        return _poisson_ptrs(st, lam)
    if lam > 0.0:
        return _poisson_knuth(st, lam)
    return 0


cdef class Stream:
    """xoshiro256++ stream; single-draw interface for the wrapper layer."""

    cdef XS st

    def __init__(self, seed):
        _seed_stream(&self.st, <uint64_t>seed)

    def next_u64(self):
        return _next_u64(&self.st)

    def uniform(self):
        return _unif(&self.st)

    def index(self, n):
        return _index(&self.st, <uint64_t>n)

    def poisson(self, lam):
        return _poisson(&self.st, <double>lam)


def mix64(z):
    return _mix64(<uint64_t>z)


def derive_seed(seed, salt, k):
    return _derive(<uint64_t>seed, <uint64_t>salt, <uint64_t>k)


# ---------------------------------------------------------------------
# summation, alias tables, baseline sort


def kahan_sum(values):
    cdef const double[::1] mv = np.ascontiguousarray(values, dtype=np.float64)
    cdef double s = 0.0
    cdef double c = 0.0
    cdef double x, y, t
    cdef int64_t i, n = mv.shape[0]
    with nogil:
        for i in range(n):
            x = mv[i]
            y = x - c
            t = s + y
            c = (t - s) - y
            s = t
    return s


def alias_build(values, double total_mass):
    cdef const double[::1] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef int64_t n = vals.shape[0]
    q_arr = np.empty(n, dtype=np.float64)
    a_arr = np.empty(n, dtype=np.int64)
    cdef double[::1] q = q_arr
    cdef int64_t[::1] a = a_arr
    cdef double mu = total_mass / <double>n
    cdef int64_t ns = 0, nl = 0, ops = 0
    cdef int64_t i, s, big
    cdef double qi, qb
    # Classify first and size the work stacks exactly; homogeneous
    # weights then never touch the allocator.
    with nogil:
        for i in range(n):
            qi = vals[i] / mu
            q[i] = qi
            if fabs(qi - 1.0) <= FULL_EPS:
                a[i] = i
            elif qi < 1.0:
                ns += 1
            else:
                nl += 1
    cdef int64_t* small = NULL
    cdef int64_t* large = NULL
    if ns > 0:
        small = <int64_t*>malloc(ns * sizeof(int64_t))
    if nl > 0:
        large = <int64_t*>malloc(nl * sizeof(int64_t))
    if (ns > 0 and small == NULL) or (nl > 0 and large == NULL):
        free(small)
        free(large)
        raise MemoryError
    ns = 0
    nl = 0
    with nogil:
        for i in range(n):
            qi = q[i]
            if fabs(qi - 1.0) <= FULL_EPS:
                pass
            elif qi < 1.0:
                small[ns] = i
                ns += 1
                ops += 1
            else:
                large[nl] = i
                nl += 1
                ops += 1
        while ns > 0 and nl > 0:
            ns -= 1
            s = small[ns]
            nl -= 1
            big = large[nl]
            ops += 2
            a[s] = big
            qb = q[big] - (1.0 - q[s])
            q[big] = qb
            if fabs(qb - 1.0) <= FULL_EPS:
                a[big] = big
            elif qb < 1.0:
                small[ns] = big
                ns += 1
                ops += 1
            else:
                large[nl] = big
                nl += 1
                ops += 1
        while nl > 0:
            nl -= 1
            big = large[nl]
            ops += 1
            a[big] = big
        while ns > 0:
            ns -= 1
            s = small[ns]
            ops += 1
            a[s] = s
        for i in range(n):
            if q[i] > 1.0:
                q[i] = 1.0
            elif q[i] < 0.0:
                q[i] = 0.0
    free(small)
    free(large)
    return q_arr, a_arr, ops


def merge_sort_desc(values):
    """Stable descending order vector via bottom-up mergesort.

    Data-independent on purpose: the edge-skipping baseline is
    characterized by a Theta(n log n) sort phase, which an adaptive
    library sort would collapse to O(n) on homogeneous weights.
    """
    cdef const double[::1] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef int64_t n = vals.shape[0]
    a_buf = np.arange(n, dtype=np.int64)
    b_buf = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] src = a_buf
    cdef int64_t[::1] dst = b_buf
    cdef int64_t[::1] tmp
    cdef int64_t width = 1, lo, mid, hi, i, j, k
    cdef bint in_a = True
    with nogil:
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
            tmp = src
            src = dst
            dst = tmp
            in_a = not in_a
            width = width << 1
    return a_buf if in_a else b_buf


cdef inline int64_t _alias_pick(
    XS* st, const double* q, const int64_t* a, uint64_t n, uint64_t rem
) noexcept nogil:
    cdef uint64_t r = _next_u64(st)
    while r < rem:
        r = _next_u64(st)
    cdef uint64_t i = r % n
    cdef double u = <double>(_next_u64(st) >> 11) * INV_2_53
    if u <= q[i]:
        return <int64_t>i
    return a[i]


# ---------------------------------------------------------------------
# hash sets: plain (single run) and epoch-tagged (batch reuse)


cdef struct HSet:
    uint64_t* keys
    uint64_t mask
    uint64_t size
    uint64_t limit


cdef inline uint64_t _cap_for(double expected, bint presize) noexcept nogil:
    cdef uint64_t cap = 16
    cdef double want
    if presize:
        want = 1.3 * expected
        while <double>cap < want:
            cap = cap << 1
    return cap


cdef int _hs_init(HSet* hs, uint64_t cap) noexcept nogil:
    cdef uint64_t i
    hs.keys = <uint64_t*>malloc(cap * sizeof(uint64_t))
    if hs.keys == NULL:
        return -1
    for i in range(cap):
        hs.keys[i] = EMPTY_KEY
    hs.mask = cap - 1
    hs.size = 0
    hs.limit = cap - (cap >> 3)
    return 0


cdef int _hs_grow(HSet* hs) noexcept nogil:
    cdef uint64_t old_cap = hs.mask + 1
    cdef uint64_t cap = old_cap << 1
    cdef uint64_t* old_keys = hs.keys
    cdef uint64_t i, key, idx
    hs.keys = <uint64_t*>malloc(cap * sizeof(uint64_t))
    if hs.keys == NULL:
        hs.keys = old_keys
        return -1
    for i in range(cap):
        hs.keys[i] = EMPTY_KEY
    hs.mask = cap - 1
    hs.limit = cap - (cap >> 3)
    for i in range(old_cap):
        key = old_keys[i]
        if key != EMPTY_KEY:
            idx = _mix64(key) & hs.mask
            while hs.keys[idx] != EMPTY_KEY:
                idx = (idx + 1) & hs.mask
            hs.keys[idx] = key
    free(old_keys)
    return 0


cdef int _hs_insert(HSet* hs, uint64_t key) noexcept nogil:
    """1 if newly inserted, 0 if present, -1 on allocation failure."""
    cdef uint64_t idx = _mix64(key) & hs.mask
    cdef uint64_t k
    while True:
        k = hs.keys[idx]
        if k == EMPTY_KEY:
            break
        if k == key:
            return 0
        idx = (idx + 1) & hs.mask
    if hs.size >= hs.limit:
        if _hs_grow(hs) != 0:
            return -1
        idx = _mix64(key) & hs.mask
        while hs.keys[idx] != EMPTY_KEY:
            idx = (idx + 1) & hs.mask
    hs.keys[idx] = key
    hs.size += 1
    return 1


cdef struct ESet:
    uint64_t* keys
    int64_t* mark
    uint64_t mask
    uint64_t size
    uint64_t limit


cdef int _es_init(ESet* es, uint64_t cap) noexcept nogil:
    cdef uint64_t i
    es.keys = <uint64_t*>malloc(cap * sizeof(uint64_t))
    es.mark = <int64_t*>malloc(cap * sizeof(int64_t))
    if es.keys == NULL or es.mark == NULL:
        free(es.keys)
        free(es.mark)
        return -1
    for i in range(cap):
        es.mark[i] = -1
    es.mask = cap - 1
    es.size = 0
    es.limit = cap - (cap >> 3)
    return 0


cdef int _es_grow(ESet* es, int64_t epoch) noexcept nogil:
    # Only current-epoch entries survive; older runs are already summed.
    cdef uint64_t old_cap = es.mask + 1
    cdef uint64_t cap = old_cap << 1
    cdef uint64_t* old_keys = es.keys
    cdef int64_t* old_mark = es.mark
    cdef uint64_t i, key, idx
    es.keys = <uint64_t*>malloc(cap * sizeof(uint64_t))
    es.mark = <int64_t*>malloc(cap * sizeof(int64_t))
    if es.keys == NULL or es.mark == NULL:
        free(es.keys)
        free(es.mark)
        es.keys = old_keys
        es.mark = old_mark
        return -1
    for i in range(cap):
        es.mark[i] = -1
    es.mask = cap - 1
    es.limit = cap - (cap >> 3)
    for i in range(old_cap):
        if old_mark[i] == epoch:
            key = old_keys[i]
            idx = _mix64(key) & es.mask
            while es.mark[idx] == epoch:
                idx = (idx + 1) & es.mask
            es.keys[idx] = key
            es.mark[idx] = epoch
    free(old_keys)
    free(old_mark)
    return 0


cdef int _es_insert(ESet* es, uint64_t key, int64_t epoch) noexcept nogil:
    cdef uint64_t idx = _mix64(key) & es.mask
    while es.mark[idx] == epoch:
        if es.keys[idx] == key:
            return 0
        idx = (idx + 1) & es.mask
    if es.size >= es.limit:
        if _es_grow(es, epoch) != 0:
            return -1
        idx = _mix64(key) & es.mask
        while es.mark[idx] == epoch:
            idx = (idx + 1) & es.mask
    es.keys[idx] = key
    es.mark[idx] = epoch
    es.size += 1
    return 1


# ---------------------------------------------------------------------
# single-run generation kernels


def nr_simple_gen(
    q,
    a,
    double total_mass,
    seed,
    bint presize=True,
    int corrupt=0,
):
    cdef const double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef uint64_t n = <uint64_t>qv.shape[0]
    if n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef uint64_t sd = <uint64_t>seed
    cdef uint64_t rem = (<uint64_t>0 - n) % n
    cdef XS bud, end
    _seed_stream(&bud, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_BUDGET))
    _seed_stream(&end, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_ENDPOINT))
    cdef int64_t budget = _poisson(&bud, 0.5 * total_mass)
    if corrupt == CC_BUDGET_HALF:
        budget = budget // 2
    u_arr = np.empty(budget, dtype=np.uint32)
    v_arr = np.empty(budget, dtype=np.uint32)
    cdef uint32_t[::1] mu = u_arr
    cdef uint32_t[::1] mv = v_arr
    cdef HSet hs
    if _hs_init(&hs, _cap_for(0.5 * total_mass, presize)) != 0:
        raise MemoryError
    cdef int64_t m = 0, loops = 0, dups = 0
    cdef int64_t idx, u, v, lo, hi
    cdef int ins, err = 0
    with nogil:
        for idx in range(budget):
            u = _alias_pick(&end, &qv[0], &av[0], n, rem)
            v = _alias_pick(&end, &qv[0], &av[0], n, rem)
            if u == v:
                if corrupt == CC_KEEP_LOOPS:
                    mu[m] = <uint32_t>u
                    mv[m] = <uint32_t>v
                    m += 1
                else:
                    loops += 1
                continue
            if u < v:
                lo = u
                hi = v
            else:
                lo = v
                hi = u
            if corrupt == CC_SKIP_DEDUP:
                mu[m] = <uint32_t>lo
                mv[m] = <uint32_t>hi
                m += 1
                continue
            ins = _hs_insert(&hs, <uint64_t>lo * n + <uint64_t>hi)
            if ins < 0:
                err = 1
                break
            if ins:
                mu[m] = <uint32_t>lo
                mv[m] = <uint32_t>hi
                m += 1
            else:
                dups += 1
    free(hs.keys)
    if err:
        raise MemoryError
    return u_arr[:m], v_arr[:m], budget, loops, dups


def nr_multi_gen(q, a, double total_mass, seed):
    cdef const double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef uint64_t n = <uint64_t>qv.shape[0]
    if n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef uint64_t sd = <uint64_t>seed
    cdef uint64_t rem = (<uint64_t>0 - n) % n
    cdef XS bud, end
    _seed_stream(&bud, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_BUDGET))
    _seed_stream(&end, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_ENDPOINT))
    cdef int64_t budget = _poisson(&bud, 0.5 * total_mass)
    u_arr = np.empty(budget, dtype=np.uint32)
    v_arr = np.empty(budget, dtype=np.uint32)
    cdef uint32_t[::1] mu = u_arr
    cdef uint32_t[::1] mv = v_arr
    cdef int64_t idx
    with nogil:
        for idx in range(budget):
            mu[idx] = <uint32_t>_alias_pick(&end, &qv[0], &av[0], n, rem)
            mv[idx] = <uint32_t>_alias_pick(&end, &qv[0], &av[0], n, rem)
    return u_arr, v_arr, budget


def er_gen(n_vertices, double mean_events, seed, bint presize=True):
    cdef uint64_t n = <uint64_t>n_vertices
    if n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef uint64_t sd = <uint64_t>seed
    cdef uint64_t rem = (<uint64_t>0 - n) % n
    cdef XS bud, end
    _seed_stream(&bud, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_BUDGET))
    _seed_stream(&end, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_ENDPOINT))
    cdef int64_t budget = _poisson(&bud, mean_events)
    u_arr = np.empty(budget, dtype=np.uint32)
    v_arr = np.empty(budget, dtype=np.uint32)
    cdef uint32_t[::1] mu = u_arr
    cdef uint32_t[::1] mv = v_arr
    cdef HSet hs
    if _hs_init(&hs, _cap_for(mean_events, presize)) != 0:
        raise MemoryError
    cdef int64_t m = 0, loops = 0, dups = 0
    cdef int64_t idx, u, v, lo, hi
    cdef int ins, err = 0
    with nogil:
        for idx in range(budget):
            u = <int64_t>_index(&end, n)
            v = <int64_t>_index(&end, n)
            if u == v:
                loops += 1
                continue
            if u < v:
                lo = u
                hi = v
            else:
                lo = v
                hi = u
            ins = _hs_insert(&hs, <uint64_t>lo * n + <uint64_t>hi)
            if ins < 0:
                err = 1
                break
            if ins:
                mu[m] = <uint32_t>lo
                mv[m] = <uint32_t>hi
                m += 1
            else:
                dups += 1
    free(hs.keys)
    if err:
        raise MemoryError
    return u_arr[:m], v_arr[:m], budget, loops, dups


def oracle_gen(values, double total_mass, seed):
    cdef const double[::1] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef int64_t n = vals.shape[0]
    if <uint64_t>n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef uint64_t sd = <uint64_t>seed
    cdef XS st
    cdef int64_t m = 0, i, j
    cdef double xi, u, p
    # Pass one counts; pass two replays the identical stream and fills.
    _seed_stream(&st, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_PAIRS))
    with nogil:
        for i in range(n - 1):
            xi = vals[i]
            for j in range(i + 1, n):
                u = <double>(_next_u64(&st) >> 11) * INV_2_53
                p = -expm1(-(xi * vals[j]) / total_mass)
                if u < p:
                    m += 1
    u_arr = np.empty(m, dtype=np.uint32)
    v_arr = np.empty(m, dtype=np.uint32)
    cdef uint32_t[::1] mu = u_arr
    cdef uint32_t[::1] mv = v_arr
    cdef int64_t k = 0
    _seed_stream(&st, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_PAIRS))
    with nogil:
        for i in range(n - 1):
            xi = vals[i]
            for j in range(i + 1, n):
                u = <double>(_next_u64(&st) >> 11) * INV_2_53
                p = -expm1(-(xi * vals[j]) / total_mass)
                if u < p:
                    mu[k] = <uint32_t>i
                    mv[k] = <uint32_t>j
                    k += 1
    return u_arr, v_arr


cdef int64_t _cl_pass(
    XS* st,
    const double* w,
    const int64_t* order,
    int64_t n,
    double total_mass,
    uint32_t* out_u,
    uint32_t* out_v,
    bint collect,
    int* err,
) noexcept nogil:
    cdef int64_t count = 0
    cdef int64_t i, j, a, b
    cdef double wi, p, q2, u, skip
    for i in range(n - 1):
        wi = w[i]
        if wi <= 0.0:
            break
        j = i + 1
        p = wi * w[j] / total_mass
        if p > 1.0:
            p = 1.0
        while j < n and p > 0.0:
            if p < 1.0:
                u = <double>(_next_u64(st) >> 11) * INV_2_53
                skip = log1p(-u) / log1p(-p)
                if skip >= <double>(n - j):
                    j = n
                    break
                j = j + <int64_t>skip
            q2 = wi * w[j] / total_mass
            if q2 > 1.0:
                q2 = 1.0
            if q2 > p:
                err[0] = 1
                return count
            u = <double>(_next_u64(st) >> 11) * INV_2_53
            if u < q2 / p:
                if collect:
                    a = order[i]
                    b = order[j]
                    if a > b:
                        a = order[j]
                        b = order[i]
                    out_u[count] = <uint32_t>a
                    out_v[count] = <uint32_t>b
                count += 1
            p = q2
            j += 1
    return count


def cl_scan(w_sorted, order, double total_mass, seed):
    cdef const double[::1] wv = np.ascontiguousarray(w_sorted, dtype=np.float64)
    cdef const int64_t[::1] ov = np.ascontiguousarray(order, dtype=np.int64)
    cdef int64_t n = wv.shape[0]
    if <uint64_t>n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef uint64_t sd = <uint64_t>seed
    cdef XS st
    cdef int err = 0
    _seed_stream(&st, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_SKIP))
    cdef int64_t m
    with nogil:
        m = _cl_pass(&st, &wv[0], &ov[0], n, total_mass, NULL, NULL, False, &err)
    if err:
        raise RuntimeError("edge-skipping probabilities must be nonincreasing")
    u_arr = np.empty(m, dtype=np.uint32)
    v_arr = np.empty(m, dtype=np.uint32)
    cdef uint32_t[::1] mu = u_arr
    cdef uint32_t[::1] mv = v_arr
    _seed_stream(&st, _derive(sd, C_SUBSTREAM_SALT, <uint64_t>C_SKIP))
    cdef uint32_t* up = NULL
    cdef uint32_t* vp = NULL
    if m > 0:
        up = &mu[0]
        vp = &mv[0]
    with nogil:
        _cl_pass(&st, &wv[0], &ov[0], n, total_mass, up, vp, True, &err)
    if err:
        raise RuntimeError("edge-skipping probabilities must be nonincreasing")
    return u_arr, v_arr


def project_arrays(eu, ev, n_vertices):
    cdef const uint32_t[::1] uv = np.ascontiguousarray(eu, dtype=np.uint32)
    cdef const uint32_t[::1] vv = np.ascontiguousarray(ev, dtype=np.uint32)
    cdef uint64_t n = <uint64_t>n_vertices
    if n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef int64_t events = uv.shape[0]
    u_arr = np.empty(events, dtype=np.uint32)
    v_arr = np.empty(events, dtype=np.uint32)
    cdef uint32_t[::1] mu = u_arr
    cdef uint32_t[::1] mv = v_arr
    cdef HSet hs
    if _hs_init(&hs, _cap_for(<double>events, True)) != 0:
        raise MemoryError
    cdef int64_t m = 0, loops = 0, dups = 0
    cdef int64_t idx, u, v, lo, hi
    cdef int ins, err = 0
    with nogil:
        for idx in range(events):
            u = <int64_t>uv[idx]
            v = <int64_t>vv[idx]
            if u == v:
                loops += 1
                continue
            if u < v:
                lo = u
                hi = v
            else:
                lo = v
                hi = u
            ins = _hs_insert(&hs, <uint64_t>lo * n + <uint64_t>hi)
            if ins < 0:
                err = 1
                break
            if ins:
                mu[m] = <uint32_t>lo
                mv[m] = <uint32_t>hi
                m += 1
            else:
                dups += 1
    free(hs.keys)
    if err:
        raise MemoryError
    return u_arr[:m], v_arr[:m], loops, dups


# ---------------------------------------------------------------------
# batch kernels (aggregate many runs without materializing graphs)


cdef inline int64_t _pair_index(int64_t lo, int64_t hi, int64_t n) noexcept nogil:
    return lo * (2 * n - lo - 1) // 2 + (hi - lo - 1)


def nr_simple_batch(
    q,
    a,
    double total_mass,
    master_seed,
    child_start,
    int64_t runs,
    int corrupt=0,
    bint want_pairs=False,
    bint want_codes=False,
):
    cdef const double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef int64_t n = qv.shape[0]
    if <uint64_t>n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef int64_t npairs = n * (n - 1) // 2
    if want_codes and npairs > 64:
        raise ValueError("graph codes need n*(n-1)/2 <= 64")
    if want_pairs and npairs > 100_000_000:
        raise ValueError("per-pair accounting too large")
    cdef uint64_t ms = <uint64_t>master_seed
    cdef uint64_t cs = <uint64_t>child_start
    cdef uint64_t un = <uint64_t>n
    cdef uint64_t rem = (<uint64_t>0 - un) % un
    budgets = np.empty(runs, dtype=np.int64)
    loops_arr = np.empty(runs, dtype=np.int64)
    dups_arr = np.empty(runs, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    pairs = np.zeros(npairs if want_pairs else 1, dtype=np.int64)
    codes = np.zeros(runs if want_codes else 1, dtype=np.uint64)
    cdef int64_t[::1] budgets_v = budgets
    cdef int64_t[::1] loops_v = loops_arr
    cdef int64_t[::1] dups_v = dups_arr
    cdef int64_t[::1] deg_v = deg
    cdef int64_t[::1] pairs_v = pairs
    cdef uint64_t[::1] codes_v = codes
    cdef ESet es
    if _es_init(&es, _cap_for(0.5 * total_mass, True)) != 0:
        raise MemoryError
    cdef XS bud, end
    cdef uint64_t child
    cdef int64_t r, ev, budget, loops, dups, u, v, lo, hi, pidx
    cdef uint64_t code
    cdef int ins, err = 0
    with nogil:
        for r in range(runs):
            child = _derive(ms, C_SPAWN_SALT, cs + <uint64_t>r)
            _seed_stream(&bud, _derive(child, C_SUBSTREAM_SALT, <uint64_t>C_BUDGET))
            _seed_stream(&end, _derive(child, C_SUBSTREAM_SALT, <uint64_t>C_ENDPOINT))
            budget = _poisson(&bud, 0.5 * total_mass)
            if corrupt == CC_BUDGET_HALF:
                budget = budget // 2
            loops = 0
            dups = 0
            code = 0
            es.size = 0
            for ev in range(budget):
                u = _alias_pick(&end, &qv[0], &av[0], un, rem)
                v = _alias_pick(&end, &qv[0], &av[0], un, rem)
                if u == v:
                    if corrupt == CC_KEEP_LOOPS:
                        deg_v[u] += 2
                    else:
                        loops += 1
                    continue
                if u < v:
                    lo = u
                    hi = v
                else:
                    lo = v
                    hi = u
                if corrupt == CC_SKIP_DEDUP:
                    deg_v[lo] += 1
                    deg_v[hi] += 1
                    if want_pairs or want_codes:
                        pidx = _pair_index(lo, hi, n)
                        if want_pairs:
                            pairs_v[pidx] += 1
                        if want_codes:
                            code = code | ((<uint64_t>1) << pidx)
                    continue
                ins = _es_insert(&es, <uint64_t>lo * un + <uint64_t>hi, r)
                if ins < 0:
                    err = 1
                    break
                if ins:
                    deg_v[lo] += 1
                    deg_v[hi] += 1
                    if want_pairs or want_codes:
                        pidx = _pair_index(lo, hi, n)
                        if want_pairs:
                            pairs_v[pidx] += 1
                        if want_codes:
                            code = code | ((<uint64_t>1) << pidx)
                else:
                    dups += 1
            if err:
                break
            budgets_v[r] = budget
            loops_v[r] = loops
            dups_v[r] = dups
            if want_codes:
                codes_v[r] = code
    free(es.keys)
    free(es.mark)
    if err:
        raise MemoryError
    return {
        "budgets": budgets,
        "loops": loops_arr,
        "dups": dups_arr,
        "degree_sums": deg,
        "pair_counts": pairs if want_pairs else None,
        "codes": codes if want_codes else None,
    }


def nr_multi_batch(
    q,
    a,
    double total_mass,
    master_seed,
    child_start,
    int64_t runs,
    bint want_pairs=False,
):
    cdef const double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef int64_t n = qv.shape[0]
    if <uint64_t>n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef int64_t npairs = n * (n - 1) // 2
    if want_pairs and npairs > 100_000_000:
        raise ValueError("per-pair accounting too large")
    cdef uint64_t ms = <uint64_t>master_seed
    cdef uint64_t cs = <uint64_t>child_start
    cdef uint64_t un = <uint64_t>n
    cdef uint64_t rem = (<uint64_t>0 - un) % un
    budgets = np.empty(runs, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    pairs = np.zeros(npairs if want_pairs else 1, dtype=np.int64)
    loop_counts = np.zeros(n if want_pairs else 1, dtype=np.int64)
    cdef int64_t[::1] budgets_v = budgets
    cdef int64_t[::1] deg_v = deg
    cdef int64_t[::1] pairs_v = pairs
    cdef int64_t[::1] lc_v = loop_counts
    cdef XS bud, end
    cdef uint64_t child
    cdef int64_t r, ev, budget, u, v
    with nogil:
        for r in range(runs):
            child = _derive(ms, C_SPAWN_SALT, cs + <uint64_t>r)
            _seed_stream(&bud, _derive(child, C_SUBSTREAM_SALT, <uint64_t>C_BUDGET))
            _seed_stream(&end, _derive(child, C_SUBSTREAM_SALT, <uint64_t>C_ENDPOINT))
            budget = _poisson(&bud, 0.5 * total_mass)
            budgets_v[r] = budget
            for ev in range(budget):
                u = _alias_pick(&end, &qv[0], &av[0], un, rem)
                v = _alias_pick(&end, &qv[0], &av[0], un, rem)
                deg_v[u] += 1
                deg_v[v] += 1
                if want_pairs:
                    if u == v:
                        lc_v[u] += 1
                    elif u < v:
                        pairs_v[_pair_index(u, v, n)] += 1
                    else:
                        pairs_v[_pair_index(v, u, n)] += 1
    return {
        "budgets": budgets,
        "degree_sums": deg,
        "pair_counts": pairs if want_pairs else None,
        "loop_counts": loop_counts if want_pairs else None,
    }


def er_batch(
    n_vertices,
    double mean_events,
    master_seed,
    child_start,
    int64_t runs,
    bint want_pairs=False,
):
    cdef int64_t n = <int64_t>n_vertices
    if <uint64_t>n >= (<uint64_t>1 << 32):
        raise ValueError("compiled backend requires n < 2**32")
    cdef int64_t npairs = n * (n - 1) // 2
    if want_pairs and npairs > 100_000_000:
        raise ValueError("per-pair accounting too large")
    cdef uint64_t ms = <uint64_t>master_seed
    cdef uint64_t cs = <uint64_t>child_start
    cdef uint64_t un = <uint64_t>n
    cdef uint64_t rem = (<uint64_t>0 - un) % un
    budgets = np.empty(runs, dtype=np.int64)
    loops_arr = np.empty(runs, dtype=np.int64)
    dups_arr = np.empty(runs, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    pairs = np.zeros(npairs if want_pairs else 1, dtype=np.int64)
    cdef int64_t[::1] budgets_v = budgets
    cdef int64_t[::1] loops_v = loops_arr
    cdef int64_t[::1] dups_v = dups_arr
    cdef int64_t[::1] deg_v = deg
    cdef int64_t[::1] pairs_v = pairs
    cdef ESet es
    if _es_init(&es, _cap_for(mean_events, True)) != 0:
        raise MemoryError
    cdef XS bud, end
    cdef uint64_t child
    cdef int64_t r, ev, budget, loops, dups, u, v, lo, hi
    cdef int ins, err = 0
    with nogil:
        for r in range(runs):
            child = _derive(ms, C_SPAWN_SALT, cs + <uint64_t>r)
            _seed_stream(&bud, _derive(child, C_SUBSTREAM_SALT, <uint64_t>C_BUDGET))
            _seed_stream(&end, _derive(child, C_SUBSTREAM_SALT, <uint64_t>C_ENDPOINT))
            budget = _poisson(&bud, mean_events)
            loops = 0
            dups = 0
            es.size = 0
            for ev in range(budget):
                u = <int64_t>_index(&end, un)
                v = <int64_t>_index(&end, un)
                if u == v:
                    loops += 1
                    continue
                if u < v:
                    lo = u
                    hi = v
                else:
                    lo = v
                    hi = u
                ins = _es_insert(&es, <uint64_t>lo * un + <uint64_t>hi, r)
                if ins < 0:
                    err = 1
                    break
                if ins:
                    deg_v[lo] += 1
                    deg_v[hi] += 1
                    if want_pairs:
                        pairs_v[_pair_index(lo, hi, n)] += 1
                else:
                    dups += 1
            if err:
                break
            budgets_v[r] = budget
            loops_v[r] = loops
            dups_v[r] = dups
    free(es.keys)
    free(es.mark)
    if err:
        raise MemoryError
    return {
        "budgets": budgets,
        "loops": loops_arr,
        "dups": dups_arr,
        "degree_sums": deg,
        "pair_counts": pairs if want_pairs else None,
    }


def oracle_batch(
    values,
    double total_mass,
    master_seed,
    child_start,
    int64_t runs,
    bint want_pairs=False,
    bint want_codes=False,
):
    cdef const double[::1] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef int64_t n = vals.shape[0]
    cdef int64_t npairs = n * (n - 1) // 2
    if want_codes and npairs > 64:
        raise ValueError("graph codes need n*(n-1)/2 <= 64")
    if npairs > 100_000_000:
        raise ValueError("pair scan too large for batching")
    cdef uint64_t ms = <uint64_t>master_seed
    cdef uint64_t cs = <uint64_t>child_start
    probs = np.empty(npairs, dtype=np.float64)
    cdef double[::1] probs_v = probs
    cdef int64_t i, j, idx = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            probs_v[idx] = -expm1(-(vals[i] * vals[j]) / total_mass)
            idx += 1
    edge_counts = np.empty(runs, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    pairs = np.zeros(npairs if want_pairs else 1, dtype=np.int64)
    codes = np.zeros(runs if want_codes else 1, dtype=np.uint64)
    cdef int64_t[::1] ec_v = edge_counts
    cdef int64_t[::1] deg_v = deg
    cdef int64_t[::1] pairs_v = pairs
    cdef uint64_t[::1] codes_v = codes
    cdef XS st
    cdef uint64_t child
    cdef int64_t r, m, pidx
    cdef uint64_t code
    cdef double u
    with nogil:
        for r in range(runs):
            child = _derive(ms, C_SPAWN_SALT, cs + <uint64_t>r)
            _seed_stream(&st, _derive(child, C_SUBSTREAM_SALT, <uint64_t>C_PAIRS))
            m = 0
            code = 0
            pidx = 0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    u = <double>(_next_u64(&st) >> 11) * INV_2_53
                    if u < probs_v[pidx]:
                        m += 1
                        deg_v[i] += 1
                        deg_v[j] += 1
                        if want_pairs:
                            pairs_v[pidx] += 1
                        if want_codes:
                            code = code | ((<uint64_t>1) << pidx)
                    pidx += 1
            ec_v[r] = m
            if want_codes:
                codes_v[r] = code
    return {
        "edge_counts": edge_counts,
        "degree_sums": deg,
        "pair_counts": pairs if want_pairs else None,
        "codes": codes if want_codes else None,
    }


def cl_count_batch(
    w_sorted, double total_mass, master_seed, child_start, int64_t runs
):
    cdef const double[::1] wv = np.ascontiguousarray(w_sorted, dtype=np.float64)
    cdef int64_t n = wv.shape[0]
    order = np.arange(n, dtype=np.int64)
    cdef int64_t[::1] ov = order
    cdef uint64_t ms = <uint64_t>master_seed
    cdef uint64_t cs = <uint64_t>child_start
    edge_counts = np.empty(runs, dtype=np.int64)
    cdef int64_t[::1] ec_v = edge_counts
    cdef XS st
    cdef uint64_t child
    cdef int64_t r
    cdef int err = 0
    with nogil:
        for r in range(runs):
            child = _derive(ms, C_SPAWN_SALT, cs + <uint64_t>r)
            _seed_stream(&st, _derive(child, C_SUBSTREAM_SALT, <uint64_t>C_SKIP))
            ec_v[r] = _cl_pass(
                &st, &wv[0], &ov[0], n, total_mass, NULL, NULL, False, &err
            )
            if err:
                break
    if err:
        raise RuntimeError("edge-skipping probabilities must be nonincreasing")
    return {"edge_counts": edge_counts}


# ---------------------------------------------------------------------
# draw-array utilities for statistical tests


def uniform_array(seed, int64_t count):
    cdef XS st
    _seed_stream(&st, <uint64_t>seed)
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] mv = out
    cdef int64_t i
    with nogil:
        for i in range(count):
            mv[i] = _unif(&st)
    return out


def index_counts(seed, n_values, int64_t draws):
    cdef uint64_t n = <uint64_t>n_values
    cdef XS st
    _seed_stream(&st, <uint64_t>seed)
    counts = np.zeros(<int64_t>n, dtype=np.int64)
    cdef int64_t[::1] mv = counts
    cdef int64_t i
    with nogil:
        for i in range(draws):
            mv[<int64_t>_index(&st, n)] += 1
    return counts


def poisson_array(seed, double lam, int64_t count):
    cdef XS st
    _seed_stream(&st, <uint64_t>seed)
    out = np.empty(count, dtype=np.int64)
    cdef int64_t[::1] mv = out
    cdef int64_t i
    with nogil:
        for i in range(count):
            mv[i] = _poisson(&st, lam)
    return out


def alias_counts(q, a, seed, int64_t draws):
    cdef const double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef uint64_t n = <uint64_t>qv.shape[0]
    cdef uint64_t rem = (<uint64_t>0 - n) % n
    cdef XS st
    _seed_stream(&st, <uint64_t>seed)
    counts = np.zeros(<int64_t>n, dtype=np.int64)
    cdef int64_t[::1] mv = counts
    cdef int64_t i
    with nogil:
        for i in range(draws):
            mv[_alias_pick(&st, &qv[0], &av[0], n, rem)] += 1
    return counts


def alias_pick_array(q, a, seed, int64_t count):
    cdef const double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef uint64_t n = <uint64_t>qv.shape[0]
    cdef uint64_t rem = (<uint64_t>0 - n) % n
    cdef XS st
    _seed_stream(&st, <uint64_t>seed)
    out = np.empty(count, dtype=np.int64)
    cdef int64_t[::1] mv = out
    cdef int64_t i
    with nogil:
        for i in range(count):
            mv[i] = _alias_pick(&st, &qv[0], &av[0], n, rem)
    return out
