"""Statistical validation of generator output against closed forms.

Every reference value here is recomputed from the weight sequence
alone; nothing is cached from generator output, so a check can never
certify a generator against its own bug. Moment checks use a
sigma_mult standard-error window; distribution checks use chi-square
tests with deterministic pooling to expected counts of at least 5.
Families of per-vertex or per-pair comparisons report their worst
member; per-pair families apply a Bonferroni-corrected threshold.

Check names are stable strings; CI and the negative-control tests key
on them: budget_mean, budget_distribution, degree_means, excess_bound,
edge_marginals, edge_count, simplicity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.stats import chi2, norm

from ._backend import get_impl, impl_for_size
from .errors import DomainError
from .generators import CORRUPT_NONE
from .randomness import RandomStream
from .weights import WeightSequence


@dataclass(frozen=True)
class ValidationConfig:
    runs: int = 100_000
    significance: float = 1e-4
    sigma_mult: float = 4.0

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise DomainError("runs must be at least 1")
        if not 0.0 < self.significance < 1.0:
            raise DomainError("significance must lie in (0, 1)")
        if not self.sigma_mult > 0.0:
            raise DomainError("sigma_mult must be positive")


@dataclass(frozen=True)
class CheckResult:
    """One verdict: pass iff statistic <= threshold."""

    name: str
    statistic: float
    threshold: float
    verdict: str

    @staticmethod
    def judge(name: str, statistic: float, threshold: float) -> "CheckResult":
        ok = statistic <= threshold
        return CheckResult(name, float(statistic), float(threshold), "pass" if ok else "fail")


@dataclass
class ValidationReport:
    model: str
    seed: int
    runs: int
    checks: list[CheckResult] = field(default_factory=list)
    budget_mean: Optional[float] = None
    budget_expected: Optional[float] = None
    degree_mean_per_vertex: Optional[list[float]] = None
    degree_expected_per_vertex: Optional[list[float]] = None
    excess_mean: Optional[float] = None
    excess_bound: Optional[float] = None
    marginal_max_z: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(c.verdict == "pass" for c in self.checks)

    def to_json(self) -> str:
        body = {
            "model": self.model,
            "seed": self.seed,
            "runs": self.runs,
            "passed": self.passed,
            "budget_mean": self.budget_mean,
            "budget_expected": self.budget_expected,
            "excess_mean": self.excess_mean,
            "excess_bound": self.excess_bound,
            "marginal_max_z": self.marginal_max_z,
            "checks": [
                {
                    "name": c.name,
                    "statistic": c.statistic,
                    "threshold": c.threshold,
                    "verdict": c.verdict,
                }
                for c in self.checks
            ],
        }
        return json.dumps(body, indent=2)


def poisson_pmf(lam: float, kmax: int) -> np.ndarray:
    """pmf(0..kmax) by the multiplicative recurrence; stable for small lam.

    For large lam the early terms underflow; start the recurrence at the
    mode in log space instead.
    """
    out = np.empty(kmax + 1, dtype=np.float64)
    if lam == 0.0:
        out[:] = 0.0
        out[0] = 1.0
        return out
    log_p = -lam
    # fill in log space, then exponentiate once; avoids underflow chains
    logs = np.empty(kmax + 1, dtype=np.float64)
    logs[0] = log_p
    for k in range(1, kmax + 1):
        logs[k] = logs[k - 1] + math.log(lam) - math.log(k)
    np.exp(logs, out=out)
    return out


def _pool_bins(counts: np.ndarray, expected: np.ndarray, min_expected: float = 5.0):
    """Deterministic left-to-right pooling until every bin has mass.

    The final bin absorbs whatever remains, so pooling depends only on
    the expected counts, never on the observations.
    """
    pooled_c: list[float] = []
    pooled_e: list[float] = []
    acc_c = 0.0
    acc_e = 0.0
    for c, e in zip(counts, expected):
        acc_c += c
        acc_e += e
        if acc_e >= min_expected:
            pooled_c.append(acc_c)
            pooled_e.append(acc_e)
            acc_c = 0.0
            acc_e = 0.0
    if acc_e > 0.0 or acc_c > 0.0:
        if pooled_e:
            pooled_c[-1] += acc_c
            pooled_e[-1] += acc_e
        else:
            pooled_c.append(acc_c)
            pooled_e.append(acc_e)
    return np.asarray(pooled_c), np.asarray(pooled_e)


def chi_square_gof(
    counts: np.ndarray,
    probs: np.ndarray,
    significance: float,
    total_draws: Optional[int] = None,
):
    """Goodness of fit against given cell probabilities.

    When the listed cells do not exhaust the law, pass total_draws so a
    remainder cell can hold the observations that fell outside them.
    Returns (statistic, critical_value, dof).
    """
    counts = np.asarray(counts, dtype=np.float64)
    probs = np.asarray(probs, dtype=np.float64)
    if counts.shape[0] != probs.shape[0]:
        raise DomainError("counts and probs must have matching cells")
    total = float(counts.sum()) if total_draws is None else float(total_draws)
    tail = 1.0 - float(probs.sum())
    if tail > 1e-15:
        probs = np.append(probs, tail)
        counts = np.append(counts, max(total - float(counts.sum()), 0.0))
    expected = probs * total
    pc, pe = _pool_bins(counts, expected)
    if pc.shape[0] < 2:
        return 0.0, float("inf"), 0
    stat = float(np.sum((pc - pe) ** 2 / pe))
    dof = pc.shape[0] - 1
    crit = float(chi2.isf(significance, dof))
    return stat, crit, dof


def two_sample_chi_square(counts_a: np.ndarray, counts_b: np.ndarray, significance: float):
    """Homogeneity test for two samples over the same categories."""
    a = np.asarray(counts_a, dtype=np.float64)
    b = np.asarray(counts_b, dtype=np.float64)
    if a.shape != b.shape:
        raise DomainError("two-sample test needs matching category counts")
    na = float(a.sum())
    nb = float(b.sum())
    if na == 0.0 or nb == 0.0:
        raise DomainError("two-sample test needs nonempty samples")
    both = a + b
    # pool sparse categories on the combined counts so the pooling is
    # symmetric in the two samples
    pa, pb = [], []
    acc_a = acc_b = 0.0
    for ai, bi, ti in zip(a, b, both):
        acc_a += ai
        acc_b += bi
        if (acc_a + acc_b) * min(na, nb) / (na + nb) >= 5.0:
            pa.append(acc_a)
            pb.append(acc_b)
            acc_a = acc_b = 0.0
    if acc_a + acc_b > 0.0:
        if pa:
            pa[-1] += acc_a
            pb[-1] += acc_b
        else:
            pa.append(acc_a)
            pb.append(acc_b)
    pa = np.asarray(pa)
    pb = np.asarray(pb)
    ra = math.sqrt(nb / na)
    rb = math.sqrt(na / nb)
    tot = pa + pb
    stat = float(np.sum((ra * pa - rb * pb) ** 2 / tot))
    dof = pa.shape[0] - 1
    if dof < 1:
        return 0.0, float("inf"), 0
    crit = float(chi2.isf(significance, dof))
    return stat, crit, dof


def bonferroni_threshold(sigma_mult: float, families: int) -> float:
    """z threshold holding the family-wise level of a sigma_mult test."""
    base = 2.0 * float(norm.sf(sigma_mult))
    return float(norm.isf(base / (2.0 * families)))


def _simple_degree_moments(values: np.ndarray, total_mass: float, chunk: int = 256):
    """Exact per-vertex mean and variance of the simple degree.

    Simple degree of i is a sum of independent indicators over j != i
    with success probability 1 - exp(-x_i x_j / total_mass); chunked
    evaluation keeps the O(n^2) table out of memory.
    """
    n = values.shape[0]
    mean = np.empty(n, dtype=np.float64)
    var = np.empty(n, dtype=np.float64)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        block = values[lo:hi, None] * values[None, :] / total_mass
        p = -np.expm1(-block)
        # remove the diagonal contribution j == i
        for r in range(hi - lo):
            p[r, lo + r] = 0.0
        mean[lo:hi] = p.sum(axis=1)
        var[lo:hi] = (p * (1.0 - p)).sum(axis=1)
    return mean, var


def _spawn_block(rng: RandomStream, runs: int):
    seed, start = rng.reserve_children(runs)
    return seed, start


def _impl_for(w_n: int, backend: Optional[str]):
    return get_impl(backend) if backend is not None else impl_for_size(w_n)


def validate_budget(
    w: WeightSequence,
    cfg: ValidationConfig,
    rng: RandomStream,
    *,
    backend: Optional[str] = None,
    corrupt: int = CORRUPT_NONE,
    _batch: Optional[dict] = None,
) -> list[CheckResult]:
    """Mean and, when feasible, full distribution of the event budget."""
    lam = 0.5 * w.total_mass
    if _batch is None:
        impl = _impl_for(w.n, backend)
        table = impl.alias_build(w.values, w.total_mass)
        seed, start = _spawn_block(rng, cfg.runs)
        _batch = impl.nr_simple_batch(
            table[0], table[1], w.total_mass, seed, start, cfg.runs, corrupt
        )
    budgets = _batch["budgets"]
    mean = float(budgets.mean())
    se = math.sqrt(lam / cfg.runs)
    z = abs(mean - lam) / se if se > 0.0 else (0.0 if mean == lam else float("inf"))
    checks = [CheckResult.judge("budget_mean", z, cfg.sigma_mult)]
    if lam <= 100.0:
        kmax = int(math.ceil(lam + 10.0 * math.sqrt(max(lam, 1.0)))) + 1
        counts = np.bincount(budgets, minlength=kmax + 1)[: kmax + 1]
        stat, crit, _ = chi_square_gof(
            counts, poisson_pmf(lam, kmax), cfg.significance, cfg.runs
        )
        checks.append(CheckResult.judge("budget_distribution", stat, crit))
    return checks


def validate_degrees(
    w: WeightSequence,
    cfg: ValidationConfig,
    rng: RandomStream,
    mode: str = "simple",
    *,
    backend: Optional[str] = None,
    corrupt: int = CORRUPT_NONE,
    _batch: Optional[dict] = None,
) -> list[CheckResult]:
    """Per-vertex z-test of mean degree against its closed form.

    simple mode targets the exact finite-n indicator-sum mean, not the
    weight itself; the weight is only the asymptotic limit.
    """
    if mode not in ("simple", "multigraph"):
        raise DomainError(f"unknown degree mode {mode!r}")
    impl = _impl_for(w.n, backend)
    if _batch is None:
        table = impl.alias_build(w.values, w.total_mass)
        seed, start = _spawn_block(rng, cfg.runs)
        if mode == "simple":
            _batch = impl.nr_simple_batch(
                table[0], table[1], w.total_mass, seed, start, cfg.runs, corrupt
            )
        else:
            _batch = impl.nr_multi_batch(
                table[0], table[1], w.total_mass, seed, start, cfg.runs
            )
    means = _batch["degree_sums"] / cfg.runs
    if mode == "simple":
        mu, var = _simple_degree_moments(w.values, w.total_mass)
    else:
        mu = w.values.astype(np.float64)
        var = w.values + w.values * w.values / w.total_mass
    se = np.sqrt(var / cfg.runs)
    with np.errstate(divide="ignore", invalid="ignore"):
        zs = np.where(se > 0.0, np.abs(means - mu) / se, np.where(means == mu, 0.0, np.inf))
    worst = float(np.max(zs)) if zs.size else 0.0
    return [CheckResult.judge("degree_means", worst, cfg.sigma_mult)]


def validate_excess(
    w: WeightSequence,
    cfg: ValidationConfig,
    rng: RandomStream,
    *,
    backend: Optional[str] = None,
    corrupt: int = CORRUPT_NONE,
    _batch: Optional[dict] = None,
) -> list[CheckResult]:
    """Mean excess (loops plus duplicate events) against its upper bound.

    Bound: S2/(2L) + S2^2/(4L^2) with S2 the sum of squared weights and
    L the total mass, plus a sigma_mult standard-error allowance for the
    finite sample.
    """
    if _batch is None:
        impl = _impl_for(w.n, backend)
        table = impl.alias_build(w.values, w.total_mass)
        seed, start = _spawn_block(rng, cfg.runs)
        _batch = impl.nr_simple_batch(
            table[0], table[1], w.total_mass, seed, start, cfg.runs, corrupt
        )
    excess = _batch["loops"] + _batch["dups"]
    mean = float(excess.mean())
    se = float(excess.std(ddof=1)) / math.sqrt(cfg.runs) if cfg.runs > 1 else 0.0
    s2 = float(np.dot(w.values, w.values))
    bound = s2 / (2.0 * w.total_mass) + (s2 * s2) / (4.0 * w.total_mass * w.total_mass)
    return [CheckResult.judge("excess_bound", mean, bound + cfg.sigma_mult * se)]


_MARGINAL_VERTEX_CAP = 64


def _pair_probs(values: np.ndarray, total_mass: float) -> np.ndarray:
    n = values.shape[0]
    probs = np.empty(n * (n - 1) // 2, dtype=np.float64)
    k = 0
    for i in range(n - 1):
        cnt = n - 1 - i
        probs[k : k + cnt] = -np.expm1(-(values[i] * values[i + 1 :]) / total_mass)
        k += cnt
    return probs


def validate_marginals(
    w: WeightSequence,
    cfg: ValidationConfig,
    rng: RandomStream,
    *,
    backend: Optional[str] = None,
    corrupt: int = CORRUPT_NONE,
    _batch: Optional[dict] = None,
) -> list[CheckResult]:
    """Per-pair z-test of edge frequency; Bonferroni across pairs.

    Quadratic in the vertex count, so refuses beyond 64 vertices; use
    the aggregate checks (degrees, budget, excess) at scale.
    """
    if w.n > _MARGINAL_VERTEX_CAP:
        raise DomainError(
            f"pairwise marginals need n <= {_MARGINAL_VERTEX_CAP}; "
            "use degree and budget checks for larger graphs"
        )
    impl = _impl_for(w.n, backend)
    if _batch is None or _batch.get("pair_counts") is None:
        table = impl.alias_build(w.values, w.total_mass)
        seed, start = _spawn_block(rng, cfg.runs)
        _batch = impl.nr_simple_batch(
            table[0], table[1], w.total_mass, seed, start, cfg.runs, corrupt,
            True, False,
        )
    probs = _pair_probs(w.values, w.total_mass)
    worst = _worst_pair_z(_batch["pair_counts"], probs, cfg.runs)
    thresh = bonferroni_threshold(cfg.sigma_mult, max(probs.shape[0], 1))
    return [CheckResult.judge("edge_marginals", worst, thresh)]


def _worst_pair_z(pair_counts: np.ndarray, probs: np.ndarray, runs: int) -> float:
    freq = pair_counts / runs
    se = np.sqrt(probs * (1.0 - probs) / runs)
    with np.errstate(divide="ignore", invalid="ignore"):
        zs = np.where(se > 0.0, np.abs(freq - probs) / se, np.where(freq == probs, 0.0, np.inf))
    return float(np.max(zs)) if zs.size else 0.0


_STRUCTURAL_RUNS = 32


def validate_simplicity(
    w: Optional[WeightSequence],
    cfg: ValidationConfig,
    rng: RandomStream,
    model: str = "nr",
    *,
    n: Optional[int] = None,
    p: Optional[float] = None,
    backend: Optional[str] = None,
    corrupt: int = CORRUPT_NONE,
) -> list[CheckResult]:
    """Structural scan over sampled runs.

    Verifies canonical endpoint order, index bounds, absence of loops
    and duplicates, and the counter identity budget = edges + loops +
    duplicates. Counts violations; any violation fails.
    """
    runs = min(cfg.runs, _STRUCTURAL_RUNS)
    violations = 0
    for _ in range(runs):
        seed = rng.spawn_seed()
        if model in ("nr", "nr-oracle"):
            impl = _impl_for(w.n, backend)
            if model == "nr":
                table = impl.alias_build(w.values, w.total_mass)
                u, v, budget, loops, dups = impl.nr_simple_gen(
                    table[0], table[1], w.total_mass, seed, True, corrupt
                )
                if budget != u.shape[0] + loops + dups:
                    violations += 1
            else:
                u, v = impl.oracle_gen(w.values, w.total_mass, seed)
            violations += _simple_structure_violations(u, v, w.n)
        elif model == "er":
            impl = _impl_for(n, backend)
            mean_events = -math.log1p(-p) * (float(n) * float(n)) / 2.0
            u, v, budget, loops, dups = impl.er_gen(n, mean_events, seed, True)
            if budget != u.shape[0] + loops + dups:
                violations += 1
            violations += _simple_structure_violations(u, v, n)
        elif model == "nr-multi":
            impl = _impl_for(w.n, backend)
            table = impl.alias_build(w.values, w.total_mass)
            u, v, budget = impl.nr_multi_gen(table[0], table[1], w.total_mass, seed)
            if budget != u.shape[0]:
                violations += 1
            if u.shape[0] and (int(u.max()) >= w.n or int(v.max()) >= w.n):
                violations += 1
        else:
            raise DomainError(f"unknown model {model!r}")
    return [CheckResult.judge("simplicity", float(violations), 0.0)]


def _simple_structure_violations(u: np.ndarray, v: np.ndarray, n: int) -> int:
    bad = 0
    if u.shape[0] == 0:
        return 0
    if not np.all(u < v):
        bad += 1
    if int(v.max()) >= n:
        bad += 1
    keys = u.astype(np.uint64) * np.uint64(n) + v.astype(np.uint64)
    if np.unique(keys).shape[0] != keys.shape[0]:
        bad += 1
    return bad


def run_validation(
    model: str,
    cfg: ValidationConfig,
    seed: int,
    *,
    w: Optional[WeightSequence] = None,
    n: Optional[int] = None,
    p: Optional[float] = None,
    backend: Optional[str] = None,
    corrupt: int = CORRUPT_NONE,
) -> ValidationReport:
    """Run the check suite appropriate to one model.

    Checks draw child streams from the master seed in a fixed order, so
    appending a new check never changes existing verdicts.
    """
    rng = RandomStream(seed, backend=backend) if backend else RandomStream(seed)
    report = ValidationReport(model=model, seed=rng.seed, runs=cfg.runs)

    if model in ("nr", "nr-multi"):
        if w is None:
            raise DomainError(f"model {model!r} needs weights")
        impl = _impl_for(w.n, backend)
        table = impl.alias_build(w.values, w.total_mass)
        want_pairs = model == "nr" and w.n <= _MARGINAL_VERTEX_CAP
        bseed, bstart = _spawn_block(rng, cfg.runs)
        if model == "nr":
            batch = impl.nr_simple_batch(
                table[0], table[1], w.total_mass, bseed, bstart, cfg.runs,
                corrupt, want_pairs, False,
            )
        else:
            batch = impl.nr_multi_batch(
                table[0], table[1], w.total_mass, bseed, bstart, cfg.runs
            )
        report.checks += validate_budget(w, cfg, rng, backend=backend, _batch=batch)
        mode = "simple" if model == "nr" else "multigraph"
        report.checks += validate_degrees(w, cfg, rng, mode, backend=backend, _batch=batch)
        if model == "nr":
            report.checks += validate_excess(w, cfg, rng, backend=backend, _batch=batch)
            if want_pairs:
                report.checks += validate_marginals(w, cfg, rng, backend=backend, _batch=batch)
                report.marginal_max_z = report.checks[-1].statistic
            report.excess_mean = float((batch["loops"] + batch["dups"]).mean())
        report.checks += validate_simplicity(
            w, cfg, rng, model, backend=backend, corrupt=corrupt
        )
        report.budget_mean = float(batch["budgets"].mean())
        report.budget_expected = 0.5 * w.total_mass
        report.degree_mean_per_vertex = (batch["degree_sums"] / cfg.runs).tolist()
        if model == "nr":
            mu, _ = _simple_degree_moments(w.values, w.total_mass)
            report.degree_expected_per_vertex = mu.tolist()
        else:
            report.degree_expected_per_vertex = w.values.tolist()

    elif model == "er":
        if n is None or p is None:
            raise DomainError("model 'er' needs n and p")
        if n < 1 or not (0.0 <= p < 1.0):
            raise DomainError("model 'er' needs n >= 1 and 0 <= p < 1")
        impl = _impl_for(n, backend)
        lam = -math.log1p(-p) * (float(n) * float(n)) / 2.0
        want_pairs = n <= _MARGINAL_VERTEX_CAP
        bseed, bstart = _spawn_block(rng, cfg.runs)
        batch = impl.er_batch(n, lam, bseed, bstart, cfg.runs, want_pairs)
        budgets = batch["budgets"]
        se = math.sqrt(lam / cfg.runs) if lam > 0 else 0.0
        mean = float(budgets.mean())
        z = abs(mean - lam) / se if se > 0.0 else (0.0 if mean == lam else float("inf"))
        report.checks.append(CheckResult.judge("budget_mean", z, cfg.sigma_mult))
        if lam <= 100.0:
            kmax = int(math.ceil(lam + 10.0 * math.sqrt(max(lam, 1.0)))) + 1
            counts = np.bincount(budgets, minlength=kmax + 1)[: kmax + 1]
            stat, crit, _ = chi_square_gof(
                counts, poisson_pmf(lam, kmax), cfg.significance, cfg.runs
            )
            report.checks.append(CheckResult.judge("budget_distribution", stat, crit))
        if want_pairs:
            npairs = n * (n - 1) // 2
            probs = np.full(npairs, p, dtype=np.float64)
            worst = _worst_pair_z(batch["pair_counts"], probs, cfg.runs)
            thresh = bonferroni_threshold(cfg.sigma_mult, npairs)
            report.checks.append(CheckResult.judge("edge_marginals", worst, thresh))
            report.marginal_max_z = worst
        report.checks += validate_simplicity(
            None, cfg, rng, "er", n=n, p=p, backend=backend
        )
        report.budget_mean = mean
        report.budget_expected = lam

    elif model == "nr-oracle":
        if w is None:
            raise DomainError("model 'nr-oracle' needs weights")
        impl = _impl_for(w.n, backend)
        want_pairs = w.n <= _MARGINAL_VERTEX_CAP
        bseed, bstart = _spawn_block(rng, cfg.runs)
        batch = impl.oracle_batch(
            w.values, w.total_mass, bseed, bstart, cfg.runs, want_pairs, False
        )
        means = batch["degree_sums"] / cfg.runs
        mu, var = _simple_degree_moments(w.values, w.total_mass)
        se = np.sqrt(var / cfg.runs)
        with np.errstate(divide="ignore", invalid="ignore"):
            zs = np.where(
                se > 0.0, np.abs(means - mu) / se, np.where(means == mu, 0.0, np.inf)
            )
        worst = float(np.max(zs)) if zs.size else 0.0
        report.checks.append(CheckResult.judge("degree_means", worst, cfg.sigma_mult))
        ec = batch["edge_counts"]
        mean_m = float(ec.mean())
        exp_m = float(mu.sum()) / 2.0
        se_m = math.sqrt(float(var.sum()) / 2.0 / cfg.runs)
        zm = abs(mean_m - exp_m) / se_m if se_m > 0.0 else 0.0
        report.checks.append(CheckResult.judge("edge_count", zm, cfg.sigma_mult))
        if want_pairs:
            probs = _pair_probs(w.values, w.total_mass)
            worst_pair = _worst_pair_z(batch["pair_counts"], probs, cfg.runs)
            thresh = bonferroni_threshold(cfg.sigma_mult, max(probs.shape[0], 1))
            report.checks.append(CheckResult.judge("edge_marginals", worst_pair, thresh))
            report.marginal_max_z = worst_pair
        report.checks += validate_simplicity(w, cfg, rng, "nr-oracle", backend=backend)
        report.degree_mean_per_vertex = means.tolist()
        report.degree_expected_per_vertex = mu.tolist()

    else:
        raise DomainError(f"unknown model {model!r}")

    return report
