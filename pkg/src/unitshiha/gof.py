"""Model-selection criteria, Kolmogorov-Smirnov testing, descriptive
statistics, and plot-point generation (PP/QQ/TTT, fitted overlays)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import kstwo

from . import families
from .fitting import FitResult

__all__ = [
    "DescriptiveStats",
    "GofReport",
    "descriptive_stats",
    "evaluate_fit",
    "has_ties",
    "info_criteria",
    "ks_pvalue",
    "ks_statistic",
    "pp_qq_points",
    "ttt_points",
]

_EXACT_KS_MAX_N = 100


def _values(data) -> np.ndarray:
    return np.asarray(getattr(data, "values", data), dtype=float)


@dataclass(frozen=True)
class GofReport:
    """Fit quality of one family on one dataset."""

    family_tag: str
    estimates: tuple[float, ...]
    log_lik: float
    aic: float
    aicc: float
    bic: float
    hqic: float
    ks_stat: float
    ks_pvalue: float
    n: int
    k: int
    converged: bool = True
    at_bound: tuple[bool, ...] = ()


@dataclass(frozen=True)
class DescriptiveStats:
    """Five-number summary plus moments, in both common shape conventions.

    ``skewness``/``kurtosis`` are the plain moment ratios m3/m2^(3/2) and
    m4/m2^2; the ``adjusted_*`` fields carry the small-sample adjusted
    (Fisher-Pearson G1 / G2+3) convention.  Quartiles use the linear
    interpolation rule on (n-1)p + 1 positions, which is what the bundled
    reference tables follow.
    """

    n: int
    minimum: float
    q1: float
    median: float
    mean: float
    q3: float
    maximum: float
    variance: float
    skewness: float
    kurtosis: float
    adjusted_skewness: float
    adjusted_kurtosis: float


def info_criteria(log_lik: float, k: int, n: int) -> tuple[float, float, float, float]:
    """(AIC, AICC, BIC, HQIC) from a maximized log-likelihood.

    AIC = 2k - 2l; AICC adds 2k(k+1)/(n-k-1); BIC = k ln n - 2l;
    HQIC = 2k ln(ln n) - 2l.  AICC requires n > k + 1.
    """
    if n <= k + 1:
        raise ValueError(f"AICC undefined for n={n} <= k+1={k + 1}")
    m2l = -2.0 * log_lik
    aic = 2.0 * k + m2l
    aicc = aic + 2.0 * k * (k + 1.0) / (n - k - 1.0)
    bic = k * math.log(n) + m2l
    hqic = 2.0 * k * math.log(math.log(n)) + m2l
    return aic, aicc, bic, hqic


def ks_statistic(data, cdf) -> float:
    """Supremum distance between the empirical CDF and ``cdf``.

    D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n), evaluated on a sorted
    copy; the extremum of the step function is always attained at a data
    point.
    """
    x = np.sort(_values(data))
    n = x.size
    f = np.atleast_1d(np.asarray(cdf(x), dtype=float))
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    return float(max(d_plus, d_minus, 0.0))


def has_ties(data) -> bool:
    x = np.sort(_values(data))
    return bool((np.diff(x) == 0).any())


def ks_pvalue(d: float, n: int, ties: bool = False) -> float:
    """Two-sided p-value of the one-sample KS statistic.

    Follows the classical convention: the exact null distribution
    (Marsaglia-Tsang-Wang) for n <= 100 when the sample has no ties, and the
    asymptotic Kolmogorov series

        p = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 n d^2)

    otherwise, clamped to [0, 1].
    """
    if not 0.0 <= d <= 1.0:
        raise ValueError("d must lie in [0, 1]")
    if n < 1:
        raise ValueError("n must be >= 1")
    if d == 0.0:
        return 1.0
    if d >= 1.0:
        return 0.0
    if n <= _EXACT_KS_MAX_N and not ties:
        return float(min(1.0, max(0.0, kstwo.sf(d, n))))
    lam2 = n * d * d
    total = 0.0
    for j in range(1, 101):
        term = math.exp(-2.0 * j * j * lam2)
        total += term if j % 2 else -term
        if term < 1e-16:
            break
    return float(min(1.0, max(0.0, 2.0 * total)))


def evaluate_fit(data, fit: FitResult) -> GofReport:
    """Assemble the information criteria and KS test for a completed fit."""
    x = _values(data)
    n = x.size
    theta = fit.estimates.values
    fam = fit.family
    aic, aicc, bic, hqic = info_criteria(fit.log_lik, fam.param_count, n)
    d = ks_statistic(x, lambda v: families.dist_cdf(fam, v, theta))
    p = ks_pvalue(d, n, ties=has_ties(x))
    return GofReport(
        family_tag=fam.tag, estimates=theta, log_lik=fit.log_lik,
        aic=aic, aicc=aicc, bic=bic, hqic=hqic,
        ks_stat=d, ks_pvalue=p, n=n, k=fam.param_count,
        converged=fit.converged, at_bound=fit.at_bound,
    )


def _quartile(x_sorted: np.ndarray, p: float, rule: str = "interpolate") -> float:
    """Two common linear-interpolation quantile rules.

    ``interpolate`` places quantile p at position (n-1)p + 1 (numpy/R
    default); ``weibull`` places it at (n+1)p.  The package standardizes on
    ``interpolate``, which reproduces the bundled reference summaries.
    """
    method = {"interpolate": "linear", "weibull": "weibull"}[rule]
    return float(np.quantile(x_sorted, p, method=method))


def descriptive_stats(data, quartile_rule: str = "interpolate") -> DescriptiveStats:
    """Summary statistics of a sample (n >= 2); variance is the unbiased one."""
    x = np.sort(_values(data))
    n = x.size
    if n < 2:
        raise ValueError("descriptive statistics need n >= 2")
    mean = float(np.mean(x))
    var = float(np.var(x, ddof=1))
    if var == 0.0:
        raise ValueError("zero variance: skewness and kurtosis are undefined")
    dev = x - mean
    m2 = float(np.mean(dev ** 2))
    m3 = float(np.mean(dev ** 3))
    m4 = float(np.mean(dev ** 4))
    g1 = m3 / m2 ** 1.5
    b2 = m4 / m2 ** 2
    adj_g1 = g1 * math.sqrt(n * (n - 1.0)) / (n - 2.0) if n > 2 else math.nan
    if n > 3:
        adj_g2 = ((n + 1.0) * (b2 - 3.0) + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0)) + 3.0
    else:
        adj_g2 = math.nan
    return DescriptiveStats(
        n=n,
        minimum=float(x[0]),
        q1=_quartile(x, 0.25, quartile_rule),
        median=_quartile(x, 0.5, quartile_rule),
        mean=mean,
        q3=_quartile(x, 0.75, quartile_rule),
        maximum=float(x[-1]),
        variance=var,
        skewness=g1,
        kurtosis=b2,
        adjusted_skewness=adj_g1,
        adjusted_kurtosis=adj_g2,
    )


def ttt_points(data) -> np.ndarray:
    """Scaled total-time-on-test transform, as (i/n, G(i/n)) pairs, i = 0..n.

    G(i/n) = [sum_{j<=i} x_(j) + (n-i) x_(i)] / sum_j x_j; concavity of the
    curve diagnoses an increasing hazard rate.  Invariant under positive
    rescaling of the data.
    """
    x = np.sort(_values(data))
    n = x.size
    if n < 2:
        raise ValueError("TTT transform needs n >= 2")
    total = float(np.sum(x))
    cums = np.cumsum(x)
    g = (cums + (n - np.arange(1, n + 1)) * x) / total
    return np.column_stack([np.arange(0, n + 1) / n, np.concatenate([[0.0], g])])


def pp_qq_points(data, family, theta) -> tuple[np.ndarray, np.ndarray]:
    """PP pairs (F(x_(i)), (i-0.5)/n) and QQ pairs (Q((i-0.5)/n), x_(i)).

    Uses the symmetric plotting position (i - 0.5)/n.
    """
    fam = families.get_family(family)
    x = np.sort(_values(data))
    n = x.size
    pos = (np.arange(1, n + 1) - 0.5) / n
    f = np.atleast_1d(np.asarray(families.dist_cdf(fam, x, theta), dtype=float))
    q = np.atleast_1d(np.asarray(families.dist_quantile(fam, pos, theta), dtype=float))
    return np.column_stack([f, pos]), np.column_stack([q, x])
