"""Maximum-likelihood fitting and bootstrap confidence intervals.

All families are fitted by bounded quasi-Newton (L-BFGS-B) from several
starting points, with a Nelder-Mead fallback whenever a line search fails;
the unit Shiha family uses its analytic score, the competitors central
finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import families
from .core import UShParams, ush_raw_moment
from .families import DEFAULT_PARAM_BOUNDS, DistFamily, ParamVector, get_family
from ._rand import stream

__all__ = [
    "BootstrapCI",
    "FitResult",
    "bootstrap_ci",
    "fit_mle",
    "ush_log_likelihood",
    "ush_score",
]

_BIG = 1e12  # finite penalty for non-finite likelihoods inside the optimizer
_PGTOL = 1e-8
_FTOL = 1e-12


def _values(data) -> np.ndarray:
    arr = np.asarray(getattr(data, "values", data), dtype=float)
    if arr.size == 0:
        raise ValueError("empty sample")
    if ((arr <= 0) | (arr > 1)).any():
        raise ValueError("observations must lie in (0, 1]")
    return arr


def ush_log_likelihood(data, p: UShParams) -> float:
    """Sample log-likelihood of the unit Shiha law.

    n ln(omega) - n ln(omega + 3 eta)
      + sum ln[omega x^(omega-1) + (2 eta - 8 omega eta ln x) x^(2 omega - 1)]
    """
    x = _values(data)
    w, e = p.omega, p.eta
    n = x.size
    lx = np.log(x)
    t = np.exp(w * lx)
    inner = w + (2.0 * e - 8.0 * w * e * lx) * t
    return (n * math.log(w) - n * math.log(p.weight_total)
            + float(np.sum((w - 1.0) * lx + np.log(inner))))


def ush_score(data, p: UShParams) -> np.ndarray:
    """Analytic gradient of :func:`ush_log_likelihood` in (omega, eta)."""
    x = _values(data)
    w, e = p.omega, p.eta
    n = x.size
    lx = np.log(x)
    t = np.exp(w * lx)
    coef = 2.0 * e - 8.0 * w * e * lx
    inner = w + coef * t
    d_omega = (n / w - n / p.weight_total
               + float(np.sum(((1.0 + w * lx) + t * (2.0 * lx * coef - 8.0 * e * lx))
                              / inner)))
    d_eta = (-3.0 * n / p.weight_total
             + float(np.sum((2.0 - 8.0 * w * lx) * t / inner)))
    return np.array([d_omega, d_eta])


@dataclass(frozen=True)
class FitResult:
    """Outcome of one maximum-likelihood fit."""

    family: DistFamily
    estimates: ParamVector
    log_lik: float
    converged: bool
    at_bound: tuple[bool, ...]
    iterations: int
    start_point: ParamVector
    message: str = ""

    @property
    def k(self) -> int:
        return self.family.param_count


@dataclass(frozen=True)
class BootstrapCI:
    """Percentile bootstrap confidence intervals, one per parameter."""

    level: float
    intervals: tuple[tuple[float, float], ...]
    resamples: int
    n_failed: int
    valid: bool

    def contains(self, truth) -> tuple[bool, ...]:
        truth = np.atleast_1d(truth)
        return tuple(bool(lo <= t <= hi)
                     for (lo, hi), t in zip(self.intervals, truth))


# ---------------------------------------------------------------------------
# objective construction
# ---------------------------------------------------------------------------

def _neg_loglik(family: DistFamily, x: np.ndarray):
    tag = family.tag

    if tag == "USh":
        def fun(theta: np.ndarray) -> float:
            p = UShParams(theta[0], theta[1], allow_boundary=True)
            val = ush_log_likelihood(x, p)
            return -val if math.isfinite(val) else _BIG

        def jac(theta: np.ndarray) -> np.ndarray:
            p = UShParams(theta[0], theta[1], allow_boundary=True)
            g = -ush_score(x, p)
            return np.where(np.isfinite(g), g, 0.0)

        return fun, jac

    def fun(theta: np.ndarray) -> float:
        with np.errstate(all="ignore"):
            ll = np.sum(families.dist_log_pdf(family, x, theta))
        return -float(ll) if math.isfinite(ll) else _BIG

    return fun, None


def _central_diff_grad(fun, theta: np.ndarray, bounds) -> np.ndarray:
    """Central differences with per-coordinate step max(1e-6, 1e-6 |theta_i|)."""
    g = np.empty_like(theta)
    for i in range(theta.size):
        h = max(1e-6, 1e-6 * abs(theta[i]))
        up = theta.copy()
        dn = theta.copy()
        up[i] = min(theta[i] + h, bounds[i][1])
        dn[i] = max(theta[i] - h, bounds[i][0])
        span = up[i] - dn[i]
        g[i] = (fun(up) - fun(dn)) / span if span > 0 else 0.0
    return g


def _at_bound_flags(theta, bounds) -> tuple[bool, ...]:
    flags = []
    for v, (lo, hi) in zip(theta, bounds):
        tol_lo = 1e-6 * max(1.0, abs(lo))
        tol_hi = 1e-6 * max(1.0, abs(hi))
        flags.append(bool(v - lo <= tol_lo or hi - v <= tol_hi))
    return tuple(flags)


def _moment_guided_ush_starts(x: np.ndarray) -> list[tuple[float, float]]:
    """Solve mean(omega; eta) = sample mean for omega at a few fixed eta."""
    target = float(np.mean(x))
    starts = []
    for eta in (0.01, 1.0, 10.0):
        def g(w: float) -> float:
            return ush_raw_moment(1, UShParams(w, eta)) - target

        lo, hi = 1e-4, 999.0
        try:
            if g(lo) * g(hi) < 0:
                w0 = optimize.brentq(g, lo, hi, xtol=1e-9, maxiter=100)
                starts.append((w0, eta))
        except (ValueError, RuntimeError):
            continue
    return starts


def default_starts(family, data=None) -> list[tuple[float, ...]]:
    """Data-independent multistart grid, plus moment-guided points for USh
    and a method-of-moments point for Beta when data is given."""
    fam = get_family(family)
    tag = fam.tag
    starts: list[tuple[float, ...]]
    if tag == "USh":
        starts = [(0.5, 0.5), (1.0, 1.0), (2.0, 0.5)]
        if data is not None:
            starts = _moment_guided_ush_starts(_values(data)) + starts
    elif tag == "Kw":
        starts = [(1.0, 1.0), (0.5, 0.5), (2.0, 2.0), (1.0, 0.3), (3.0, 1.0)]
    elif tag == "UB":
        starts = [(1.0, 1.0), (2.0, 5.0), (0.5, 0.5), (1.0, 4.0), (3.0, 1.0)]
    elif tag == "UE":
        starts = [(1.0, 1.0), (1.0, 0.2), (10.0, 0.1), (100.0, 0.01), (3.0, 0.5)]
    elif tag == "EUEHL":
        starts = [(1.0, 1.0, 1.0), (0.5, 1.0, 2.0), (0.1, 1.0, 10.0),
                  (2.0, 2.0, 1.0), (0.3, 1.0, 3.0)]
    elif tag == "UEL":
        starts = [(1.0, 1.0, 1.0), (10.0, 0.1, 1.0), (50.0, 0.02, 1.2),
                  (100.0, 0.01, 1.5), (2.0, 0.5, 1.0)]
    elif tag == "Beta":
        starts = [(1.0, 1.0), (2.0, 2.0), (0.5, 1.5), (5.0, 2.0)]
        if data is not None:
            x = _values(data)
            m, v = float(np.mean(x)), float(np.var(x))
            if 0 < v < m * (1 - m):
                c = m * (1 - m) / v - 1.0
                starts.insert(0, (m * c, (1 - m) * c))
    elif tag == "TL":
        starts = [(1.0,), (0.5,), (2.0,), (5.0,)]
    else:  # pragma: no cover
        raise ValueError(tag)
    return starts


def fit_mle(data, family="USh", bounds=None, starts=None) -> FitResult:
    """Maximize the log-likelihood of ``family`` over its box bounds.

    Runs L-BFGS-B from every start (analytic gradient for the unit Shiha
    family, central differences otherwise), falls back to Nelder-Mead when
    a run fails, and returns the best optimum found.  Deterministic given
    the start list.  A degenerate sample (zero variance) or failure of all
    starts yields ``converged=False`` together with a diagnostic message.
    """
    fam = get_family(family)
    x = _values(data)
    k = fam.param_count
    if bounds is None:
        bounds = (DEFAULT_PARAM_BOUNDS,) * k
    bounds = tuple((float(lo), float(hi)) for lo, hi in bounds)
    if len(bounds) != k:
        raise ValueError(f"{fam.tag} needs {k} bound pairs")
    if starts is None:
        starts = default_starts(fam, x)
    starts = [tuple(float(v) for v in s) for s in starts]
    if not starts:
        raise ValueError("no starting points")

    first_start = ParamVector.of(np.clip(starts[0], [b[0] for b in bounds],
                                         [b[1] for b in bounds]), bounds)
    if x.size > 1 and float(np.ptp(x)) == 0.0:
        return FitResult(fam, first_start, -math.inf, False, (False,) * k, 0,
                         first_start, "degenerate sample: all observations identical")

    fun, jac = _neg_loglik(fam, x)
    if jac is None:
        def jac(theta, _fun=fun, _bounds=bounds):
            return _central_diff_grad(_fun, np.asarray(theta, dtype=float), _bounds)

    best = None
    best_start = None
    failures = []
    for s in starts:
        s = np.clip(s, [b[0] for b in bounds], [b[1] for b in bounds])
        res = optimize.minimize(fun, s, jac=jac, method="L-BFGS-B", bounds=bounds,
                                options={"maxiter": 500, "ftol": _FTOL,
                                         "gtol": _PGTOL})
        if not res.success or not math.isfinite(res.fun):
            alt = optimize.minimize(fun, s, method="Nelder-Mead", bounds=bounds,
                                    options={"maxiter": 2000, "xatol": 1e-10,
                                             "fatol": 1e-10})
            if alt.fun < res.fun or not math.isfinite(res.fun):
                res = alt
        if not math.isfinite(res.fun) or res.fun >= _BIG / 2:
            failures.append(f"start {tuple(s)}: {res.message}")
            continue
        if best is None or res.fun < best.fun:
            best = res
            best_start = s

    if best is None:
        return FitResult(fam, first_start, -math.inf, False, (False,) * k, 0,
                         first_start,
                         "all starts failed: " + "; ".join(failures))

    theta = np.clip(best.x, [b[0] for b in bounds], [b[1] for b in bounds])
    log_lik = float(np.sum(families.dist_log_pdf(fam, x, theta)))
    return FitResult(
        family=fam,
        estimates=ParamVector.of(theta, bounds),
        log_lik=log_lik,
        converged=bool(best.success) and math.isfinite(log_lik),
        at_bound=_at_bound_flags(theta, bounds),
        iterations=int(getattr(best, "nit", 0)),
        start_point=ParamVector.of(best_start, bounds),
        message=str(best.message),
    )


def bootstrap_ci(data, family="USh", resamples: int = 100, level: float = 0.95,
                 seed=None, starts=None, center: FitResult | None = None) -> BootstrapCI:
    """Nonparametric percentile bootstrap intervals for the MLE.

    Each resample draws n observations with replacement (stream derived from
    ``(seed, resample_index)``) and is refitted, warm-started at the
    full-sample estimate.  Unit Shiha resamples are solved by a damped
    Newton iteration on the analytic likelihood equations (same optimum,
    batched across resamples for speed); other families rerun
    :func:`fit_mle`.  Failed refits are skipped and counted; if more than
    half fail the interval is reported invalid.
    """
    if resamples < 2:
        raise ValueError("resamples must be >= 2")
    if not 0.0 < level < 1.0:
        raise ValueError("level must be in (0, 1)")
    fam = get_family(family)
    x = _values(data)
    n = x.size
    if center is None:
        center = fit_mle(x, fam, starts=starts)
    if center.converged:
        warm = [tuple(center.estimates.values)]
    else:
        warm = starts or default_starts(fam, x)

    k = fam.param_count
    idx = np.empty((resamples, n), dtype=np.intp)
    for b in range(resamples):
        idx[b] = stream(seed, 0xB007, b).integers(0, n, n)
    res_matrix = x[idx]
    degenerate = np.ptp(res_matrix, axis=1) == 0.0

    ests = np.full((resamples, k), np.nan)
    if fam.tag == "USh" and center.converged:
        live = ~degenerate
        theta, ok = _newton_ush_batch(res_matrix[live], np.asarray(warm[0]),
                                      center.estimates.bounds)
        sub = np.full((int(live.sum()), k), np.nan)
        sub[ok] = theta[ok]
        ests[live] = sub
        failed = int(degenerate.sum()) + int((~ok).sum())
    else:
        failed = int(degenerate.sum())
        for b in range(resamples):
            if degenerate[b]:
                continue
            fit = fit_mle(res_matrix[b], fam, starts=warm)
            if fit.converged:
                ests[b] = fit.estimates.values
            else:
                failed += 1

    valid = failed <= resamples // 2
    if valid:
        good = ests[~np.isnan(ests).any(axis=1)]
        alpha = (1.0 - level) / 2.0
        lo = np.quantile(good, alpha, axis=0)
        hi = np.quantile(good, 1.0 - alpha, axis=0)
        intervals = tuple((float(a), float(b)) for a, b in zip(lo, hi))
    else:
        intervals = tuple((math.nan, math.nan) for _ in range(k))
    return BootstrapCI(level=level, intervals=intervals, resamples=resamples,
                       n_failed=failed, valid=valid)


# ---------------------------------------------------------------------------
# batched Newton solver for unit Shiha likelihood equations
# ---------------------------------------------------------------------------

def _batch_loglik(w, e, lx):
    n = lx.shape[1]
    with np.errstate(over="ignore", under="ignore"):
        t = np.exp(w * lx)
        inner = w + (2.0 * e - 8.0 * w * e * lx) * t
        ll = (n * np.log(w[:, 0]) - n * np.log(w[:, 0] + 3.0 * e[:, 0])
              + np.sum((w - 1.0) * lx + np.log(inner), axis=1))
    return ll


def _batch_score(w, e, lx):
    n = lx.shape[1]
    with np.errstate(over="ignore", under="ignore"):
        t = np.exp(w * lx)
        coef = 2.0 * e - 8.0 * w * e * lx
        inner = w + coef * t
        gw = (n / w[:, 0] - n / (w[:, 0] + 3.0 * e[:, 0])
              + np.sum(((1.0 + w * lx) + t * (2.0 * lx * coef - 8.0 * e * lx))
                       / inner, axis=1))
        ge = (-3.0 * n / (w[:, 0] + 3.0 * e[:, 0])
              + np.sum((2.0 - 8.0 * w * lx) * t / inner, axis=1))
    return gw, ge


def _projected_grad(theta, gw, ge, bounds):
    (w_lo, w_hi), (e_lo, e_hi) = bounds
    pgw = np.where((theta[:, 0] <= w_lo) & (gw < 0), 0.0,
                   np.where((theta[:, 0] >= w_hi) & (gw > 0), 0.0, gw))
    pge = np.where((theta[:, 1] <= e_lo) & (ge < 0), 0.0,
                   np.where((theta[:, 1] >= e_hi) & (ge > 0), 0.0, ge))
    return pgw, pge


def _newton_ush_batch(res_matrix: np.ndarray, start: np.ndarray, bounds,
                      grad_tol: float = 1e-6, max_iter: int = 60):
    """Maximize the unit Shiha likelihood on many resamples at once.

    Damped (backtracking) Newton on the analytic score, with the 2x2 Hessian
    from central differences of the score, projected onto the box bounds.
    A row converges when its projected gradient falls below ``grad_tol``
    scaled by the likelihood magnitude, or when backtracking can no longer
    improve a near-stationary point (the double-precision floor on flat
    ridges).  Converged rows drop out of the working set.
    """
    (w_lo, w_hi), (e_lo, e_hi) = bounds
    lx_all = np.log(res_matrix)
    m = lx_all.shape[0]
    theta_all = np.tile(np.asarray(start, dtype=float), (m, 1))
    theta_all[:, 0] = np.clip(theta_all[:, 0], w_lo, w_hi)
    theta_all[:, 1] = np.clip(theta_all[:, 1], e_lo, e_hi)
    done_all = np.zeros(m, dtype=bool)
    stall_all = np.zeros(m, dtype=np.int8)
    ll_all = _batch_loglik(theta_all[:, :1], theta_all[:, 1:], lx_all)

    active = np.arange(m)
    for _ in range(max_iter):
        lx = lx_all[active]
        th = theta_all[active]
        llv = ll_all[active]
        gw, ge = _batch_score(th[:, :1], th[:, 1:], lx)
        pgw, pge = _projected_grad(th, gw, ge, bounds)
        gtol = grad_tol * np.maximum(1.0, np.abs(llv))
        conv = np.maximum(np.abs(pgw), np.abs(pge)) < gtol
        loose = np.maximum(np.abs(pgw), np.abs(pge)) < 1e-2 * np.maximum(1.0, np.abs(llv))
        conv |= (stall_all[active] >= 2) & loose
        if conv.any():
            done_all[active[conv]] = True
            keep = ~conv
            active = active[keep]
            if active.size == 0:
                break
            th = th[keep]
            lx = lx[keep]
            llv = llv[keep]
            gw, ge = gw[keep], ge[keep]
            pgw, pge = pgw[keep], pge[keep]

        w = th[:, :1]
        e = th[:, 1:]
        hw = 1e-5 * np.maximum(1.0, np.abs(w))
        he = 1e-5 * np.maximum(1.0, np.abs(e))
        gw_p, ge_p = _batch_score(w + hw, e, lx)
        gw_m, ge_m = _batch_score(w - hw, e, lx)
        h_ww = (gw_p - gw_m) / (2.0 * hw[:, 0])
        h_ew = (ge_p - ge_m) / (2.0 * hw[:, 0])
        gw_p2, ge_p2 = _batch_score(w, e + he, lx)
        gw_m2, ge_m2 = _batch_score(w, e - he, lx)
        h_we = 0.5 * ((gw_p2 - gw_m2) / (2.0 * he[:, 0]) + h_ew)
        h_ee = (ge_p2 - ge_m2) / (2.0 * he[:, 0])
        # ascent direction: solve (-H) s = g in the space of free coordinates;
        # a coordinate pinned at a bound with an outward gradient is frozen
        a, b_, d = -h_ww, -h_we, -h_ee
        det = a * d - b_ * b_
        spd = (a > 0) & (det > 0)
        safe_det = np.where(det != 0, det, 1.0)
        sw = np.where(spd, (d * pgw - b_ * pge) / safe_det, pgw)
        se = np.where(spd, (a * pge - b_ * pgw) / safe_det, pge)
        w_frozen = (pgw == 0.0) & (gw != 0.0)
        e_frozen = (pge == 0.0) & (ge != 0.0)
        sw = np.where(e_frozen & ~w_frozen,
                      np.where(a > 0, pgw / np.where(a > 0, a, 1.0), pgw), sw)
        se = np.where(e_frozen, 0.0, se)
        se = np.where(w_frozen & ~e_frozen,
                      np.where(d > 0, pge / np.where(d > 0, d, 1.0), pge), se)
        sw = np.where(w_frozen, 0.0, sw)
        norm = np.maximum(np.abs(sw) / np.maximum(1.0, np.abs(th[:, 0])),
                          np.abs(se) / np.maximum(1.0, np.abs(th[:, 1])))
        scale = np.where(norm > 100.0, 100.0 / np.maximum(norm, 1e-300), 1.0)
        sw *= scale
        se *= scale

        alpha = np.ones(active.size)
        improved = np.zeros(active.size, dtype=bool)
        cand = th.copy()
        ll_new = llv.copy()
        for _bt in range(20):
            trial = ~improved
            if not trial.any():
                break
            cw = np.clip(th[trial, 0] + alpha[trial] * sw[trial], w_lo, w_hi)
            ce = np.clip(th[trial, 1] + alpha[trial] * se[trial], e_lo, e_hi)
            ll_t = _batch_loglik(cw[:, None], ce[:, None], lx[trial])
            good = ll_t >= llv[trial]
            tidx = np.flatnonzero(trial)
            acc = tidx[good]
            cand[acc, 0] = cw[good]
            cand[acc, 1] = ce[good]
            ll_new[acc] = ll_t[good]
            improved[acc] = True
            alpha[tidx[~good]] *= 0.25
        gain = ll_new - llv
        stalled = gain <= 1e-11 * (1.0 + np.abs(llv))
        stall_all[active] = np.where(stalled, stall_all[active] + 1, 0)
        theta_all[active] = cand
        ll_all[active] = ll_new

    return theta_all, done_all
