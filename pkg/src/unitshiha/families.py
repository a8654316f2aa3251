"""Eight unit-interval distribution families under one evaluation contract.

Besides the unit Shiha law itself the registry covers the classical
competitors used in the benchmark comparisons: Kumaraswamy (Kw), the
two-parameter unit Bilal (UB), unit exponential (UE), exponentiated unit
exponentiated half-logistic (EUEHL), unit exponentiated Lomax (UEL), Beta,
and Topp-Leone (TL).

Only densities were taken as given; every CDF here is an antiderivative
validated against adaptive quadrature of its density (see the test suite),
since hand-derived closed forms are error-prone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import core
from .core import UShParams
from .special import log_gamma, reg_inc_beta

__all__ = [
    "DEFAULT_PARAM_BOUNDS",
    "DistFamily",
    "FAMILIES",
    "FAMILY_ORDER",
    "ParamVector",
    "dist_cdf",
    "dist_log_pdf",
    "dist_pdf",
    "dist_quantile",
    "get_family",
]

DEFAULT_PARAM_BOUNDS = (1e-6, 1000.0)


@dataclass(frozen=True)
class DistFamily:
    """A named family with its parameter arity and labels."""

    tag: str
    param_names: tuple[str, ...]

    @property
    def param_count(self) -> int:
        return len(self.param_names)


FAMILY_ORDER = ("USh", "Kw", "UB", "UE", "EUEHL", "UEL", "Beta", "TL")

FAMILIES: dict[str, DistFamily] = {
    "USh": DistFamily("USh", ("omega", "eta")),
    "Kw": DistFamily("Kw", ("omega", "eta")),
    "UB": DistFamily("UB", ("omega", "eta")),
    "UE": DistFamily("UE", ("omega", "eta")),
    "EUEHL": DistFamily("EUEHL", ("omega", "eta", "alpha")),
    "UEL": DistFamily("UEL", ("omega", "eta", "alpha")),
    "Beta": DistFamily("Beta", ("omega", "eta")),
    "TL": DistFamily("TL", ("omega",)),
}

_ALIASES = {tag.lower(): tag for tag in FAMILIES}


def get_family(family) -> DistFamily:
    if isinstance(family, DistFamily):
        return family
    tag = _ALIASES.get(str(family).lower())
    if tag is None:
        raise ValueError(
            f"unknown family {family!r}; known: {', '.join(FAMILY_ORDER)}"
        )
    return FAMILIES[tag]


@dataclass(frozen=True)
class ParamVector:
    """Parameter values with their box bounds."""

    values: tuple[float, ...]
    bounds: tuple[tuple[float, float], ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        bnds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(vals) != len(bnds):
            raise ValueError("values and bounds must have equal length")
        for v, (lo, hi) in zip(vals, bnds):
            if not lo <= v <= hi:
                raise ValueError(f"value {v!r} outside bounds [{lo!r}, {hi!r}]")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "bounds", bnds)

    @classmethod
    def of(cls, values, bounds=None) -> "ParamVector":
        values = tuple(float(v) for v in np.atleast_1d(values))
        if bounds is None:
            bounds = (DEFAULT_PARAM_BOUNDS,) * len(values)
        return cls(values, tuple(bounds))

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def _theta(family: DistFamily, theta) -> tuple[float, ...]:
    vals = tuple(float(v) for v in (theta.values if isinstance(theta, ParamVector)
                                    else np.atleast_1d(theta)))
    if len(vals) != family.param_count:
        raise ValueError(
            f"{family.tag} takes {family.param_count} parameter(s) "
            f"({', '.join(family.param_names)}), got {len(vals)}"
        )
    if any(not math.isfinite(v) or v <= 0 for v in vals):
        raise ValueError(f"{family.tag} parameters must be positive, got {vals}")
    return vals


def _prep_x(x, open_interval: bool = True):
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).astype(float)
    if open_interval and ((arr <= 0) | (arr >= 1)).any():
        raise ValueError("x must lie strictly inside (0, 1)")
    return arr, scalar


def _ret(out, scalar):
    return float(np.asarray(out).reshape(-1)[0]) if scalar else out


# ---------------------------------------------------------------------------
# per-family log-densities and CDFs (x validated, arrays in (0,1))
# ---------------------------------------------------------------------------

def _ush_logpdf(x, w, e):
    return core.ush_log_pdf(x, UShParams(w, e, allow_boundary=True))


def _ush_cdf(x, w, e):
    return core.ush_cdf(x, UShParams(w, e, allow_boundary=True))


def _kw_logpdf(x, w, e):
    return math.log(w * e) + (e - 1.0) * np.log(x) + (w - 1.0) * np.log1p(-x ** e)


def _kw_cdf(x, w, e):
    return -np.expm1(w * np.log1p(-x ** e))


def _ub_logpdf(x, w, e):
    r = w / e
    return math.log(6.0 * r) + np.log1p(-x ** r) + (2.0 * r - 1.0) * np.log(x)


def _ub_cdf(x, w, e):
    t = x ** (w / e)
    return t * t * (3.0 - 2.0 * t)


def _ue_exponent(x, e):
    # eta * ln((1+x)/(1-x)), stable for x near 1
    return e * (np.log1p(x) - np.log1p(-x))


def _ue_logpdf(x, w, e):
    s = _ue_exponent(x, e)
    with np.errstate(over="ignore"):
        tail = -w * np.expm1(s)  # omega * (1 - z**eta)
    out = (math.log(2.0 * w * e) - np.log1p(-x) - np.log1p(x) + s + tail)
    return np.where(np.isfinite(out), out, -np.inf)


def _ue_cdf(x, w, e):
    s = _ue_exponent(x, e)
    with np.errstate(over="ignore"):
        expo = -w * np.expm1(s)
    return np.where(expo < -745.0, 1.0, -np.expm1(expo))


def _euehl_log_one_minus_wpow(x, w, e):
    """ln(1 - ((1-x^w)/(1+x^w))^e), stable when x^w underflows.

    For t = x^w below working precision the quantity is e*2t to first
    order, so its log is computed from ln t = w ln x directly.
    """
    ln_t = w * np.log(x)
    t = np.exp(ln_t)
    log_ratio = np.log1p(-t) - np.log1p(t)
    with np.errstate(divide="ignore"):
        exact = np.log(-np.expm1(e * log_ratio))
    asymptotic = math.log(2.0 * e) + ln_t
    return np.where(t > 1e-14, exact, asymptotic)


def _euehl_logpdf(x, w, e, a):
    t = x ** w
    log_w = np.log1p(-t) - np.log1p(t)  # ln of the half-logistic ratio
    return (math.log(2.0 * w * e * a) + (w - 1.0) * np.log(x)
            - 2.0 * np.log1p(t) + (e - 1.0) * log_w
            + (a - 1.0) * _euehl_log_one_minus_wpow(x, w, e))


def _euehl_cdf(x, w, e, a):
    return np.exp(a * _euehl_log_one_minus_wpow(x, w, e))


def _uel_logpdf(x, w, e, a):
    log_u = np.log1p(-e * np.log(x))  # u = 1 - eta ln x >= 1
    log_one_minus = np.log(-np.expm1(-w * log_u))
    return (math.log(w * e * a) - np.log(x) - (w + 1.0) * log_u
            + (a - 1.0) * log_one_minus)


def _uel_cdf(x, w, e, a):
    log_u = np.log1p(-e * np.log(x))
    return -np.expm1(a * np.log(-np.expm1(-w * log_u)))


def _beta_logpdf(x, w, e):
    ln_b = log_gamma(w) + log_gamma(e) - log_gamma(w + e)
    return (w - 1.0) * np.log(x) + (e - 1.0) * np.log1p(-x) - ln_b


def _beta_cdf(x, w, e):
    return np.array([reg_inc_beta(w, e, xi) for xi in np.atleast_1d(x)])


def _tl_logpdf(x, w):
    return (math.log(2.0 * w) + (w - 1.0) * np.log(x) + np.log1p(-x)
            + (w - 1.0) * np.log(2.0 - x))


def _tl_cdf(x, w):
    return (x * (2.0 - x)) ** w


_LOGPDF = {
    "USh": _ush_logpdf,
    "Kw": _kw_logpdf,
    "UB": _ub_logpdf,
    "UE": _ue_logpdf,
    "EUEHL": _euehl_logpdf,
    "UEL": _uel_logpdf,
    "Beta": _beta_logpdf,
    "TL": _tl_logpdf,
}

_CDF = {
    "USh": _ush_cdf,
    "Kw": _kw_cdf,
    "UB": _ub_cdf,
    "UE": _ue_cdf,
    "EUEHL": _euehl_cdf,
    "UEL": _uel_cdf,
    "Beta": _beta_cdf,
    "TL": _tl_cdf,
}


# ---------------------------------------------------------------------------
# common contract
# ---------------------------------------------------------------------------

def dist_log_pdf(family, x, theta):
    """Log-density of ``family`` at x in (0, 1); -inf where the density is 0."""
    fam = get_family(family)
    vals = _theta(fam, theta)
    arr, scalar = _prep_x(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.asarray(_LOGPDF[fam.tag](arr, *vals), dtype=float)
    out = np.where(np.isnan(out), -np.inf, out)
    return _ret(out, scalar)


def dist_pdf(family, x, theta):
    """Density of ``family`` at x in (0, 1)."""
    fam = get_family(family)
    vals = _theta(fam, theta)
    arr, scalar = _prep_x(x)
    if fam.tag == "USh":
        out = np.asarray(core.ush_pdf(arr, UShParams(*vals, allow_boundary=True)))
    else:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = np.exp(np.asarray(_LOGPDF[fam.tag](arr, *vals), dtype=float))
        out = np.where(np.isnan(out), 0.0, out)
    return _ret(out, scalar)


def dist_cdf(family, x, theta):
    """Distribution function of ``family``; clamps to 0/1 outside (0, 1)."""
    fam = get_family(family)
    vals = _theta(fam, theta)
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).astype(float)
    out = np.empty_like(arr)
    out[np.isnan(arr)] = np.nan
    lo = arr <= 0.0
    hi = arr >= 1.0
    out[lo] = 0.0
    out[hi] = 1.0
    mid = ~(lo | hi) & ~np.isnan(arr)
    if mid.any():
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.asarray(_CDF[fam.tag](arr[mid], *vals), dtype=float)
        out[mid] = np.clip(val, 0.0, 1.0)
    return _ret(out, scalar)


def dist_quantile(family, prob, theta, tol: float = 1e-10):
    """Quantile of ``family`` by bracketed root finding on the CDF.

    The unit Shiha family uses its dedicated solver; the competitors share a
    generic log-space bisection, which is all the benchmarking plots need.
    """
    fam = get_family(family)
    vals = _theta(fam, theta)
    if fam.tag == "USh":
        return core.ush_quantile(prob, UShParams(*vals, allow_boundary=True), tol=tol)
    arr = np.asarray(prob, dtype=float)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    if ((flat <= 0) | (flat >= 1) | ~np.isfinite(flat)).any():
        raise ValueError("quantile requires 0 < prob < 1")

    def solve(q: float) -> float:
        def g(t: float) -> float:
            return dist_cdf(fam, math.exp(t), vals) - q

        hi = -1e-18
        if g(hi) <= 0.0:
            return 1.0
        root = optimize.brentq(g, -700.0, hi, xtol=1e-14, rtol=1e-15, maxiter=200)
        return math.exp(root)

    out = np.array([solve(q) for q in flat]).reshape(np.atleast_1d(arr).shape)
    return _ret(out, scalar)
