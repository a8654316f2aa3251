"""The Shiha and unit Shiha distributions.

The Shiha law on (0, inf) is the three-component mixture

    omega/(omega+3*eta) * Exp(omega)
  + eta/(omega+3*eta)   * Exp(2*omega)
  + 2*eta/(omega+3*eta) * Gamma(2, rate=2*omega)

and the unit Shiha law is its image under x = exp(-y), supported on (0, 1].
The mixture form gives an exact sampler and closed forms for moments,
stress-strength reliability and the moment generating function; the
quantile function and differential entropy are evaluated numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .datasets import UnitSample

__all__ = [
    "ConvergenceError",
    "MomentSummary",
    "StressStrengthInput",
    "UShParams",
    "rejection_envelope_constant",
    "sh_cdf",
    "sh_pdf",
    "ush_cdf",
    "ush_entropy",
    "ush_hazard",
    "ush_log_pdf",
    "ush_mgf",
    "ush_moment_summary",
    "ush_pdf",
    "ush_quantile",
    "ush_raw_moment",
    "ush_sample",
    "ush_sample_rejection",
    "ush_stress_strength",
]

# exp(t) underflows to 0 below roughly -745.1; keep the quantile bracket above it
_LOG_FLOOR = -744.0
_MGF_TERM_CAP = 200


class ConvergenceError(RuntimeError):
    """An iterative numerical routine failed to reach its tolerance."""


@dataclass(frozen=True)
class UShParams:
    """Shape parameters (omega, eta) of the Shiha / unit Shiha family.

    ``eta == 0`` collapses the family to Beta(omega, 1) and is admitted only
    through ``allow_boundary=True``; the general family has eta > 0.
    """

    omega: float
    eta: float
    allow_boundary: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        omega = float(self.omega)
        eta = float(self.eta)
        if not (math.isfinite(omega) and omega > 0.0):
            raise ValueError(f"omega must be a positive finite real, got {self.omega!r}")
        if not (math.isfinite(eta) and eta >= 0.0):
            raise ValueError(f"eta must be a finite real >= 0, got {self.eta!r}")
        if eta == 0.0 and not self.allow_boundary:
            raise ValueError(
                "eta = 0 is the Beta(omega, 1) boundary case; "
                "pass allow_boundary=True to opt in"
            )
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "eta", eta)

    @property
    def weight_total(self) -> float:
        """The normalising constant omega + 3*eta."""
        return self.omega + 3.0 * self.eta

    @property
    def mixture_weights(self) -> tuple[float, float, float]:
        """Component weights (omega, eta, 2*eta) / (omega + 3*eta)."""
        s = self.weight_total
        return (self.omega / s, self.eta / s, 2.0 * self.eta / s)


@dataclass(frozen=True)
class MomentSummary:
    """First four raw moments and the derived shape measures."""

    raw_moments: tuple[float, float, float, float]
    mean: float
    variance: float
    skewness: float
    kurtosis: float


@dataclass(frozen=True)
class StressStrengthInput:
    """Parameter pair for P(stress < strength) with independent unit Shiha laws."""

    strength: UShParams
    stress: UShParams


def _asarray(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} must be finite")
    return arr


def _scalar_or_array(out, scalar: bool):
    return float(np.asarray(out).reshape(-1)[0]) if scalar else out


# ---------------------------------------------------------------------------
# Shiha base distribution on (0, inf)
# ---------------------------------------------------------------------------

def sh_pdf(y, p: UShParams):
    """Density of the Shiha distribution at ``y >= 0``."""
    arr = _asarray(y, "y")
    if (arr < 0).any():
        raise ValueError("sh_pdf requires y >= 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    w, e = p.omega, p.eta
    emy = np.exp(-w * arr)
    out = (w / p.weight_total) * (w + (2.0 * e + 8.0 * w * e * arr) * emy) * emy
    return _scalar_or_array(out, scalar)


def sh_cdf(y, p: UShParams):
    """Distribution function of the Shiha distribution at ``y >= 0``."""
    arr = _asarray(y, "y")
    if (arr < 0).any():
        raise ValueError("sh_cdf requires y >= 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    w, e = p.omega, p.eta
    emy = np.exp(-w * arr)
    out = 1.0 - (w + (3.0 * e + 4.0 * w * e * arr) * emy) * emy / p.weight_total
    return _scalar_or_array(np.clip(out, 0.0, 1.0), scalar)


# ---------------------------------------------------------------------------
# unit Shiha on (0, 1]
# ---------------------------------------------------------------------------

def _check_unit_open_closed(arr: np.ndarray, op: str):
    if (arr <= 0).any() or (arr > 1).any():
        raise ValueError(f"{op} requires 0 < x <= 1")


def ush_pdf(x, p: UShParams):
    """Density of the unit Shiha distribution on (0, 1].

    For omega < 1 the density diverges as x -> 0+; evaluation at any
    representable positive x still returns the (possibly huge) finite value.
    Use :func:`ush_log_pdf` where overflow or underflow is a concern.
    """
    arr = _asarray(x, "x")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    _check_unit_open_closed(arr, "ush_pdf")
    w, e = p.omega, p.eta
    lx = np.log(arr)
    t = np.exp(w * lx)  # x**omega
    out = (w / p.weight_total) * np.exp((w - 1.0) * lx) * (w + (2.0 * e - 8.0 * w * e * lx) * t)
    return _scalar_or_array(out, scalar)


def ush_log_pdf(x, p: UShParams):
    """Log-density of the unit Shiha distribution, stable across (0, 1].

    The two positive terms of the density are combined with ``logaddexp``
    so the result stays finite where the density itself overflows
    (omega < 1, x -> 0) or underflows (omega > 1, x -> 0).
    """
    arr = _asarray(x, "x")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    _check_unit_open_closed(arr, "ush_log_pdf")
    w, e = p.omega, p.eta
    lx = np.log(arr)
    term1 = math.log(w) + (w - 1.0) * lx
    if e == 0.0:
        bracket = term1
    else:
        # 2*eta - 8*omega*eta*ln x = 2*eta*(1 - 4*omega*ln x) > 0 on (0, 1]
        term2 = math.log(2.0 * e) + np.log1p(-4.0 * w * lx) + (2.0 * w - 1.0) * lx
        bracket = np.logaddexp(term1, term2)
    out = math.log(w) - math.log(p.weight_total) + bracket
    return _scalar_or_array(out, scalar)


def ush_cdf(x, p: UShParams):
    """Distribution function of the unit Shiha law; total on the reals.

    Returns 0 for x <= 0 and 1 for x >= 1.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    w, e = p.omega, p.eta
    out = np.empty_like(arr)
    out[np.isnan(arr)] = np.nan
    lo = arr <= 0.0
    hi = arr >= 1.0
    out[lo] = 0.0
    out[hi] = 1.0
    mid = ~(lo | hi) & ~np.isnan(arr)
    if mid.any():
        xm = arr[mid]
        lx = np.log(xm)
        t = np.exp(w * lx)
        val = t * (w + (3.0 * e - 4.0 * w * e * lx) * t) / p.weight_total
        out[mid] = np.clip(val, 0.0, 1.0)
    return _scalar_or_array(out, scalar)


def ush_hazard(x, p: UShParams):
    """Hazard rate f(x) / (1 - F(x)) on (0, 1).

    The survival probability vanishes as x -> 1-, so the hazard diverges
    there; when cancellation drives the computed denominator to or below
    zero the function returns ``inf`` rather than NaN.
    """
    arr = _asarray(x, "x")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if (arr <= 0).any() or (arr >= 1).any():
        raise ValueError("ush_hazard requires 0 < x < 1")
    w, e = p.omega, p.eta
    lx = np.log(arr)
    t = np.exp(w * lx)
    num = w * np.exp((w - 1.0) * lx) * (w + 2.0 * e * t * (1.0 - 4.0 * w * lx))
    den = p.weight_total - t * (w + e * t * (3.0 - 4.0 * w * lx))
    out = np.full_like(arr, np.inf)
    ok = den > 0.0
    out[ok] = num[ok] / den[ok]
    return _scalar_or_array(out, scalar)


def ush_quantile(prob, p: UShParams, tol: float = 1e-10):
    """Invert the unit Shiha CDF.

    The CDF is continuous and strictly increasing on (0, 1), so the quantile
    is found by bracketed root finding; the search runs on log(x) to keep
    resolution for quantiles near zero.  The result satisfies
    ``|ush_cdf(x_p) - prob| <= tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    arr = np.asarray(prob, dtype=float)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    if (~np.isfinite(flat)).any() or (flat <= 0).any() or (flat >= 1).any():
        raise ValueError("ush_quantile requires 0 < prob < 1")
    out = np.array([_quantile_scalar(q, p, tol) for q in flat])
    out = out.reshape(np.atleast_1d(arr).shape)
    return _scalar_or_array(out, scalar)


def _quantile_scalar(q: float, p: UShParams, tol: float) -> float:
    def g(t: float) -> float:
        return ush_cdf(math.exp(t), p) - q

    hi = -1e-18
    if g(hi) <= 0.0:  # quantile is 1 up to rounding
        return 1.0
    try:
        root = optimize.brentq(g, _LOG_FLOOR, hi, xtol=1e-14, rtol=1e-15, maxiter=200)
    except (RuntimeError, ValueError) as exc:
        raise ConvergenceError(f"quantile search failed for prob={q!r}: {exc}") from exc
    x = math.exp(root)
    resid = abs(ush_cdf(x, p) - q)
    if resid > tol:
        raise ConvergenceError(
            f"quantile residual {resid:.3e} exceeds tol={tol:.3e} at prob={q!r}"
        )
    return x


# ---------------------------------------------------------------------------
# moments and related measures
# ---------------------------------------------------------------------------

def _moment_bracket(k: float, w: float, e: float) -> float:
    return w / (k + w) + 2.0 * e / (k + 2.0 * w) + 8.0 * w * e / (k + 2.0 * w) ** 2


def ush_raw_moment(k: int, p: UShParams) -> float:
    """E[X^k] for the unit Shiha law; k = 0 returns 1 by normalisation."""
    if k < 0 or k != int(k):
        raise ValueError("k must be a non-negative integer")
    w, e = p.omega, p.eta
    return (w / p.weight_total) * _moment_bracket(float(k), w, e)


def ush_moment_summary(p: UShParams) -> MomentSummary:
    """Mean, variance, and the moment-ratio skewness and kurtosis."""
    m1, m2, m3, m4 = (ush_raw_moment(k, p) for k in (1, 2, 3, 4))
    var = m2 - m1 * m1
    skew = (m3 - 3.0 * m2 * m1 + 2.0 * m1 ** 3) / var ** 1.5
    kurt = (m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 ** 4) / var ** 2
    return MomentSummary((m1, m2, m3, m4), m1, var, skew, kurt)


def ush_mgf(t: float, p: UShParams, terms: int | None = None) -> float:
    """Moment generating function E[exp(t X)] via its power series.

    The series is entire in t; by default terms are accumulated until the
    increment falls below 1e-14 relative to the partial sum, capped at 200.
    An explicit ``terms`` evaluates exactly that many terms.
    """
    if terms is not None and terms < 1:
        raise ValueError("terms must be >= 1")
    w, e = p.omega, p.eta
    scale = w / p.weight_total
    total = 0.0
    coeff = 1.0  # t**k / k!
    cap = terms if terms is not None else _MGF_TERM_CAP
    for k in range(cap):
        term = coeff * scale * _moment_bracket(float(k), w, e)
        total += term
        if terms is None and k >= 1 and abs(term) < 1e-14 * abs(total):
            break
        coeff *= t / (k + 1.0)
    return total


def ush_entropy(p: UShParams, tol: float = 1e-8) -> float:
    """Differential entropy -E[ln f(X)] of the unit Shiha law.

    Substituting y = -ln x turns the integral into an expectation under the
    Shiha base law, -E[ln f_Y(Y) + Y]: the x -> 0 endpoint singularity of
    the integrand (present whenever omega != 1) becomes a smooth exponential
    tail that adaptive quadrature handles at any parameter values.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    w, e = p.omega, p.eta
    c = w / p.weight_total
    log_c = math.log(c)

    def integrand(y: float) -> float:
        emy = math.exp(-w * y)
        inner = w + (2.0 * e + 8.0 * w * e * y) * emy
        f = c * inner * emy
        log_f = log_c - w * y + math.log(inner)
        return f * (log_f + y)

    val, err = integrate.quad(integrand, 0.0, np.inf, epsabs=0.1 * tol,
                              epsrel=1e-12, limit=300)
    if err > tol:
        raise ConvergenceError(
            f"entropy quadrature achieved abs error {err:.3e} > tol {tol:.3e}"
        )
    return -val


def ush_stress_strength(inp: StressStrengthInput) -> float:
    """P(stress < strength) for independent unit Shiha variables.

    Closed form of integral of f(x; strength) * F(x; stress) over (0, 1);
    antisymmetric in its arguments: R(a, b) + R(b, a) = 1.
    """
    w1, e1 = inp.strength.omega, inp.strength.eta
    w2, e2 = inp.stress.omega, inp.stress.eta
    front = w1 / ((w1 + 3.0 * e1) * (w2 + 3.0 * e2))
    s12 = 2.0 * w1 + w2
    s21 = w1 + 2.0 * w2
    s22 = 2.0 * w1 + 2.0 * w2
    total = (
        w1 * w2 / (w1 + w2)
        + w2 * e1 * (2.0 / s12 + 8.0 * w1 / s12 ** 2)
        + w1 * e2 * (3.0 / s21 + 4.0 * w2 / s21 ** 2)
        + e1 * e2 * (6.0 / s22 + (24.0 * w1 + 8.0 * w2) / s22 ** 2
                     + 64.0 * w1 * w2 / s22 ** 3)
    )
    return front * total


# ---------------------------------------------------------------------------
# random variate generation
# ---------------------------------------------------------------------------

def ush_sample(n: int, p: UShParams, seed=None) -> UnitSample:
    """Draw n i.i.d. unit Shiha variates by exact mixture sampling.

    Each variate consumes exactly three uniforms (component selector plus
    two exponential draws), so for a fixed seed the first ``m`` values of a
    size-``n`` sample coincide with the size-``m`` sample: nested subsamples
    are reproducible.  Output values lie in (0, 1].
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    x = _mixture_draws(rng, int(n), p)
    return UnitSample(x, label=f"ush(omega={p.omega:g}, eta={p.eta:g}) mixture sample",
                      source="sampler")


def _mixture_draws(rng: np.random.Generator, n: int, p: UShParams) -> np.ndarray:
    p1, p2, _ = p.mixture_weights
    u = rng.random((n, 3))
    e1 = -np.log1p(-u[:, 1])
    e2 = -np.log1p(-u[:, 2])
    w2 = 2.0 * p.omega
    y = np.where(u[:, 0] < p1, e1 / p.omega,
                 np.where(u[:, 0] < p1 + p2, e1 / w2, (e1 + e2) / w2))
    return np.exp(-y)


_ENVELOPE_SLACK = 1.0 + 4.0 / math.e  # sup of t - 4 t ln t plus the linear term's sup


def rejection_envelope_constant(p: UShParams) -> float:
    """Envelope constant M for the Beta(omega, 1) proposal.

    With t = x**omega the density ratio is
    f(x) / q(x) = omega/(omega+3 eta) * [1 + (2 eta/omega)(t - 4 t ln t)],
    and on (0, 1] the bracket is at most 1 + (2 eta/omega)(1 + 4/e), giving

        M = (omega + 2 eta (1 + 4/e)) / (omega + 3 eta) <= 1.648.

    The expected acceptance rate of the rejection sampler is exactly 1/M.
    """
    return (p.omega + 2.0 * p.eta * _ENVELOPE_SLACK) / p.weight_total


def ush_sample_rejection(n: int, p: UShParams, seed=None,
                         with_stats: bool = False):
    """Draw n unit Shiha variates by rejection from a Beta(omega, 1) proposal.

    Kept as an independent cross-check of :func:`ush_sample`.  A proposal
    x = u**(1/omega) has t = x**omega = u, so the accept test needs no
    power evaluations.  ``with_stats=True`` additionally returns a dict with
    the proposal and acceptance counts.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    w, e = p.omega, p.eta
    m_const = rejection_envelope_constant(p)
    ceiling = w + 2.0 * e * _ENVELOPE_SLACK  # (omega + 3 eta) * M
    out = np.empty(n)
    filled = 0
    proposed = 0
    accepted = 0
    while filled < n:
        batch = max(128, int((n - filled) * m_const * 1.2))
        t = rng.random(batch)
        u = rng.random(batch)
        with np.errstate(divide="ignore", invalid="ignore"):
            bracket = np.where(t > 0.0, w + 2.0 * e * (t - 4.0 * t * np.log(t)), w)
        if (bracket > ceiling * (1.0 + 1e-12)).any():
            raise RuntimeError(
                "rejection envelope violated: the documented constant does not "
                "dominate the density ratio (internal envelope-construction bug)"
            )
        keep = (u * ceiling <= bracket) & (t > 0.0)
        proposed += batch
        accepted += int(keep.sum())
        xs = t[keep] ** (1.0 / w)
        take = min(n - filled, xs.size)
        out[filled:filled + take] = xs[:take]
        filled += take
    sample = UnitSample(out, label=f"ush(omega={w:g}, eta={e:g}) rejection sample",
                        source="sampler")
    if with_stats:
        return sample, {"proposed": proposed, "accepted": accepted,
                        "envelope_constant": m_const}
    return sample
