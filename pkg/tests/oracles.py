"""Independent numerical oracles used across the test suite.

These deliberately avoid the code paths they verify: CDFs are checked by
adaptive quadrature of the density, densities by finite differences of the
CDF, gradients by central differences of the objective.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate


def quad_cdf(pdf, x: float, lower: float = 0.0, tol: float = 1e-11) -> float:
    """Integrate a density from ``lower`` to ``x`` by adaptive quadrature."""
    val, err = integrate.quad(pdf, lower, x, epsabs=tol, epsrel=1e-12, limit=400)
    assert err < 100 * tol, f"quadrature error {err:.2e} too large"
    return val


def quad_normalization(pdf, lo: float = 0.0, hi: float = 1.0) -> float:
    val, _ = integrate.quad(pdf, lo, hi, epsabs=1e-11, epsrel=1e-12, limit=400)
    return val


def _log_substituted(unit_log_pdf):
    """Integrand of the x = exp(-y) substitution: f(exp(-y)) * exp(-y),
    assembled in log space so that densities which overflow a double near
    x -> 0 (possible for the heavy-tailed families) still integrate."""
    interior_top = float(np.nextafter(1.0, 0.0))

    def g(y: float) -> float:
        x = float(np.exp(-y))
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            x = interior_top
        return float(np.exp(unit_log_pdf(x) - y))

    return g


def log_quad_cdf(unit_log_pdf, x: float) -> float:
    """Integrate a unit-interval density (given by its log) over (0, x] via
    the substitution x = exp(-y), which turns endpoint singularities and
    heavy left tails into well-behaved integrands on (-ln x, inf)."""
    val, _ = integrate.quad(_log_substituted(unit_log_pdf), -np.log(x), np.inf,
                            epsabs=1e-12, epsrel=1e-12, limit=500)
    return val


def log_quad_normalization(unit_log_pdf) -> float:
    val, _ = integrate.quad(_log_substituted(unit_log_pdf), 0.0, np.inf,
                            epsabs=1e-12, epsrel=1e-12, limit=500)
    return val


def central_diff(f, x: float, h: float) -> float:
    """Richardson-extrapolated central difference (5-point, O(h^4))."""
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def grad_central(f, theta, rel_step: float = 1e-6):
    """Componentwise central-difference gradient."""
    theta = np.asarray(theta, dtype=float)
    g = np.empty_like(theta)
    for i in range(theta.size):
        h = max(rel_step, rel_step * abs(theta[i]))
        up = theta.copy(); up[i] += h
        dn = theta.copy(); dn[i] -= h
        g[i] = (f(up) - f(dn)) / (2 * h)
    return g
