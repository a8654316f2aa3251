"""Stress-strength reliability P(stress < strength): closed form, special
cases, and the quadrature oracle."""

import numpy as np
import pytest
from scipy import integrate

from unitshiha import (
    StressStrengthInput,
    UShParams,
    ush_cdf,
    ush_pdf,
    ush_stress_strength,
)


def P(w, e):
    return UShParams(w, e, allow_boundary=True)


def R(p1, p2):
    return ush_stress_strength(StressStrengthInput(strength=p1, stress=p2))


def quad_reliability(p1, p2):
    val, _ = integrate.quad(lambda x: ush_pdf(x, p1) * ush_cdf(x, p2),
                            0.0, 1.0, epsabs=1e-11, epsrel=1e-12, limit=400)
    return val


@pytest.fixture(scope="module")
def param_pairs():
    pts = np.random.default_rng(771).uniform(0.05, 10.0, size=(50, 4))
    return [(P(a, b), P(c, d)) for a, b, c, d in pts]


def test_special_case_beta_pair(rng):
    # eta1 = eta2 = 0 collapses to omega1 / (omega1 + omega2)
    for w1, w2 in rng.uniform(0.05, 10.0, size=(50, 2)):
        got = R(P(w1, 0.0), P(w2, 0.0))
        assert got == pytest.approx(w1 / (w1 + w2), abs=1e-12)


def test_special_case_identical_params(rng):
    for w, e in rng.uniform(0.05, 10.0, size=(50, 2)):
        assert R(P(w, e), P(w, e)) == pytest.approx(0.5, abs=1e-12)


def test_special_case_beta_stress(rng):
    # omega1 = omega2 = omega, eta2 = 0: (9w + 28e) / (18 (w + 3e))
    for w, e in rng.uniform(0.05, 10.0, size=(50, 2)):
        got = R(P(w, e), P(w, 0.0))
        want = (9 * w + 28 * e) / (18 * (w + 3 * e))
        assert got == pytest.approx(want, abs=1e-12)


def test_quadrature_oracle_fixed_point():
    p1, p2 = P(1.2, 0.5), P(0.7, 1.1)
    assert R(p1, p2) == pytest.approx(quad_reliability(p1, p2), abs=1e-8)


def test_quadrature_oracle_random(param_pairs):
    for p1, p2 in param_pairs[:12]:
        assert R(p1, p2) == pytest.approx(quad_reliability(p1, p2), abs=1e-8)


def test_antisymmetry(param_pairs):
    for p1, p2 in param_pairs:
        assert R(p1, p2) + R(p2, p1) == pytest.approx(1.0, abs=1e-12)


def test_in_unit_interval(param_pairs):
    for p1, p2 in param_pairs:
        assert 0.0 < R(p1, p2) < 1.0
