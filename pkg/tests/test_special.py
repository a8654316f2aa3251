"""log-gamma and the regularized incomplete beta function."""

import math

import pytest
from scipy import integrate

from unitshiha import log_gamma, reg_inc_beta


class TestLogGamma:
    @pytest.mark.parametrize("z,want", [(1.0, 0.0), (2.0, 0.0),
                                        (0.5, math.log(math.sqrt(math.pi)))])
    def test_known_values(self, z, want):
        assert log_gamma(z) == pytest.approx(want, abs=1e-12)

    def test_recurrence(self, rng):
        for z in rng.uniform(0.1, 50.0, size=30):
            assert log_gamma(z + 1) == pytest.approx(log_gamma(z) + math.log(z),
                                                     rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-2.5)


def beta_quad(a, b, x):
    ln_norm = log_gamma(a + b) - log_gamma(a) - log_gamma(b)
    val, _ = integrate.quad(
        lambda t: math.exp(ln_norm + (a - 1) * math.log(t) + (b - 1) * math.log1p(-t)),
        0.0, x, epsabs=1e-13, epsrel=1e-13, limit=400)
    return val


class TestRegIncBeta:
    def test_uniform(self):
        assert reg_inc_beta(1.0, 1.0, 0.3) == pytest.approx(0.3, abs=1e-14)

    def test_power_law(self):
        assert reg_inc_beta(2.0, 1.0, 0.6) == pytest.approx(0.36, abs=1e-13)

    def test_quadrature_oracle(self):
        assert reg_inc_beta(2.5, 1.7, 0.42) == pytest.approx(
            beta_quad(2.5, 1.7, 0.42), abs=1e-10)

    def test_quadrature_oracle_random(self, rng):
        for _ in range(20):
            a, b = rng.uniform(0.2, 8.0, size=2)
            x = float(rng.uniform(0.05, 0.95))
            assert reg_inc_beta(a, b, x) == pytest.approx(beta_quad(a, b, x),
                                                          abs=1e-10)

    def test_symmetry_identity(self, rng):
        for _ in range(50):
            a, b = rng.uniform(0.1, 20.0, size=2)
            x = float(rng.uniform(0.0, 1.0))
            total = reg_inc_beta(a, b, x) + reg_inc_beta(b, a, 1.0 - x)
            assert total == pytest.approx(1.0, abs=1e-12)

    def test_endpoints(self):
        assert reg_inc_beta(3.0, 4.0, 0.0) == 0.0
        assert reg_inc_beta(3.0, 4.0, 1.0) == 1.0

    def test_against_scipy(self, rng):
        from scipy.special import betainc
        for _ in range(40):
            a, b = rng.uniform(0.05, 100.0, size=2)
            x = float(rng.uniform(0.0, 1.0))
            assert reg_inc_beta(a, b, x) == pytest.approx(
                float(betainc(a, b, x)), abs=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            reg_inc_beta(0.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            reg_inc_beta(1.0, 1.0, 1.5)
