"""Information criteria, KS statistic and p-value, descriptive statistics,
TTT transform, PP/QQ point sets."""

import math

import numpy as np
import pytest

from unitshiha import (
    UShParams,
    descriptive_stats,
    dist_cdf,
    info_criteria,
    ks_pvalue,
    ks_statistic,
    pp_qq_points,
    ttt_points,
    ush_cdf,
    ush_quantile,
)
from unitshiha.gof import has_ties

from refvalues import DESCRIPTIVES


class TestInfoCriteria:
    def test_benchmark_row_first_dataset(self):
        aic, aicc, bic, hqic = info_criteria(3.553, 2, 43)
        assert aic == pytest.approx(-3.106, abs=2e-3)
        assert aicc == pytest.approx(-2.806, abs=2e-3)
        assert bic == pytest.approx(0.417, abs=2e-3)
        assert hqic == pytest.approx(-1.807, abs=2e-3)

    def test_benchmark_row_second_dataset(self):
        aic, _, bic, _ = info_criteria(9.854, 2, 23)
        assert aic == pytest.approx(-15.708, abs=2e-3)
        assert bic == pytest.approx(-13.437, abs=2e-3)

    def test_hqic_at_e_to_the_e(self):
        n = int(round(math.exp(math.e)))  # ln ln n = 1 up to integer rounding
        _, _, _, hqic = info_criteria(0.0, 1, n)
        assert hqic == pytest.approx(2.0, abs=2e-2)

    def test_aicc_requires_enough_data(self):
        with pytest.raises(ValueError):
            info_criteria(0.0, 2, 3)

    def test_identical_ranking_for_equal_k_and_n(self):
        # with k and n fixed all four criteria are affine in -2*loglik
        lls = [1.0, 3.0, -2.0, 0.5]
        tables = [info_criteria(ll, 2, 50) for ll in lls]
        for idx in range(4):
            order = np.argsort([t[idx] for t in tables])
            assert list(order) == list(np.argsort([-ll for ll in lls]))


class TestKsStatistic:
    def test_benchmark_first_dataset(self, data1):
        p = UShParams(1.4957, 0.1221)
        d = ks_statistic(data1, lambda v: ush_cdf(v, p))
        assert d == pytest.approx(0.0726, abs=2e-3)

    def test_benchmark_third_dataset(self, data3):
        p = UShParams(0.4159, 1000.0)
        d = ks_statistic(data3, lambda v: ush_cdf(v, p))
        assert d == pytest.approx(0.1760, abs=3e-3)

    def test_against_own_ecdf(self, rng):
        x = np.sort(rng.uniform(0.05, 0.95, size=40))

        def ecdf(v):
            return np.searchsorted(x, v, side="right") / x.size

        d = ks_statistic(x, ecdf)
        assert d <= 1.0 / x.size + 1e-12

    def test_matches_scipy(self, rng, data2):
        from scipy.stats import kstest
        p = UShParams(0.374, 193.1469)
        want = kstest(data2.values, lambda v: ush_cdf(v, p)).statistic
        got = ks_statistic(data2, lambda v: ush_cdf(v, p))
        assert got == pytest.approx(want, abs=1e-12)


class TestKsPvalue:
    def test_benchmark_with_ties(self):
        # datasets with tied observations use the asymptotic series
        assert ks_pvalue(0.0726, 43, ties=True) == pytest.approx(0.9772, abs=0.02)
        assert ks_pvalue(0.1512, 23, ties=True) == pytest.approx(0.669, abs=0.03)

    def test_benchmark_exact_no_ties(self):
        assert ks_pvalue(0.1296, 30) == pytest.approx(0.6478, abs=0.002)
        assert ks_pvalue(0.0881, 30) == pytest.approx(0.9581, abs=0.002)

    def test_degenerate_values(self):
        assert ks_pvalue(0.0, 25) == 1.0
        assert ks_pvalue(1.0, 25) == 0.0

    def test_strictly_decreasing_in_d(self):
        # below 1/(2n) no sample can realize the statistic and the exact
        # p-value is identically 1, so the strict region starts there
        for n in (20, 43, 150):
            ds = np.linspace(1.0 / (2 * n) + 0.01, 0.6, 40)
            ps = [ks_pvalue(float(d), n) for d in ds]
            assert all(a > b for a, b in zip(ps, ps[1:]))

    def test_large_n_series_branch(self):
        from scipy.special import kolmogorov
        d, n = 0.05, 400
        assert ks_pvalue(d, n) == pytest.approx(float(kolmogorov(d * math.sqrt(n))),
                                                abs=1e-10)

    def test_ties_detection(self, data1, data4):
        assert has_ties(data1)
        assert not has_ties(data4)

    def test_domain(self):
        with pytest.raises(ValueError):
            ks_pvalue(-0.1, 10)
        with pytest.raises(ValueError):
            ks_pvalue(0.5, 0)


class TestDescriptives:
    @pytest.mark.parametrize("name", sorted(DESCRIPTIVES))
    def test_benchmark_table(self, name):
        from unitshiha import load_dataset
        d = descriptive_stats(load_dataset(name))
        mn, q1, med, mean, q3, mx, var, sk, ku = DESCRIPTIVES[name]
        assert d.minimum == pytest.approx(mn, abs=1e-3)
        assert d.q1 == pytest.approx(q1, abs=1e-3)
        assert d.median == pytest.approx(med, abs=1e-3)
        assert d.mean == pytest.approx(mean, abs=1e-3)
        assert d.q3 == pytest.approx(q3, abs=1e-3)
        assert d.maximum == pytest.approx(mx, abs=1e-3)
        assert d.variance == pytest.approx(var, abs=1e-3)
        # published skewness is the plain moment ratio; published kurtosis
        # turns out to be the plain ratio plus 3 (a raw-vs-excess mix-up in
        # the source table) -- informational, not part of the gate
        assert d.skewness == pytest.approx(sk, abs=1e-3)
        assert d.kurtosis == pytest.approx(ku - 3.0, abs=1.5e-3)

    def test_weibull_rule_does_not_match_published_quartiles(self, data1):
        d = descriptive_stats(data1, quartile_rule="weibull")
        assert abs(d.q1 - 0.424) > 5e-3

    def test_constant_data_rejected(self):
        with pytest.raises(ValueError):
            descriptive_stats(np.full(10, 0.5))

    def test_tiny_sample_rejected(self):
        with pytest.raises(ValueError):
            descriptive_stats(np.array([0.3]))


class TestTtt:
    def test_exponential_data_near_diagonal(self, rng):
        x = rng.exponential(1.0, size=4000)
        x = x / (x.max() * 1.01)
        pts = ttt_points(x)
        interior = pts[1:-1]
        assert np.abs(interior[:, 1] - interior[:, 0]).mean() < 0.03

    def test_first_dataset_concave(self, data1):
        pts = ttt_points(data1)
        interior = pts[1:-1]
        frac_above = np.mean(interior[:, 1] >= interior[:, 0])
        assert frac_above >= 0.8

    def test_two_point_sample(self):
        pts = ttt_points(np.array([0.2, 0.6]))
        a, b = 0.2, 0.6
        assert pts[0] == pytest.approx([0.0, 0.0])
        assert pts[1] == pytest.approx([0.5, 2 * a / (a + b)])
        assert pts[2] == pytest.approx([1.0, 1.0])

    def test_scale_invariance(self, rng):
        x = rng.uniform(0.01, 0.99, size=50)
        a = ttt_points(x)
        b = ttt_points(x * 0.37)
        assert np.allclose(a, b)

    def test_endpoints(self, rng):
        x = rng.uniform(0.01, 0.99, size=17)
        pts = ttt_points(x)
        assert pts[0, 1] == 0.0 and pts[-1, 1] == pytest.approx(1.0)
        assert ((pts[:, 1] >= 0) & (pts[:, 1] <= 1 + 1e-12)).all()


class TestPpQq:
    def test_perfect_fit_on_diagonal(self):
        p = UShParams(1.3, 0.6)
        pos = (np.arange(1, 21) - 0.5) / 20
        x = ush_quantile(pos, p)
        pp, qq = pp_qq_points(x, "USh", (1.3, 0.6))
        assert np.abs(pp[:, 0] - pp[:, 1]).max() < 1e-9
        assert np.abs(qq[:, 0] - qq[:, 1]).max() < 1e-9

    def test_pp_deviation_vs_ks(self, data1):
        theta = (1.4957, 0.1221)
        pp, _ = pp_qq_points(data1, "USh", theta)
        dev = np.abs(pp[:, 0] - pp[:, 1]).max()
        d = ks_statistic(data1, lambda v: dist_cdf("USh", v, theta))
        n = data1.n
        assert dev <= d + 1.0 / n
        # the maximal PP deviation is the KS distance minus the half-step
        assert dev == pytest.approx(d - 0.5 / n, abs=1e-12)

    def test_single_point(self):
        pp, qq = pp_qq_points(np.array([0.4]), "Kw", (1.0, 1.0))
        assert pp.shape == (1, 2) and qq.shape == (1, 2)
        assert pp[0, 1] == 0.5
