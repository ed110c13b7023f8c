import numpy as np
import pytest
from scipy.integrate import dblquad, quad

from fuzzy_newsvendor import (
    DefuzzifiedDemand,
    GaussianComponent,
    GmmDemand,
    NegativeDemandMassWarning,
    TrapezoidalFuzzyNumber,
    alpha_integrated_density,
    defuzzified_cdf,
    defuzzified_moments,
    defuzzified_pdf,
    ghj_eval,
    joint_alpha_density,
    mixture_coefficients,
    normal_cdf,
    normal_quantile,
)
from oracles import bisect_root, phi_series

C1 = GaussianComponent(200.0, 30.0)
C2 = GaussianComponent(100.0, 20.0)
CASE1 = TrapezoidalFuzzyNumber(0.1, 0.2, 0.4, 0.4)
CRISP_ONE = TrapezoidalFuzzyNumber(1.0, 1.0, 1.0, 1.0)


class TestNormalComponent:
    def test_rejects_bad_sigma(self):
        with pytest.raises(ValueError):
            GaussianComponent(100.0, 0.0)

    def test_cdf_at_mean(self):
        assert normal_cdf(100.0, GaussianComponent(100.0, 20.0)) == pytest.approx(0.5)

    def test_cdf_one_sigma_matches_series_oracle(self):
        component = GaussianComponent(100.0, 20.0)
        assert normal_cdf(120.0, component) == pytest.approx(phi_series(1.0), abs=1e-14)
        assert normal_cdf(120.0, component) == pytest.approx(0.841345, abs=1e-6)

    def test_tail_limits(self):
        component = GaussianComponent(100.0, 20.0)
        assert normal_cdf(-1e6, component) == 0.0
        assert normal_cdf(1e6, component) == 1.0

    def test_quantile_median(self):
        assert normal_quantile(0.5, GaussianComponent(100.0, 20.0)) == pytest.approx(100.0)

    def test_quantile_roundtrip(self):
        component = GaussianComponent(100.0, 20.0)
        u = normal_cdf(120.0, component)
        assert normal_quantile(u, component) == pytest.approx(120.0, abs=1e-6)
        for target in (0.001, 0.1, 0.4, 0.97):
            q = normal_quantile(target, component)
            assert normal_cdf(q, component) == pytest.approx(target, abs=1e-10)

    def test_quantile_matches_bisection_oracle(self):
        z = bisect_root(lambda t: phi_series(t) - 0.888889, -3.0, 3.0)
        assert normal_quantile(0.888889, GaussianComponent(0.0, 1.0)) == pytest.approx(
            z, abs=1e-10
        )
        assert z == pytest.approx(1.22064, abs=1e-4)

    @pytest.mark.parametrize("u", [0.0, 1.0, -0.2, 1.5])
    def test_quantile_rejects_bad_probability(self, u):
        with pytest.raises(ValueError):
            normal_quantile(u, GaussianComponent(0.0, 1.0))


class TestMixtureCoefficients:
    def test_crisp_half(self):
        coeffs = mixture_coefficients(TrapezoidalFuzzyNumber(0.5, 0.5, 0.5, 0.5))
        assert (coeffs.P1, coeffs.P2, coeffs.P3) == pytest.approx((0.5, 0.5, 0.5))

    def test_rectangle(self):
        coeffs = mixture_coefficients(TrapezoidalFuzzyNumber(0.2, 0.2, 0.8, 0.8))
        assert (coeffs.P1, coeffs.P2, coeffs.P3) == pytest.approx((0.32, 0.68, 0.32))

    def test_case1_weight(self):
        coeffs = mixture_coefficients(CASE1)
        assert (coeffs.P1, coeffs.P2, coeffs.P3) == pytest.approx((0.12, 0.43, 1.02))
        assert coeffs.P1 + 2 * coeffs.P2 + coeffs.P3 == pytest.approx(2.0, abs=1e-12)
        assert coeffs.mean_weight == pytest.approx(0.275, abs=1e-12)

    def test_rejects_non_weight_support(self):
        with pytest.raises(ValueError):
            mixture_coefficients(TrapezoidalFuzzyNumber(-0.1, 0.2, 0.4, 0.5))
        with pytest.raises(ValueError):
            mixture_coefficients(TrapezoidalFuzzyNumber(0.1, 0.2, 0.4, 1.5))

    def test_identities_over_random_weights(self):
        rng = np.random.default_rng(23)
        for _ in range(1000):
            weight = TrapezoidalFuzzyNumber(*np.sort(rng.uniform(0, 1, size=4)))
            coeffs = mixture_coefficients(weight)
            assert abs(coeffs.P1 + 2 * coeffs.P2 + coeffs.P3 - 2.0) <= 1e-12
            assert abs(0.5 * coeffs.P1 + coeffs.P2 + 0.5 * coeffs.P3 - 1.0) <= 1e-12
            mean = weight.expected_value()
            assert abs(0.5 * (coeffs.P1 + coeffs.P2) - mean) <= 1e-12
            assert abs(0.5 * (coeffs.P2 + coeffs.P3) - (1.0 - mean)) <= 1e-12


class TestGhj:
    def test_lower_limit(self):
        d = DefuzzifiedDemand(CASE1, 0.3, C1, C2)
        g, h, j = ghj_eval(d.bracket[0], d)
        assert g == pytest.approx(0.0, abs=1e-12)
        assert h == pytest.approx(0.0, abs=1e-12)
        assert j == pytest.approx(0.0, abs=1e-12)

    def test_upper_limit(self):
        d = DefuzzifiedDemand(CASE1, 0.3, C1, C2)
        g, h, j = ghj_eval(d.bracket[1], d)
        assert g == pytest.approx(1.0, abs=1e-9)
        assert h == pytest.approx(2.0, abs=1e-9)
        assert j == pytest.approx(2.0, abs=1e-9)

    def test_crisp_weight_collapses(self):
        d = DefuzzifiedDemand(CRISP_ONE, 0.5, C1, C2)
        for x in (150.0, 200.0, 260.0):
            _, h, j = ghj_eval(x, d)
            f1 = C1.cdf(x)
            assert h == pytest.approx(2.0 * f1 * f1, abs=1e-12)
            assert j == pytest.approx(2.0 * f1, abs=1e-12)

    def test_half_h_and_ordering(self):
        d = DefuzzifiedDemand(CASE1, 0.9, C1, C2)
        for x in np.linspace(*d.bracket, 50):
            g, h, j = ghj_eval(float(x), d)
            assert g == pytest.approx(0.5 * h, abs=1e-15)
            assert h <= j + 1e-12


class TestDefuzzifiedDistribution:
    def test_rejects_bad_beta(self):
        with pytest.raises(ValueError):
            DefuzzifiedDemand(CASE1, 1.2, C1, C2)

    def test_rejects_inconsistent_cached_coefficients(self):
        from fuzzy_newsvendor import MixtureCoefficients

        with pytest.raises(ValueError):
            DefuzzifiedDemand(CASE1, 0.5, C1, C2, coeffs=MixtureCoefficients(0.5, 0.5, 0.5))

    def test_cdf_upper_limit(self):
        d = DefuzzifiedDemand(CASE1, 0.2, C1, C2)
        assert defuzzified_cdf(d.bracket[1], d) == pytest.approx(1.0, abs=1e-9)

    def test_risk_neutral_matches_mean_weight_mixture(self):
        d = DefuzzifiedDemand(CASE1, 0.5, C1, C2)
        blended = GmmDemand(C1, C2, 0.275)
        grid = np.linspace(*d.bracket, 500)
        assert np.max(np.abs(d.cdf(grid) - blended.cdf(grid))) <= 1e-12

    def test_crisp_pessimistic_cdf(self):
        d = DefuzzifiedDemand(CRISP_ONE, 0.0, C1, C2)
        x = 200.0  # F1 = 0.5 there
        assert defuzzified_cdf(x, d) == pytest.approx(0.75, abs=1e-12)

    def test_cdf_non_increasing_in_beta(self):
        grid = np.linspace(0.0, 350.0, 200)
        previous = None
        for beta in np.linspace(0.0, 1.0, 11):
            values = DefuzzifiedDemand(CASE1, float(beta), C1, C2).cdf(grid)
            if previous is not None:
                assert np.all(values <= previous + 1e-12)
            previous = values

    def test_pdf_risk_neutral_is_mixture_density(self):
        d = DefuzzifiedDemand(CASE1, 0.5, C1, C2)
        for x in (80.0, 120.0, 190.0, 240.0):
            expected = 0.275 * C1.pdf(x) + 0.725 * C2.pdf(x)
            assert defuzzified_pdf(x, d) == pytest.approx(expected, abs=1e-15)

    def test_pdf_risk_seeking_crisp(self):
        d = DefuzzifiedDemand(CRISP_ONE, 1.0, C1, C2)
        for x in (150.0, 200.0, 250.0):
            assert defuzzified_pdf(x, d) == pytest.approx(
                2.0 * C1.cdf(x) * C1.pdf(x), abs=1e-14
            )

    def test_pdf_matches_cdf_differences(self):
        d = DefuzzifiedDemand(CASE1, 0.8, C1, C2)
        h = 1e-4
        for x in np.linspace(40.0, 300.0, 27):
            fd = (d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h)
            assert d.pdf(float(x)) == pytest.approx(fd, abs=1e-6)

    def test_pdf_integrates_to_one(self):
        for beta in (0.0, 0.35, 1.0):
            d = DefuzzifiedDemand(CASE1, beta, C1, C2)
            mass, _ = quad(d.pdf, *d.bracket, points=[100.0, 200.0], limit=200)
            assert mass == pytest.approx(1.0, abs=1e-8)

    def test_quantile_inverts_cdf(self):
        d = DefuzzifiedDemand(CASE1, 0.15, C1, C2)
        for u in (0.05, 0.5, 8.0 / 9.0):
            assert d.cdf(d.quantile(u)) == pytest.approx(u, abs=1e-9)


class TestMoments:
    def test_risk_neutral_case1(self):
        d = DefuzzifiedDemand(CASE1, 0.5, C1, C2)
        mean, variance = defuzzified_moments(d)
        assert mean == pytest.approx(127.5, abs=1e-6)
        p = 0.275
        expected_var = p * 900.0 + (1 - p) * 400.0 + p * (1 - p) * 100.0**2
        assert variance == pytest.approx(expected_var, abs=1e-5)

    def test_crisp_single_component(self):
        d = DefuzzifiedDemand(CRISP_ONE, 0.5, C1, C2)
        mean, variance = defuzzified_moments(d)
        assert mean == pytest.approx(200.0, abs=1e-7)
        assert variance == pytest.approx(900.0, abs=1e-5)


class TestJointDensities:
    def test_zero_below_diagonal(self):
        assert joint_alpha_density(5.0, 3.0, 0.4, CASE1, C1, C2) == 0.0
        assert alpha_integrated_density(5.0, 3.0, CASE1, C1, C2) == 0.0

    def test_crisp_weight_is_symmetric_product(self):
        mixture = GmmDemand(C1, C2, 1.0)
        for x1, x2 in ((120.0, 180.0), (90.0, 90.0), (150.0, 260.0)):
            value = joint_alpha_density(x1, x2, 0.7, CRISP_ONE, C1, C2)
            assert value == pytest.approx(2.0 * mixture.pdf(x1) * mixture.pdf(x2), abs=1e-15)

    def test_joint_density_normalizes(self):
        lo, hi = -100.0, 500.0
        mass, err = dblquad(
            lambda x2, x1: joint_alpha_density(x1, x2, 0.3, CASE1, C1, C2),
            lo, hi, lambda x1: x1, hi, epsabs=1e-8,
        )
        assert mass == pytest.approx(1.0, abs=1e-6)

    def test_level_integration_matches_quadrature(self):
        nodes, weights = np.polynomial.legendre.leggauss(64)
        half_nodes = 0.5 * (nodes + 1.0)
        half_weights = 0.5 * weights
        rng = np.random.default_rng(31)
        for _ in range(20):
            x1, x2 = np.sort(rng.uniform(20.0, 320.0, size=2))
            direct = alpha_integrated_density(float(x1), float(x2), CASE1, C1, C2)
            sampled = sum(
                w * joint_alpha_density(float(x1), float(x2), float(a), CASE1, C1, C2)
                for a, w in zip(half_nodes, half_weights)
            )
            assert direct == pytest.approx(sampled, abs=1e-10)

    def test_crisp_zero_weight(self):
        zero = TrapezoidalFuzzyNumber(0.0, 0.0, 0.0, 0.0)
        value = alpha_integrated_density(110.0, 130.0, zero, C1, C2)
        assert value == pytest.approx(2.0 * C2.pdf(110.0) * C2.pdf(130.0), abs=1e-15)


class TestNegativeMassWarning:
    def test_mixture_warns_when_mass_below_zero(self):
        with pytest.warns(NegativeDemandMassWarning):
            GmmDemand(GaussianComponent(30.0, 20.0), C2, 0.5)

    def test_defuzzified_warns_too(self):
        with pytest.warns(NegativeDemandMassWarning):
            DefuzzifiedDemand(CASE1, 0.5, C1, GaussianComponent(25.0, 10.0))

    def test_reference_components_stay_silent(self):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error", NegativeDemandMassWarning)
            GmmDemand(C1, C2, 0.3)
            DefuzzifiedDemand(CASE1, 0.2, C1, C2)
