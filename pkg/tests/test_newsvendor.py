import numpy as np
import pytest
from scipy.integrate import quad

from fuzzy_newsvendor import (
    CostStructure,
    GaussianComponent,
    GmmDemand,
    NumericalError,
    ProfitStats,
    classical_optimal_q,
    critical_fractile,
    expected_profit,
    profit,
    profit_stats,
    profit_variance,
)
from oracles import bisect_root, monte_carlo_profit, phi_series

HIGH = CostStructure(10.0, 50.0, 5.0)
LOW = CostStructure(10.0, 12.0, 5.0)
NORMAL = GaussianComponent(100.0, 20.0)


class TestCostStructure:
    def test_shorthands(self):
        assert HIGH.price_less_salvage == 45.0
        assert HIGH.salvage_less_cost == -5.0
        assert HIGH.unit_margin == 40.0

    def test_rejects_non_interior_costs(self):
        with pytest.raises(ValueError):
            CostStructure(10.0, 9.0, 5.0)
        with pytest.raises(ValueError):
            CostStructure(4.0, 50.0, 5.0)
        with pytest.raises(ValueError):
            CostStructure(5.0, 50.0, 5.0)

    def test_critical_fractile_values(self):
        assert critical_fractile(HIGH) == pytest.approx(40.0 / 45.0)
        assert critical_fractile(LOW) == pytest.approx(2.0 / 7.0)

    def test_fractile_limit_as_cost_approaches_salvage(self):
        nearly = CostStructure(5.0 + 1e-9, 50.0, 5.0)
        assert critical_fractile(nearly) > 0.999999


class TestProfit:
    def test_leftover_branch(self):
        assert profit(5.0, 10.0, HIGH) == pytest.approx(175.0)
        # cross-check against raw revenue accounting
        assert profit(5.0, 10.0, HIGH) == pytest.approx(5 * 50 + 5 * 5 - 10 * 10)

    def test_sold_out_branch(self):
        assert profit(20.0, 10.0, HIGH) == pytest.approx(400.0)

    def test_branches_meet_at_equality(self):
        left = HIGH.price_less_salvage * 10.0 + HIGH.salvage_less_cost * 10.0
        assert profit(10.0, 10.0, HIGH) == pytest.approx(400.0)
        assert left == pytest.approx(HIGH.unit_margin * 10.0)

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            profit(5.0, -1.0, HIGH)


class TestExpectedProfit:
    def test_zero_order_means_zero_profit(self):
        assert expected_profit(NORMAL, 0.0, HIGH) == 0.0
        assert profit_variance(NORMAL, 0.0, HIGH) == 0.0

    @staticmethod
    def _two_branch_expectation(component, q, costs):
        lo, _ = component.bracket
        sold, _ = quad(
            lambda x: (costs.price_less_salvage * x + costs.salvage_less_cost * q)
            * component.pdf(x),
            lo, q, epsabs=1e-12, epsrel=1e-12, limit=200,
        )
        return sold + costs.unit_margin * q * (1.0 - component.cdf(q))

    def test_matches_two_branch_integral(self):
        # With truly negligible mass below zero the from-zero formula and the
        # full two-branch expectation coincide.
        tight = GaussianComponent(100.0, 15.0)
        direct = self._two_branch_expectation(tight, 110.0, HIGH)
        assert expected_profit(tight, 110.0, HIGH) == pytest.approx(direct, abs=1e-6)

    def test_two_branch_gap_is_exactly_the_below_zero_mass(self):
        # For N(100, 20) the mass below zero is small but not negligible at
        # the 1e-6 scale; the gap equals (price - salvage) * int_{-inf}^0 F.
        q = 110.0
        direct = self._two_branch_expectation(NORMAL, q, HIGH)
        lib = expected_profit(NORMAL, q, HIGH)
        lo, _ = NORMAL.bracket
        below, _ = quad(NORMAL.cdf, lo, 0.0, epsabs=1e-14, epsrel=1e-12, limit=200)
        assert direct - lib == pytest.approx(-HIGH.price_less_salvage * below, abs=1e-9)
        assert abs(direct - lib) <= 1e-4

    def test_matches_monte_carlo(self):
        rng = np.random.default_rng(41)
        draws = rng.normal(100.0, 20.0, size=1_000_000)
        mean, se_mean, variance, se_var = monte_carlo_profit(draws, 110.0, 10.0, 50.0, 5.0)
        assert abs(expected_profit(NORMAL, 110.0, HIGH) - mean) <= 3.0 * se_mean
        assert abs(profit_variance(NORMAL, 110.0, HIGH) - variance) <= 3.0 * se_var

    def test_mixture_monte_carlo(self):
        mixture = GmmDemand(GaussianComponent(200.0, 30.0), NORMAL, 0.275)
        rng = np.random.default_rng(43)
        pick = rng.random(1_000_000) < 0.275
        draws = np.where(
            pick,
            rng.normal(200.0, 30.0, size=1_000_000),
            rng.normal(100.0, 20.0, size=1_000_000),
        )
        q = 150.0
        mean, se_mean, variance, se_var = monte_carlo_profit(draws, q, 10.0, 12.0, 5.0)
        assert abs(expected_profit(mixture, q, LOW) - mean) <= 3.0 * se_mean
        assert abs(profit_variance(mixture, q, LOW) - variance) <= 3.0 * se_var

    def test_derivative_matches_first_order_condition(self):
        h = 1e-4
        for q in (70.0, 100.0, 124.0, 160.0):
            fd = (
                expected_profit(NORMAL, q + h, HIGH)
                - expected_profit(NORMAL, q - h, HIGH)
            ) / (2.0 * h)
            closed = NORMAL.cdf(q) * (-HIGH.price_less_salvage) + HIGH.unit_margin
            assert fd == pytest.approx(closed, abs=1e-5)

    def test_concave_in_order_quantity(self):
        h = 0.5
        for q in np.linspace(40.0, 180.0, 15):
            second = (
                expected_profit(NORMAL, q + h, HIGH)
                - 2.0 * expected_profit(NORMAL, float(q), HIGH)
                + expected_profit(NORMAL, q - h, HIGH)
            )
            assert second <= 1e-8

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            expected_profit(NORMAL, -5.0, HIGH)


class TestProfitVariance:
    def test_non_decreasing_in_order(self):
        values = [profit_variance(NORMAL, q, HIGH) for q in np.linspace(0.0, 200.0, 21)]
        assert all(b >= a - 1e-8 for a, b in zip(values, values[1:]))

    def test_stats_bundle_consistent(self):
        stats = profit_stats(NORMAL, 110.0, HIGH)
        assert isinstance(stats, ProfitStats)
        assert stats.order_q == 110.0
        assert stats.expected_profit == pytest.approx(expected_profit(NORMAL, 110.0, HIGH))
        assert stats.profit_variance == pytest.approx(profit_variance(NORMAL, 110.0, HIGH))

    def test_stats_rejects_negative_variance(self):
        with pytest.raises(ValueError):
            ProfitStats(10.0, 5.0, -1.0)


class TestOptimalQuantity:
    def test_normal_high_margin_matches_quantile_oracle(self):
        z = bisect_root(lambda t: phi_series(t) - 8.0 / 9.0, -3.0, 3.0)
        q = classical_optimal_q(NORMAL, HIGH)
        assert q == pytest.approx(100.0 + 20.0 * z, abs=1e-8)
        assert q == pytest.approx(124.41, abs=0.01)

    def test_median_when_margin_balances(self):
        balanced = CostStructure(10.0, 15.0, 5.0)  # fractile exactly 1/2
        assert classical_optimal_q(NORMAL, balanced) == pytest.approx(100.0, abs=1e-9)

    def test_mixture_inversion_matches_bisection_oracle(self):
        mixture = GmmDemand(GaussianComponent(200.0, 30.0), NORMAL, 0.275)
        oracle = bisect_root(lambda x: float(mixture.cdf(x)) - 8.0 / 9.0, -200.0, 700.0)
        q = classical_optimal_q(mixture, HIGH)
        assert q == pytest.approx(oracle, abs=1e-8)
        assert q == pytest.approx(207.287, abs=0.01)

    def test_handle_without_quantile_uses_bracketed_inversion(self):
        class BareCdf:
            bracket = NORMAL.bracket

            @staticmethod
            def cdf(x):
                return NORMAL.cdf(x)

        assert classical_optimal_q(BareCdf(), HIGH) == pytest.approx(
            classical_optimal_q(NORMAL, HIGH), abs=1e-8
        )

    def test_bracketing_failure_raises(self):
        class BrokenCdf:
            bracket = (0.0, 1.0)

            @staticmethod
            def cdf(x):
                return 0.0

        with pytest.raises(NumericalError):
            classical_optimal_q(BrokenCdf(), HIGH)

    def test_optimum_maximizes_expected_profit(self):
        q_star = classical_optimal_q(NORMAL, HIGH)
        best = expected_profit(NORMAL, q_star, HIGH)
        for delta in (0.1, 1.0, 10.0):
            assert best >= expected_profit(NORMAL, q_star + delta, HIGH)
            assert best >= expected_profit(NORMAL, q_star - delta, HIGH)
