"""End-to-end verification suite.

Each criterion exercises one contract of the library at a pinned tolerance:
algebraic identities of the mixture coefficients, distribution validity,
risk-neutral reductions, closed forms against independent quadrature and
Monte Carlo oracles, landmark quantities, simulation reproduction, policy
benefits, and CLI determinism. ``run_all`` prints one pass/fail line per
criterion and reports overall success; the CLI ``verify`` subcommand wraps
it with a process exit code.
"""

from __future__ import annotations

import filecmp
import json
import tempfile
from dataclasses import replace
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.special import ndtr

from .demand import DefuzzifiedDemand, GaussianComponent, GmmDemand, mixture_coefficients
from .fuzzy import TrapezoidalFuzzyNumber, expected_value
from .newsvendor import CostStructure, classical_optimal_q, expected_profit, profit_variance
from .numerics import quad_checked
from .optimizer import (
    compare_policies,
    fuzzy_profit_leg_expectation,
    objective_derivative,
    optimal_q_beta,
    optimal_q_mean_weight,
    optimal_q_uniform,
)
from .reviews import derive_fuzzy_weight, simulate_visitors
from .scenarios import baseline_scenario, baseline_scenario_dict

#: Fuzzy-weight component means and spreads of the reference study.
_REFERENCE = baseline_scenario()

_CASE_WEIGHTS = {
    "case1": TrapezoidalFuzzyNumber(0.1, 0.2, 0.4, 0.4),
    "case2": TrapezoidalFuzzyNumber(0.6, 0.7, 0.9, 0.95),
}

_BETA_GRID = tuple(round(0.05 * i, 2) for i in range(21))


def _reference_costs() -> dict[str, CostStructure]:
    return dict(_REFERENCE.costs)


def _random_weight(rng: np.random.Generator) -> TrapezoidalFuzzyNumber:
    return TrapezoidalFuzzyNumber(*np.sort(rng.uniform(0.0, 1.0, size=4)))


def _random_demand_instance(rng: np.random.Generator):
    """Random two-component setup with negligible mass below zero."""
    mu2 = float(rng.uniform(80.0, 120.0))
    sigma2 = float(rng.uniform(10.0, mu2 / 6.0))
    mu1 = float(rng.uniform(160.0, 240.0))
    sigma1 = float(rng.uniform(15.0, mu1 / 7.0))
    salvage = float(rng.uniform(1.0, 5.0))
    cost = salvage + float(rng.uniform(2.0, 10.0))
    price = cost + float(rng.uniform(3.0, 40.0))
    return (
        GaussianComponent(mu1, sigma1),
        GaussianComponent(mu2, sigma2),
        CostStructure(cost, price, salvage),
        _random_weight(rng),
    )


def c1_coefficient_identities() -> str:
    """Bounds, the sum rule, and the mean-weight identity, all to 1e-12."""
    rng = np.random.default_rng(101)
    eps = 1e-12
    worst_sum = worst_mean = 0.0
    for _ in range(10_000):
        weight = _random_weight(rng)
        coeffs = mixture_coefficients(weight)
        assert -eps <= coeffs.P1 <= 2.0 + eps, f"P1 out of bounds: {coeffs.P1}"
        assert -eps <= coeffs.P3 <= 2.0 + eps, f"P3 out of bounds: {coeffs.P3}"
        assert -eps <= coeffs.P2 <= 1.0 + eps, f"P2 out of bounds: {coeffs.P2}"
        sum_gap = abs(coeffs.P1 + 2.0 * coeffs.P2 + coeffs.P3 - 2.0)
        half_gap = abs(0.5 * coeffs.P1 + coeffs.P2 + 0.5 * coeffs.P3 - 1.0)
        mean_gap = abs(0.5 * (coeffs.P1 + coeffs.P2) - expected_value(weight))
        assert sum_gap <= eps, f"sum rule violated by {sum_gap:.2e}"
        assert half_gap <= eps, f"half-sum rule violated by {half_gap:.2e}"
        assert mean_gap <= eps, f"mean identity violated by {mean_gap:.2e}"
        worst_sum = max(worst_sum, sum_gap)
        worst_mean = max(worst_mean, mean_gap)
    return f"10000 weights, worst sum gap {worst_sum:.1e}, worst mean gap {worst_mean:.1e}"


def c2_cdf_validity() -> str:
    """Monotone CDF with correct limits; density integrating to one."""
    rng = np.random.default_rng(202)
    c1, c2 = _REFERENCE.c1, _REFERENCE.c2
    worst_mass = 0.0
    for _ in range(200):
        d = DefuzzifiedDemand(_random_weight(rng), float(rng.uniform()), c1, c2)
        lo, hi = d.bracket
        grid = np.linspace(lo, hi, 1000)
        values = d.cdf(grid)
        assert np.all(np.diff(values) >= -1e-12), "CDF not monotone on the grid"
        assert np.all(values >= -1e-12) and np.all(values <= 1.0 + 1e-12), "CDF left [0, 1]"
        assert values[0] <= 1e-9, f"lower limit {values[0]:.2e} not near 0"
        assert abs(values[-1] - 1.0) <= 1e-9, f"upper limit off by {abs(values[-1]-1):.2e}"
        mass = quad_checked(d.pdf, lo, hi, points=sorted((c1.mu, c2.mu)))
        assert abs(mass - 1.0) <= 1e-8, f"density mass {mass!r}"
        worst_mass = max(worst_mass, abs(mass - 1.0))
    return f"200 (weight, beta) draws, worst density-mass gap {worst_mass:.1e}"


def c3_risk_neutral_reduction() -> str:
    """beta = 1/2 collapses to the mean-weight mixture, in CDF and in Q*."""
    rng = np.random.default_rng(303)
    c1, c2 = _REFERENCE.c1, _REFERENCE.c2
    costs = _reference_costs()
    worst_sup = 0.0
    for _ in range(50):
        weight = _random_weight(rng)
        d = DefuzzifiedDemand(weight, 0.5, c1, c2)
        blended = GmmDemand(c1, c2, expected_value(weight))
        lo, hi = d.bracket
        grid = np.linspace(lo, hi, 1001)
        gap = float(np.max(np.abs(d.cdf(grid) - blended.cdf(grid))))
        assert gap <= 1e-12, f"risk-neutral CDF gap {gap:.2e}"
        worst_sup = max(worst_sup, gap)
    worst_q = 0.0
    for i in range(100):
        p_m, p_M = np.sort(rng.uniform(0.0, 1.0, size=2))
        structure = costs["high_margin"] if i % 2 == 0 else costs["low_margin"]
        rectangle = TrapezoidalFuzzyNumber(p_m, p_m, p_M, p_M)
        q_rect = optimal_q_mean_weight(rectangle, c1, c2, structure)
        q_uniform = optimal_q_uniform(float(p_m), float(p_M), c1, c2, structure)
        gap = abs(q_rect - q_uniform)
        assert gap <= 1e-6, f"rectangle/uniform optimum gap {gap:.2e}"
        worst_q = max(worst_q, gap)
    return f"sup-norm gap {worst_sup:.1e}, worst optimum gap {worst_q:.1e}"


def c4_derivative_oracles() -> str:
    """Closed-form leg derivatives against finite differences of the 2-d
    quadrature oracle, plus concavity of every sampled leg."""
    rng = np.random.default_rng(404)
    step = 1e-3
    worst_rel = 0.0
    for _ in range(5):
        comp1, comp2, costs, weight = _random_demand_instance(rng)
        d = DefuzzifiedDemand(weight, 0.5, comp1, comp2)
        q_lo = comp2.mu - 2.0 * comp2.sigma
        q_hi = comp1.mu + 2.0 * comp1.sigma
        for q in rng.uniform(q_lo, q_hi, size=10):
            q = float(q)
            for side in ("left", "right"):
                plus = fuzzy_profit_leg_expectation(side, q + step, d, costs)
                minus = fuzzy_profit_leg_expectation(side, q - step, d, costs)
                mid = fuzzy_profit_leg_expectation(side, q, d, costs)
                fd = (plus - minus) / (2.0 * step)
                closed = objective_derivative(side, q, d, costs)
                rel = abs(fd - closed) / max(abs(fd), abs(closed))
                assert rel <= 1e-3, f"{side} derivative mismatch {rel:.2e} at q={q:.2f}"
                second = plus - 2.0 * mid + minus
                assert second <= 0.0, f"{side} leg convex at q={q:.2f}: {second:.2e}"
                worst_rel = max(worst_rel, rel)
    return f"5 instances x 10 points x 2 legs, worst relative gap {worst_rel:.1e}"


def c5_monotonic_in_beta() -> str:
    """Optimal orders and their expected profits never decrease in beta."""
    c1, c2 = _REFERENCE.c1, _REFERENCE.c2
    combos = 0
    for weight in _CASE_WEIGHTS.values():
        for costs in _reference_costs().values():
            orders = []
            profits = []
            for beta in _BETA_GRID:
                d = DefuzzifiedDemand(weight, beta, c1, c2)
                q = optimal_q_beta(d, costs)
                orders.append(q)
                profits.append(expected_profit(d, q, costs))
            assert np.all(np.diff(orders) >= 0.0), f"Q* decreased: {orders}"
            assert np.all(np.diff(profits) >= 0.0), f"optimal profit decreased: {profits}"
            combos += 1
    return f"{combos} weight/cost combos over {len(_BETA_GRID)} risk factors, 0 violations"


def _mc_profit_draws(rng, demand, size):
    if isinstance(demand, GaussianComponent):
        return rng.normal(demand.mu, demand.sigma, size=size)
    pick = rng.random(size) < demand.p
    first = rng.normal(demand.c1.mu, demand.c1.sigma, size=size)
    second = rng.normal(demand.c2.mu, demand.c2.sigma, size=size)
    return np.where(pick, first, second)


def c6_profit_statistics() -> str:
    """Closed-form expected profit and variance against seeded Monte Carlo
    and against the direct two-branch integral."""
    rng = np.random.default_rng(606)
    draws = 1_000_000
    worst_integral = 0.0
    for i in range(10):
        comp1, comp2, costs, _ = _random_demand_instance(rng)
        demand = comp1 if i % 2 == 0 else GmmDemand(comp1, comp2, float(rng.uniform()))
        u = float(rng.uniform(0.3, 0.95))
        q = demand.quantile(u)
        exp_formula = expected_profit(demand, q, costs)
        var_formula = profit_variance(demand, q, costs)

        x = _mc_profit_draws(rng, demand, draws)
        spread, overage, margin = (
            costs.price_less_salvage, costs.salvage_less_cost, costs.unit_margin,
        )
        profits = np.where(x <= q, spread * x + overage * q, margin * q)
        mc_mean = float(np.mean(profits))
        se_mean = float(np.std(profits, ddof=1) / np.sqrt(draws))
        assert abs(exp_formula - mc_mean) <= 3.0 * se_mean, (
            f"expected profit {exp_formula:.4f} vs MC {mc_mean:.4f} (se {se_mean:.4f})"
        )
        centered = profits - mc_mean
        m2 = float(np.mean(centered**2))
        m4 = float(np.mean(centered**4))
        se_var = float(np.sqrt(max(m4 - m2 * m2, 0.0) / draws))
        assert abs(var_formula - m2) <= 3.0 * se_var, (
            f"variance {var_formula:.2f} vs MC {m2:.2f} (se {se_var:.2f})"
        )

        lo, hi = demand.bracket
        sold = quad_checked(
            lambda t: (spread * t + overage * q) * demand.pdf(t), lo, min(q, hi),
            epsabs=1e-9,
        )
        direct = sold + margin * q * (1.0 - demand.cdf(q))
        gap = abs(direct - exp_formula)
        assert gap <= 1e-6, f"two-branch integral gap {gap:.2e}"
        worst_integral = max(worst_integral, gap)
    return f"10 instances at 1e6 draws, worst integral gap {worst_integral:.1e}"


def _bisect(fn: Callable[[float], float], lo: float, hi: float, iters: int = 200) -> float:
    f_lo = fn(lo)
    assert f_lo <= 0.0 <= fn(hi), "oracle bracket does not straddle the root"
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if fn(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def c7_landmarks() -> str:
    """Landmark order quantities against independent bisection oracles."""
    c1, c2 = _REFERENCE.c1, _REFERENCE.c2
    costs = _reference_costs()
    case1 = _CASE_WEIGHTS["case1"]

    z_oracle = _bisect(lambda z: ndtr(z) - 8.0 / 9.0, -10.0, 10.0)
    classical = classical_optimal_q(c2, costs["high_margin"])
    assert abs(classical - (c2.mu + c2.sigma * z_oracle)) <= 0.05, (
        f"classical optimum {classical:.4f} vs oracle {c2.mu + c2.sigma * z_oracle:.4f}"
    )

    mean_weight = expected_value(case1)

    def mixture_cdf(x: float) -> float:
        return mean_weight * ndtr((x - c1.mu) / c1.sigma) + (
            1.0 - mean_weight
        ) * ndtr((x - c2.mu) / c2.sigma)

    q_high = optimal_q_mean_weight(case1, c1, c2, costs["high_margin"])
    oracle_high = _bisect(lambda x: mixture_cdf(x) - 8.0 / 9.0, -200.0, 700.0)
    assert abs(q_high - oracle_high) <= 0.2, f"{q_high:.4f} vs oracle {oracle_high:.4f}"
    assert abs(oracle_high - 207.287) <= 0.05, f"oracle drifted: {oracle_high:.4f}"

    q_low = optimal_q_mean_weight(case1, c1, c2, costs["low_margin"])
    oracle_low = _bisect(lambda x: mixture_cdf(x) - 2.0 / 7.0, -200.0, 700.0)
    assert abs(q_low - oracle_low) <= 0.2, f"{q_low:.4f} vs oracle {oracle_low:.4f}"
    assert abs(oracle_low - 94.622) <= 0.05, f"oracle drifted: {oracle_low:.4f}"

    return (
        f"classical {classical:.2f}, mean-weight high {q_high:.2f}, low {q_low:.2f}"
    )


def c8_simulation_reproduction() -> str:
    """Ten-seed average of the derived weight close to the reference legs,
    with the defuzzification identity exact on every run."""
    target = np.array([0.57, 0.67, 0.75, 0.86])
    base = _REFERENCE.simulation
    legs = []
    for seed in range(1, 11):
        counts = simulate_visitors(replace(base, seed=seed))
        derived = derive_fuzzy_weight(counts)
        identity_gap = abs(expected_value(derived.p_tilde) - derived.p0)
        assert identity_gap <= 1e-12, f"defuzzification gap {identity_gap:.2e}"
        legs.append(derived.p_tilde.legs)
    mean_legs = np.mean(np.asarray(legs), axis=0)
    gaps = np.abs(mean_legs - target)
    assert np.all(gaps <= 0.03), f"mean legs {np.round(mean_legs, 4)} off by {np.round(gaps, 4)}"
    return f"mean legs {np.round(mean_legs, 4).tolist()}, max gap {gaps.max():.3f}"


def c9_benefit_behavior() -> str:
    """Nonnegative benefits against fixed-weight candidates, the exact
    risk-neutral tie, and a large worst case for the thin-margin setup."""
    c1, c2 = _REFERENCE.c1, _REFERENCE.c2
    costs = _reference_costs()
    q_p0 = {name: classical_optimal_q(GmmDemand(c1, c2, 0.0), k) for name, k in costs.items()}
    q_p1 = {name: classical_optimal_q(GmmDemand(c1, c2, 1.0), k) for name, k in costs.items()}
    defined = 0
    undefined = 0
    case1_low_extreme_best = -np.inf
    for w_name, weight in _CASE_WEIGHTS.items():
        for k_name, k in costs.items():
            q_mean = optimal_q_mean_weight(weight, c1, c2, k)
            for beta in _BETA_GRID:
                d = DefuzzifiedDemand(weight, beta, c1, c2)
                for label, q_candidate in (
                    ("mean", q_mean), ("p0", q_p0[k_name]), ("p1", q_p1[k_name]),
                ):
                    result = compare_policies(q_candidate, d, k)
                    if result.status == "undefined":
                        undefined += 1
                        continue
                    defined += 1
                    assert result.benefit_ratio >= -1e-9, (
                        f"negative benefit {result.benefit_ratio:.2e} for "
                        f"{w_name}/{k_name}/{label} at beta={beta}"
                    )
                    if label == "mean" and beta == 0.5:
                        assert abs(result.benefit_ratio) <= 1e-9, (
                            f"risk-neutral tie broken: {result.benefit_ratio:.2e}"
                        )
                    if w_name == "case1" and k_name == "low_margin" and label in ("p0", "p1"):
                        case1_low_extreme_best = max(
                            case1_low_extreme_best, result.benefit_ratio
                        )
    assert case1_low_extreme_best > 0.5, (
        f"worst-case benefit only {case1_low_extreme_best:.3f}"
    )
    return (
        f"{defined} defined comparisons (+{undefined} flagged undefined), "
        f"case1/low-margin extreme-weight benefit up to {case1_low_extreme_best:.2f}"
    )


def c10_cli_determinism() -> str:
    """Every report subcommand writes byte-identical CSVs on a rerun."""
    import contextlib
    import io

    from . import cli

    subcommands = ("density", "moments", "optimize", "profit", "compare", "simulate-p")
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        config_path = root / "scenario.json"
        config_path.write_text(json.dumps(baseline_scenario_dict(), indent=2))
        outputs: dict[str, list[Path]] = {}
        for run in ("first", "second"):
            for name in subcommands:
                out_dir = root / run / name
                with contextlib.redirect_stdout(io.StringIO()):
                    code = cli.main(
                        [name, "--config", str(config_path), "--out", str(out_dir)]
                    )
                assert code == 0, f"{name} exited with {code} on the {run} run"
                outputs.setdefault(name, []).append(out_dir)
        checked = 0
        for name, (first, second) in outputs.items():
            first_files = sorted(p.name for p in first.iterdir())
            second_files = sorted(p.name for p in second.iterdir())
            assert first_files == second_files, f"{name} wrote different file sets"
            for fname in first_files:
                same = filecmp.cmp(first / fname, second / fname, shallow=False)
                assert same, f"{name}/{fname} differs between reruns"
                checked += 1
    return f"{checked} files byte-identical across reruns of {len(subcommands)} subcommands"


CRITERIA: tuple[tuple[str, str, Callable[[], str]], ...] = (
    ("C1", "mixture coefficient identities", c1_coefficient_identities),
    ("C2", "defuzzified distribution validity", c2_cdf_validity),
    ("C3", "risk-neutral reduction", c3_risk_neutral_reduction),
    ("C4", "leg derivative oracles and concavity", c4_derivative_oracles),
    ("C5", "monotonicity in the risk factor", c5_monotonic_in_beta),
    ("C6", "closed-form profit statistics", c6_profit_statistics),
    ("C7", "landmark order quantities", c7_landmarks),
    ("C8", "visitor simulation reproduction", c8_simulation_reproduction),
    ("C9", "policy benefit behavior", c9_benefit_behavior),
    ("C10", "CLI determinism", c10_cli_determinism),
)


def run_all(emit=print) -> bool:
    """Run every criterion, emitting one pass/fail line each."""
    all_ok = True
    for cid, title, fn in CRITERIA:
        try:
            detail = fn()
        except AssertionError as err:
            all_ok = False
            emit(f"FAIL {cid} {title}: {err}")
        else:
            emit(f"PASS {cid} {title}: {detail}")
    return all_ok
