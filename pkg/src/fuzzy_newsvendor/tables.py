"""Row builders behind the CLI report subcommands.

Each builder returns ``(header, rows)`` where every cell is computed through
direct library calls, so any row can be re-derived without the harness.
Rows come out sorted by their key columns (weight, cost, beta, ...) so the
emitted bytes never depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .demand import DefuzzifiedDemand, GmmDemand
from .newsvendor import classical_optimal_q, profit_stats
from .optimizer import compare_policies, optimal_q_beta, optimal_q_mean_weight
from .reviews import derive_fuzzy_weight, rating_sweep, simulate_visitors
from .scenarios import ConfigError, ScenarioConfig

#: Density tables sample this many points across the component span.
DENSITY_POINTS = 601

#: Density grid half-width beyond the outermost mean, in max-sigma units.
DENSITY_SIGMAS = 4.0

CANDIDATE_LABELS = ("mean", "p0", "p1")


def _sorted_weights(scenario: ScenarioConfig):
    return sorted(scenario.weights, key=lambda pair: pair[0])


def _sorted_costs(scenario: ScenarioConfig):
    return sorted(scenario.costs, key=lambda pair: pair[0])


def _density_grid(scenario: ScenarioConfig) -> np.ndarray:
    widest = DENSITY_SIGMAS * max(scenario.c1.sigma, scenario.c2.sigma)
    lo = min(scenario.c1.mu, scenario.c2.mu) - widest
    hi = max(scenario.c1.mu, scenario.c2.mu) + widest
    return np.linspace(lo, hi, DENSITY_POINTS)


def density_table(scenario: ScenarioConfig):
    header = ("weight", "beta", "x", "density")
    xs = _density_grid(scenario)
    rows = []
    for name, weight in _sorted_weights(scenario):
        for beta in scenario.beta_grid:
            d = DefuzzifiedDemand(weight, beta, scenario.c1, scenario.c2)
            values = d.pdf(xs)
            rows.extend(
                (name, beta, float(x), float(v)) for x, v in zip(xs, values)
            )
    return header, rows


def moments_table(scenario: ScenarioConfig):
    header = ("weight", "beta", "mean", "variance")
    rows = []
    for name, weight in _sorted_weights(scenario):
        for beta in scenario.beta_grid:
            d = DefuzzifiedDemand(weight, beta, scenario.c1, scenario.c2)
            mean, variance = d.moments()
            rows.append((name, beta, mean, variance))
    return header, rows


def optimize_table(scenario: ScenarioConfig):
    header = ("weight", "cost", "beta", "q_mean_weight", "q_p0", "q_p1", "q_fuzzy")
    rows = []
    for w_name, weight in _sorted_weights(scenario):
        for c_name, costs in _sorted_costs(scenario):
            q_mean = optimal_q_mean_weight(weight, scenario.c1, scenario.c2, costs)
            q_p0 = classical_optimal_q(GmmDemand(scenario.c1, scenario.c2, 0.0), costs)
            q_p1 = classical_optimal_q(GmmDemand(scenario.c1, scenario.c2, 1.0), costs)
            for beta in scenario.beta_grid:
                d = DefuzzifiedDemand(weight, beta, scenario.c1, scenario.c2)
                rows.append(
                    (w_name, c_name, beta, q_mean, q_p0, q_p1, optimal_q_beta(d, costs))
                )
    return header, rows


def profit_table(scenario: ScenarioConfig):
    header = ("weight", "cost", "beta", "q_fuzzy", "expected_profit", "profit_variance")
    rows = []
    for w_name, weight in _sorted_weights(scenario):
        for c_name, costs in _sorted_costs(scenario):
            for beta in scenario.beta_grid:
                d = DefuzzifiedDemand(weight, beta, scenario.c1, scenario.c2)
                stats = profit_stats(d, optimal_q_beta(d, costs), costs)
                rows.append(
                    (w_name, c_name, beta, stats.order_q,
                     stats.expected_profit, stats.profit_variance)
                )
    return header, rows


def compare_table(scenario: ScenarioConfig):
    header = (
        "weight", "cost", "beta", "candidate",
        "q_candidate", "q_optimal", "benefit_ratio", "variance_change", "status",
    )
    rows = []
    for w_name, weight in _sorted_weights(scenario):
        for c_name, costs in _sorted_costs(scenario):
            candidates = {
                "mean": optimal_q_mean_weight(weight, scenario.c1, scenario.c2, costs),
                "p0": classical_optimal_q(GmmDemand(scenario.c1, scenario.c2, 0.0), costs),
                "p1": classical_optimal_q(GmmDemand(scenario.c1, scenario.c2, 1.0), costs),
            }
            for beta in scenario.beta_grid:
                d = DefuzzifiedDemand(weight, beta, scenario.c1, scenario.c2)
                for label in CANDIDATE_LABELS:
                    result = compare_policies(candidates[label], d, costs)
                    rows.append(
                        (w_name, c_name, beta, label,
                         result.q_candidate, result.q_optimal,
                         result.benefit_ratio, result.variance_change, result.status)
                    )
    return header, rows


def derived_weight_table(scenario: ScenarioConfig, seed: int | None = None):
    cfg = _simulation_config(scenario, seed)
    counts = simulate_visitors(cfg)
    derived = derive_fuzzy_weight(counts)
    header = (
        "seed", "mean_rating",
        "n_ric", "n1_rsc", "n2_rsc", "n0_rsc", "n1_p", "n2_p", "n0_p",
        "p0", "alpha_scale", "p1", "p2", "p3", "p4",
    )
    rows = [(
        cfg.seed, cfg.mean_rating,
        counts.n_ric, counts.n1_rsc, counts.n2_rsc, counts.n0_rsc,
        counts.n1_p, counts.n2_p, counts.n0_p,
        derived.p0, derived.alpha_scale, *derived.p_tilde.legs,
    )]
    return header, rows


def rating_sweep_table(scenario: ScenarioConfig, seed: int | None = None):
    cfg = _simulation_config(scenario, seed)
    header = ("mean_rating", "status", "p0", "p1", "p2", "p3", "p4")
    rows = []
    for row in rating_sweep(cfg, scenario.rating_grid):
        legs = row.legs if row.legs is not None else (None, None, None, None)
        rows.append((row.mean_rating, row.status, row.p0, *legs))
    return header, rows


def _simulation_config(scenario: ScenarioConfig, seed: int | None):
    if scenario.simulation is None:
        raise ConfigError("simulation", "this subcommand needs a simulation block")
    cfg = scenario.simulation
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    return cfg
