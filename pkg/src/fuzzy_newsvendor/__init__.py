"""Fuzzy-weighted Gaussian-mixture newsvendor toolkit.

Order-quantity optimization for demand mixing a review-adjusted and a
historical Gaussian hypothesis under a trapezoidal fuzzy weight, with a
risk factor selecting between the pessimistic and optimistic legs of the
fuzzy profit, plus the visitor simulation that derives the weight from
page traffic.
"""

from .demand import (
    DefuzzifiedDemand,
    GaussianComponent,
    GmmDemand,
    MixtureCoefficients,
    NegativeDemandMassWarning,
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
from .errors import NumericalError, WeightRangeError
from .fuzzy import (
    AlphaCut,
    AlphaCutTable,
    CredibilityTriple,
    TrapezoidalFuzzyNumber,
    add,
    alpha_cut,
    credibility_geq,
    expected_value,
    extend_unary,
    membership,
    multiply,
)
from .newsvendor import (
    CostStructure,
    DemandCdf,
    ProfitStats,
    classical_optimal_q,
    critical_fractile,
    expected_profit,
    profit,
    profit_stats,
    profit_variance,
)
from .optimizer import (
    PolicyComparison,
    compare_policies,
    crossover_quantity,
    fuzzy_profit_leg_expectation,
    objective_derivative,
    optimal_q_beta,
    optimal_q_mean_weight,
    optimal_q_uniform,
)
from .reviews import (
    DerivedWeight,
    OrderCounts,
    PopulationConfig,
    RatingSweepRow,
    derive_fuzzy_weight,
    rating_sweep,
    simulate_visitors,
)
from .scenarios import ConfigError, ScenarioConfig, baseline_scenario, load_scenario

__version__ = "0.1.0"

__all__ = [
    "AlphaCut",
    "AlphaCutTable",
    "ConfigError",
    "CostStructure",
    "CredibilityTriple",
    "DefuzzifiedDemand",
    "DemandCdf",
    "DerivedWeight",
    "GaussianComponent",
    "GmmDemand",
    "MixtureCoefficients",
    "NegativeDemandMassWarning",
    "NumericalError",
    "OrderCounts",
    "PolicyComparison",
    "PopulationConfig",
    "ProfitStats",
    "RatingSweepRow",
    "ScenarioConfig",
    "TrapezoidalFuzzyNumber",
    "WeightRangeError",
    "add",
    "alpha_cut",
    "alpha_integrated_density",
    "baseline_scenario",
    "classical_optimal_q",
    "compare_policies",
    "credibility_geq",
    "critical_fractile",
    "crossover_quantity",
    "defuzzified_cdf",
    "defuzzified_moments",
    "defuzzified_pdf",
    "derive_fuzzy_weight",
    "expected_profit",
    "expected_value",
    "extend_unary",
    "fuzzy_profit_leg_expectation",
    "ghj_eval",
    "joint_alpha_density",
    "load_scenario",
    "membership",
    "mixture_coefficients",
    "multiply",
    "normal_cdf",
    "normal_quantile",
    "objective_derivative",
    "optimal_q_beta",
    "optimal_q_mean_weight",
    "optimal_q_uniform",
    "profit",
    "profit_stats",
    "profit_variance",
    "rating_sweep",
    "simulate_visitors",
]
