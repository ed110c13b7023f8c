"""Seeded storefront-visitor simulation that derives a fuzzy review weight.

Visitors split into review-insensitive customers (who always order),
review-sensitive customers, and prospects. Every review-sensitive customer
and prospect draws a pair of star thresholds (q1, q2); against the page's
mean rating m they order outright when q2 <= m, hesitate before ordering
when q1 <= m < q2, and leave otherwise. Prospects expect more stars than
returning customers, which is why they feed the upper legs of the derived
weight.

Draws use numpy's counter-based Philox generator keyed by the seed, with
each group's thresholds drawn as one block at a fixed offset, so a
configuration pins every count bitwise and a rating sweep can re-classify
one frozen population against many ratings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import WeightRangeError
from .fuzzy import TrapezoidalFuzzyNumber, expected_value

RATING_MAX = 5.0


@dataclass(frozen=True)
class PopulationConfig:
    """Visitor population and behavior parameters.

    ``prospect_fraction`` is the share of visitors who are prospects;
    ``ric_fraction`` the share of customers who are review-insensitive.
    ``rsc_q_means`` and ``prospect_q_means`` are the (q1, q2) threshold
    means in stars; prospects must not expect fewer stars than customers.
    """

    n_visitors: int
    prospect_fraction: float
    ric_fraction: float
    rsc_q_means: tuple[float, float]
    prospect_q_means: tuple[float, float]
    q_std: float
    mean_rating: float
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rsc_q_means", tuple(float(v) for v in self.rsc_q_means))
        object.__setattr__(
            self, "prospect_q_means", tuple(float(v) for v in self.prospect_q_means)
        )
        if self.n_visitors <= 0:
            raise ValueError(f"need a positive visitor count, got {self.n_visitors}")
        for name in ("prospect_fraction", "ric_fraction"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if len(self.rsc_q_means) != 2 or len(self.prospect_q_means) != 2:
            raise ValueError("threshold means must be (q1, q2) pairs")
        if any(c > p for c, p in zip(self.rsc_q_means, self.prospect_q_means)):
            raise ValueError("prospect threshold means must dominate customer means")
        if not self.q_std > 0:
            raise ValueError(f"q_std must be positive, got {self.q_std}")
        if not 0.0 <= self.mean_rating <= RATING_MAX:
            raise ValueError(
                f"mean rating must be in [0, {RATING_MAX}], got {self.mean_rating}"
            )

    @property
    def group_sizes(self) -> tuple[int, int, int]:
        """(review-insensitive customers, review-sensitive customers, prospects)."""
        n_prospects = int(round(self.n_visitors * self.prospect_fraction))
        n_customers = self.n_visitors - n_prospects
        n_ric = int(round(n_customers * self.ric_fraction))
        return n_ric, n_customers - n_ric, n_prospects


@dataclass(frozen=True)
class OrderCounts:
    """Ordering outcome of one simulated page visit wave.

    Suffix 1 counts orders without hesitation, 2 hesitant orders, 0 visits
    without an order. Review-insensitive customers all order.
    """

    n_ric: int
    n1_rsc: int
    n2_rsc: int
    n0_rsc: int
    n1_p: int
    n2_p: int
    n0_p: int

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} cannot be negative")

    @property
    def total_rsc(self) -> int:
        return self.n1_rsc + self.n2_rsc + self.n0_rsc

    @property
    def total_prospects(self) -> int:
        return self.n1_p + self.n2_p + self.n0_p

    @property
    def total_ordering(self) -> int:
        return self.n_ric + self.n1_rsc + self.n2_rsc + self.n1_p + self.n2_p


@dataclass(frozen=True)
class DerivedWeight:
    """Crisp ratio, its scaling factor, and the trapezoidal weight they pin.

    The scaling is chosen so the weight defuzzifies back to the crisp
    ratio: E[p_tilde] = p0.
    """

    p0: float
    alpha_scale: float
    p_tilde: TrapezoidalFuzzyNumber

    def __post_init__(self) -> None:
        if not self.p_tilde.is_unit_weight():
            raise WeightRangeError(
                f"weight legs must stay in [0, 1], got {self.p_tilde.legs}",
                self.p_tilde.legs,
            )
        if abs(expected_value(self.p_tilde) - self.p0) > 1e-12:
            raise ValueError("weight must defuzzify to the crisp ratio")


@dataclass(frozen=True)
class RatingSweepRow:
    """One rating grid point: derived weight legs or a flagged failure."""

    mean_rating: float
    status: str  # "ok", "undefined" (no ordering customers), "out_of_range"
    p0: float | None
    legs: tuple[float, float, float, float] | None


def _draw_thresholds(cfg: PopulationConfig):
    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    n_ric, n_rsc, n_prospects = cfg.group_sizes
    rsc = np.clip(
        rng.normal(cfg.rsc_q_means, cfg.q_std, size=(n_rsc, 2)), 0.0, RATING_MAX
    )
    prospects = np.clip(
        rng.normal(cfg.prospect_q_means, cfg.q_std, size=(n_prospects, 2)),
        0.0,
        RATING_MAX,
    )
    return n_ric, rsc, prospects


def _classify(thresholds: np.ndarray, mean_rating: float) -> tuple[int, int, int]:
    q1 = thresholds[:, 0]
    q2 = thresholds[:, 1]
    outright = q2 <= mean_rating
    # at m == q1 the visitor counts as hesitant, not as a non-order
    hesitant = ~outright & (q1 <= mean_rating)
    n1 = int(np.count_nonzero(outright))
    n2 = int(np.count_nonzero(hesitant))
    return n1, n2, thresholds.shape[0] - n1 - n2


def simulate_visitors(cfg: PopulationConfig) -> OrderCounts:
    """Simulate one wave of visitors; deterministic given the config."""
    n_ric, rsc, prospects = _draw_thresholds(cfg)
    n1_rsc, n2_rsc, n0_rsc = _classify(rsc, cfg.mean_rating)
    n1_p, n2_p, n0_p = _classify(prospects, cfg.mean_rating)
    return OrderCounts(n_ric, n1_rsc, n2_rsc, n0_rsc, n1_p, n2_p, n0_p)


def derive_fuzzy_weight(counts: OrderCounts) -> DerivedWeight:
    """Build the trapezoidal review weight from ordering counts.

    The crisp ratio p0 is review-driven orders over ordering customers.
    Customer counts feed the lower legs, prospect counts extend the upper
    legs, and a single scaling factor makes the weight defuzzify to p0.
    Raises ``ValueError`` when no customer ordered (p0 undefined) and
    ``WeightRangeError`` when the top leg exceeds 1 (never clamped).
    """
    review_driven = counts.n1_rsc + counts.n2_rsc
    ordering_customers = counts.n_ric + review_driven
    if ordering_customers == 0:
        raise ValueError("no ordering customers: the review weight ratio is undefined")
    p0 = review_driven / ordering_customers
    n = counts.total_ordering
    stacked = 4 * counts.n1_rsc + 3 * counts.n2_rsc + 2 * counts.n1_p + counts.n2_p
    alpha = 0.0 if p0 == 0.0 else 4.0 * n * p0 / stacked
    legs = (
        alpha * counts.n1_rsc / n,
        alpha * review_driven / n,
        alpha * (review_driven + counts.n1_p) / n,
        alpha * (review_driven + counts.n1_p + counts.n2_p) / n,
    )
    if legs[3] > 1.0:
        raise WeightRangeError(
            f"derived weight leaves the unit interval (p4 = {legs[3]:.6f})", legs
        )
    return DerivedWeight(p0, alpha, TrapezoidalFuzzyNumber(*legs))


def rating_sweep(cfg: PopulationConfig, ratings) -> list[RatingSweepRow]:
    """Derive the weight for each mean rating against one frozen population.

    The thresholds are drawn once from the config's seed and re-classified
    per rating, so only the rating varies along the sweep. Failing ratings
    yield flagged rows instead of aborting the sweep.
    """
    ratings = [float(m) for m in ratings]
    for m in ratings:
        if not 0.0 <= m <= RATING_MAX:
            raise ValueError(f"ratings must be in [0, {RATING_MAX}], got {m}")
    n_ric, rsc, prospects = _draw_thresholds(cfg)
    rows: list[RatingSweepRow] = []
    for m in ratings:
        counts = OrderCounts(n_ric, *_classify(rsc, m), *_classify(prospects, m))
        try:
            derived = derive_fuzzy_weight(counts)
        except WeightRangeError as err:
            rows.append(RatingSweepRow(m, "out_of_range", None, err.legs))
        except ValueError:
            rows.append(RatingSweepRow(m, "undefined", None, None))
        else:
            rows.append(RatingSweepRow(m, "ok", derived.p0, derived.p_tilde.legs))
    return rows
