"""Single-period stocking economics for an arbitrary demand distribution.

The demand enters only through a CDF handle: any object with a ``cdf``
callable and a ``bracket`` search interval, plus an optional ``quantile``
that short-circuits inversion. Both the classical mixtures and the
fuzzy-weight demand models satisfy this protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from .errors import NumericalError
from .numerics import invert_cdf, quad_checked


@runtime_checkable
class DemandCdf(Protocol):
    """Evaluable demand distribution: a CDF plus a finite search bracket."""

    def cdf(self, x: float) -> float: ...

    @property
    def bracket(self) -> tuple[float, float]: ...


@dataclass(frozen=True)
class CostStructure:
    """Unit economics: purchase cost, selling price, salvage value.

    Requires salvage < cost < price so that every unsold unit loses money,
    every sold unit earns money, and the critical fractile is interior.
    """

    cost: float
    price: float
    salvage: float

    def __post_init__(self) -> None:
        if not self.salvage < self.cost < self.price:
            raise ValueError(
                "need salvage < cost < price, got "
                f"V={self.salvage}, C={self.cost}, M={self.price}"
            )

    @property
    def price_less_salvage(self) -> float:
        """Per-unit spread price - salvage (positive)."""
        return self.price - self.salvage

    @property
    def salvage_less_cost(self) -> float:
        """Per-unit overage payoff salvage - cost (negative)."""
        return self.salvage - self.cost

    @property
    def unit_margin(self) -> float:
        """Per-unit underage payoff price - cost (positive)."""
        return self.price - self.cost

    @property
    def critical_fractile(self) -> float:
        return self.unit_margin / self.price_less_salvage


@dataclass(frozen=True)
class ProfitStats:
    """Order quantity with its expected profit and profit variance."""

    order_q: float
    expected_profit: float
    profit_variance: float

    def __post_init__(self) -> None:
        if self.profit_variance < 0.0:
            raise ValueError(f"variance cannot be negative, got {self.profit_variance}")


def profit(x: float, q: float, costs: CostStructure) -> float:
    """Realized profit for demand ``x`` and order ``q``.

    Sales are capped at the order quantity; leftovers are salvaged.
    """
    if q < 0:
        raise ValueError(f"order quantity must be nonnegative, got {q}")
    if x <= q:
        return costs.price_less_salvage * x + costs.salvage_less_cost * q
    return costs.unit_margin * q


def critical_fractile(costs: CostStructure) -> float:
    """Service level (price - cost) / (price - salvage) at the optimum."""
    return costs.critical_fractile


def expected_profit(fd: DemandCdf, q: float, costs: CostStructure) -> float:
    """Expected profit (salvage - price) * int_0^q F + (price - cost) * q.

    Assumes negligible demand mass below zero (the demand constructors warn
    otherwise); concave in ``q``.
    """
    if q < 0:
        raise ValueError(f"order quantity must be nonnegative, got {q}")
    if q == 0:
        return 0.0
    cum = quad_checked(lambda x: float(fd.cdf(x)), 0.0, q)
    return -costs.price_less_salvage * cum + costs.unit_margin * q


def profit_variance(fd: DemandCdf, q: float, costs: CostStructure) -> float:
    """Profit variance (price - salvage)^2 (2q I0 - 2 I1 - I0^2) with
    I0 = int_0^q F and I1 = int_0^q x F(x) dx; non-decreasing in ``q``."""
    if q < 0:
        raise ValueError(f"order quantity must be nonnegative, got {q}")
    if q == 0:
        return 0.0
    i0 = quad_checked(lambda x: float(fd.cdf(x)), 0.0, q)
    i1 = quad_checked(lambda x: x * float(fd.cdf(x)), 0.0, q)
    return _variance_from_integrals(q, i0, i1, costs)


def profit_stats(fd: DemandCdf, q: float, costs: CostStructure) -> ProfitStats:
    """Expected profit and variance sharing one pass of CDF integrals."""
    if q < 0:
        raise ValueError(f"order quantity must be nonnegative, got {q}")
    if q == 0:
        return ProfitStats(0.0, 0.0, 0.0)
    i0 = quad_checked(lambda x: float(fd.cdf(x)), 0.0, q)
    i1 = quad_checked(lambda x: x * float(fd.cdf(x)), 0.0, q)
    expectation = -costs.price_less_salvage * i0 + costs.unit_margin * q
    return ProfitStats(q, expectation, _variance_from_integrals(q, i0, i1, costs))


def _variance_from_integrals(
    q: float, i0: float, i1: float, costs: CostStructure
) -> float:
    spread = costs.price_less_salvage
    raw = spread * spread * (2.0 * q * i0 - 2.0 * i1 - i0 * i0)
    if raw < -1e-6:
        raise NumericalError(f"variance quadrature produced {raw:.3e} < 0")
    return max(raw, 0.0)


def classical_optimal_q(fd: DemandCdf, costs: CostStructure) -> float:
    """Order quantity solving F(q) = critical fractile.

    Uses the handle's own quantile when it has one, otherwise inverts the
    CDF on the handle's bracket. The solution is checked to satisfy
    |F(q) - fractile| <= 1e-9.
    """
    target = costs.critical_fractile
    quantile = getattr(fd, "quantile", None)
    if quantile is not None:
        q = float(quantile(target))
    else:
        lo, hi = fd.bracket
        q = invert_cdf(fd.cdf, target, lo, hi)
    residual = abs(float(fd.cdf(q)) - target)
    if residual > 1e-9:
        raise NumericalError(
            f"optimal quantity residual {residual:.3e} exceeds 1e-9"
        )
    return q
