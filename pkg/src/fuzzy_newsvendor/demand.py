"""Two-hypothesis Gaussian demand models.

Component 1 is the review-adjusted (or campaign-boosted) demand hypothesis
and carries the weight; component 2 is the historical one. Besides the
classical mixture ``p*f1 + (1-p)*f2``, this module provides the demand
distribution induced by a trapezoidal fuzzy weight and a risk factor
``beta`` in [0, 1]:

    F(x) = H(x)/2 + (1 - beta) * (J(x) - H(x)),

where H and J are the quadratic and linear blends of the component CDFs
built from the weight's mixture coefficients (P1, P2, P3). At beta = 1/2
this collapses to the classical mixture with the weight's expected value.

Demand is not truncated at zero; constructors warn when a component puts
non-negligible mass below zero because downstream profit integrals start
at zero.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .fuzzy import TrapezoidalFuzzyNumber, alpha_cut, expected_value
from .numerics import invert_cdf, quad_checked

#: Search brackets and integration windows extend this many standard
#: deviations beyond the component means.
BRACKET_SIGMAS = 10.0

#: Constructors warn when a component CDF at zero exceeds this mass.
NEGATIVE_MASS_TOL = 1e-6

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class NegativeDemandMassWarning(UserWarning):
    """A demand component has non-negligible probability below zero."""


def _match(reference, value):
    """Return ``value`` as a scalar float unless the inputs were arrays."""
    if isinstance(reference, np.ndarray):
        return value
    return float(value)


@dataclass(frozen=True)
class GaussianComponent:
    """Normal demand hypothesis with mean ``mu`` and spread ``sigma`` > 0."""

    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.mu) and np.isfinite(self.sigma)):
            raise ValueError("component parameters must be finite")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    def pdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return _match(x, np.exp(-0.5 * z * z) / (self.sigma * _SQRT_2PI))

    def cdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return _match(x, ndtr(z))

    def quantile(self, u: float) -> float:
        if not 0.0 < u < 1.0:
            raise ValueError(f"probability must be in (0, 1), got {u}")
        return float(self.mu + self.sigma * ndtri(u))

    @property
    def bracket(self) -> tuple[float, float]:
        return (self.mu - BRACKET_SIGMAS * self.sigma,
                self.mu + BRACKET_SIGMAS * self.sigma)


def normal_cdf(x, component: GaussianComponent):
    return component.cdf(x)


def normal_quantile(u: float, component: GaussianComponent) -> float:
    return component.quantile(u)


def _warn_negative_mass(*components: GaussianComponent) -> None:
    worst = max(float(c.cdf(0.0)) for c in components)
    if worst > NEGATIVE_MASS_TOL:
        warnings.warn(
            f"demand component has mass {worst:.3e} below zero; "
            "profit integrals start at 0 and will be biased",
            NegativeDemandMassWarning,
            stacklevel=3,
        )


def _joint_bracket(c1: GaussianComponent, c2: GaussianComponent) -> tuple[float, float]:
    widest = BRACKET_SIGMAS * max(c1.sigma, c2.sigma)
    return (min(c1.mu, c2.mu) - widest, max(c1.mu, c2.mu) + widest)


@dataclass(frozen=True)
class MixtureCoefficients:
    """Triple (P1, P2, P3) driving the quadratic CDF blends.

    Satisfies 0 <= P1, P3 <= 2, 0 <= P2 <= 1, and P1 + 2*P2 + P3 = 2; the
    pair identities (P1 + P2)/2 = E[weight] and (P2 + P3)/2 = 1 - E[weight]
    tie the triple back to the generating fuzzy weight.
    """

    P1: float
    P2: float
    P3: float

    def __post_init__(self) -> None:
        eps = 1e-12
        if not (-eps <= self.P1 <= 2.0 + eps and -eps <= self.P3 <= 2.0 + eps):
            raise ValueError(f"P1 and P3 must lie in [0, 2], got {self.P1}, {self.P3}")
        if not -eps <= self.P2 <= 1.0 + eps:
            raise ValueError(f"P2 must lie in [0, 1], got {self.P2}")
        if abs(self.P1 + 2.0 * self.P2 + self.P3 - 2.0) > 1e-12:
            raise ValueError("P1 + 2*P2 + P3 must equal 2")

    @property
    def mean_weight(self) -> float:
        return 0.5 * (self.P1 + self.P2)


def mixture_coefficients(p_tilde: TrapezoidalFuzzyNumber) -> MixtureCoefficients:
    """Coefficients obtained by integrating the cut-indexed joint density
    over all levels; exact polynomials in the four legs."""
    if not p_tilde.is_unit_weight():
        raise ValueError(
            f"weight support must lie in [0, 1], got {p_tilde.legs}"
        )
    p1, p2, p3, p4 = p_tilde.legs
    cross = (p1 * p3 + 2.0 * p2 * p3 + 2.0 * p1 * p4 + p2 * p4) / 3.0
    total = p1 + p2 + p3 + p4
    return MixtureCoefficients(cross, 0.5 * total - cross, cross - total + 2.0)


@dataclass(frozen=True)
class GmmDemand:
    """Classical two-component mixture with crisp weight ``p`` on component 1."""

    c1: GaussianComponent
    c2: GaussianComponent
    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"mixture weight must be in [0, 1], got {self.p}")
        _warn_negative_mass(self.c1, self.c2)

    def pdf(self, x):
        out = self.p * self.c1.pdf(np.asarray(x, dtype=float))
        out = out + (1.0 - self.p) * self.c2.pdf(np.asarray(x, dtype=float))
        return _match(x, out)

    def cdf(self, x):
        xv = np.asarray(x, dtype=float)
        return _match(x, self.p * self.c1.cdf(xv) + (1.0 - self.p) * self.c2.cdf(xv))

    def quantile(self, u: float) -> float:
        lo, hi = self.bracket
        return invert_cdf(self.cdf, u, lo, hi)

    @property
    def bracket(self) -> tuple[float, float]:
        return _joint_bracket(self.c1, self.c2)


@dataclass(frozen=True)
class DefuzzifiedDemand:
    """Ordinary demand distribution induced by a fuzzy weight and risk factor.

    ``beta`` below 1/2 leans on the pessimistic (lower) leg of the fuzzy
    profit, above 1/2 on the optimistic one; 1/2 recovers the classical
    mixture with weight E[p_tilde]. ``coeffs`` is derived from the weight at
    construction and cached on the instance.
    """

    p_tilde: TrapezoidalFuzzyNumber
    beta: float
    c1: GaussianComponent
    c2: GaussianComponent
    coeffs: MixtureCoefficients | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"risk factor must be in [0, 1], got {self.beta}")
        derived = mixture_coefficients(self.p_tilde)
        if self.coeffs is None:
            object.__setattr__(self, "coeffs", derived)
        else:
            drift = max(
                abs(self.coeffs.P1 - derived.P1),
                abs(self.coeffs.P2 - derived.P2),
                abs(self.coeffs.P3 - derived.P3),
            )
            if drift > 1e-9:
                raise ValueError("cached coefficients disagree with the weight")
        _warn_negative_mass(self.c1, self.c2)

    @property
    def bracket(self) -> tuple[float, float]:
        return _joint_bracket(self.c1, self.c2)

    def ghj(self, x):
        """The non-decreasing blend functions (G, H, J), with G = H/2."""
        xv = np.asarray(x, dtype=float)
        f1 = self.c1.cdf(xv)
        f2 = self.c2.cdf(xv)
        p = self.coeffs
        h = p.P1 * f1 * f1 + 2.0 * p.P2 * f1 * f2 + p.P3 * f2 * f2
        j = p.P1 * f1 + p.P2 * (f1 + f2) + p.P3 * f2
        return _match(x, 0.5 * h), _match(x, h), _match(x, j)

    def cdf(self, x):
        _, h, j = self.ghj(x)
        return 0.5 * h + (1.0 - self.beta) * (j - h)

    def pdf(self, x):
        xv = np.asarray(x, dtype=float)
        f1 = self.c1.pdf(xv)
        f2 = self.c2.pdf(xv)
        big_f1 = self.c1.cdf(xv)
        big_f2 = self.c2.cdf(xv)
        p = self.coeffs
        swing = f1 * (p.P1 * big_f1 + p.P2 * big_f2) + f2 * (p.P2 * big_f1 + p.P3 * big_f2)
        level = (p.P1 + p.P2) * f1 + (p.P2 + p.P3) * f2
        return _match(x, (2.0 * self.beta - 1.0) * swing + (1.0 - self.beta) * level)

    def quantile(self, u: float) -> float:
        lo, hi = self.bracket
        return invert_cdf(self.cdf, u, lo, hi)

    def moments(self) -> tuple[float, float]:
        """Mean and variance by adaptive quadrature over the bracket."""
        lo, hi = self.bracket
        modes = sorted((self.c1.mu, self.c2.mu))
        mean = quad_checked(lambda x: x * self.pdf(x), lo, hi, points=modes)
        var = quad_checked(lambda x: (x - mean) ** 2 * self.pdf(x), lo, hi, points=modes)
        return mean, var


def ghj_eval(x, d: DefuzzifiedDemand):
    return d.ghj(x)


def defuzzified_cdf(x, d: DefuzzifiedDemand):
    return d.cdf(x)


def defuzzified_pdf(x, d: DefuzzifiedDemand):
    return d.pdf(x)


def defuzzified_moments(d: DefuzzifiedDemand) -> tuple[float, float]:
    return d.moments()


def joint_alpha_density(
    x1,
    x2,
    alpha: float,
    p_tilde: TrapezoidalFuzzyNumber,
    c1: GaussianComponent,
    c2: GaussianComponent,
):
    """Joint density of the ordered pair of cut-level demand variables.

    At level ``alpha`` the weight's cut endpoints define two independent
    mixtures; sorting them gives a pair supported on x1 <= x2 with density
    f_lo(x1) f_hi(x2) + f_hi(x1) f_lo(x2) there and 0 below the diagonal.
    """
    cut = alpha_cut(p_tilde, alpha)
    x1v = np.asarray(x1, dtype=float)
    x2v = np.asarray(x2, dtype=float)
    f1_x1, f2_x1 = c1.pdf(x1v), c2.pdf(x1v)
    f1_x2, f2_x2 = c1.pdf(x2v), c2.pdf(x2v)
    lo_x1 = cut.lo * f1_x1 + (1.0 - cut.lo) * f2_x1
    hi_x1 = cut.hi * f1_x1 + (1.0 - cut.hi) * f2_x1
    lo_x2 = cut.lo * f1_x2 + (1.0 - cut.lo) * f2_x2
    hi_x2 = cut.hi * f1_x2 + (1.0 - cut.hi) * f2_x2
    value = np.where(x2v < x1v, 0.0, lo_x1 * hi_x2 + hi_x1 * lo_x2)
    if isinstance(x1, np.ndarray) or isinstance(x2, np.ndarray):
        return value
    return float(value)


def alpha_integrated_density(
    x1,
    x2,
    p_tilde: TrapezoidalFuzzyNumber,
    c1: GaussianComponent,
    c2: GaussianComponent,
    coeffs: MixtureCoefficients | None = None,
):
    """Level-integrated joint density of the ordered pair.

    Equals P1 f1(x1)f1(x2) + P2 (f1(x1)f2(x2) + f2(x1)f1(x2))
    + P3 f2(x1)f2(x2) on x1 <= x2 and 0 below the diagonal.
    """
    p = coeffs if coeffs is not None else mixture_coefficients(p_tilde)
    x1v = np.asarray(x1, dtype=float)
    x2v = np.asarray(x2, dtype=float)
    f1_x1, f2_x1 = c1.pdf(x1v), c2.pdf(x1v)
    f1_x2, f2_x2 = c1.pdf(x2v), c2.pdf(x2v)
    value = (
        p.P1 * f1_x1 * f1_x2
        + p.P2 * (f1_x1 * f2_x2 + f2_x1 * f1_x2)
        + p.P3 * f2_x1 * f2_x2
    )
    value = np.where(x2v < x1v, 0.0, value)
    if isinstance(x1, np.ndarray) or isinstance(x2, np.ndarray):
        return value
    return float(value)
