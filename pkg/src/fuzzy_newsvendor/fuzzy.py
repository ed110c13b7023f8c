"""Trapezoidal fuzzy numbers and the alpha-cut calculus built on them.

A trapezoidal fuzzy number (r1, r2, r3, r4) has membership rising linearly
from r1 to r2, pinned at 1 on [r2, r3], and falling linearly from r3 to r4.
Sums of trapezoids stay trapezoidal; products and images under an arbitrary
map generally do not, so those operations return a sampled table of
alpha-cuts with linear interpolation between levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

#: Alpha levels used when a result has to be represented as a sampled table.
ALPHA_LEVELS = 101

#: Interior samples per cut when pushing a cut through an arbitrary map.
EXTEND_GRID = 64


@dataclass(frozen=True)
class TrapezoidalFuzzyNumber:
    """Trapezoid (r1, r2, r3, r4) with r1 <= r2 <= r3 <= r4.

    Degenerate legs (r1 == r2 or r3 == r4) are allowed; membership at a
    vertical leg takes the value 1 at the kink.
    """

    r1: float
    r2: float
    r3: float
    r4: float

    def __post_init__(self) -> None:
        legs = (self.r1, self.r2, self.r3, self.r4)
        if not all(np.isfinite(legs)):
            raise ValueError(f"trapezoid legs must be finite, got {legs}")
        if not (self.r1 <= self.r2 <= self.r3 <= self.r4):
            raise ValueError(f"trapezoid legs must be non-decreasing, got {legs}")

    @property
    def legs(self) -> tuple[float, float, float, float]:
        return (self.r1, self.r2, self.r3, self.r4)

    def is_unit_weight(self) -> bool:
        """True when the support lies inside [0, 1]."""
        return 0.0 <= self.r1 and self.r4 <= 1.0

    # Convenience method forms of the module-level operations.
    def membership(self, x: float) -> float:
        return membership(self, x)

    def alpha_cut(self, alpha: float) -> "AlphaCut":
        return alpha_cut(self, alpha)

    def expected_value(self) -> float:
        return expected_value(self)

    def credibility_geq(self, y: float) -> "CredibilityTriple":
        return credibility_geq(self, y)

    def __add__(self, other: "TrapezoidalFuzzyNumber") -> "TrapezoidalFuzzyNumber":
        return add(self, other)

    def __mul__(self, other: "TrapezoidalFuzzyNumber") -> "AlphaCutTable":
        return multiply(self, other)


@dataclass(frozen=True)
class AlphaCut:
    """Closed interval of points whose membership is at least ``alpha``."""

    lo: float
    hi: float
    alpha: float

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError(f"empty cut [{self.lo}, {self.hi}]")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, other: "AlphaCut") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class CredibilityTriple:
    """Possibility, necessity, and their mean (credibility) of an event."""

    possibility: float
    necessity: float
    credibility: float

    def __post_init__(self) -> None:
        for name in ("possibility", "necessity", "credibility"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.necessity > self.possibility + 1e-12:
            raise ValueError("necessity cannot exceed possibility")
        if abs(self.credibility - 0.5 * (self.possibility + self.necessity)) > 1e-12:
            raise ValueError("credibility must be the mean of possibility and necessity")


class AlphaCutTable:
    """Fuzzy number represented by sampled alpha-cuts.

    Cuts are stored at ascending levels from 0 to 1 and interpolated
    linearly in between. Exact for trapezoids; closed under products and
    arbitrary monotone-piece maps, which trapezoids are not.
    """

    __slots__ = ("alphas", "lo", "hi")

    def __init__(self, alphas: np.ndarray, lo: np.ndarray, hi: np.ndarray):
        alphas = np.asarray(alphas, dtype=float)
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if not (alphas.shape == lo.shape == hi.shape) or alphas.ndim != 1:
            raise ValueError("alphas, lo, hi must be 1-d arrays of equal length")
        if alphas.size < 2 or alphas[0] != 0.0 or alphas[-1] != 1.0:
            raise ValueError("levels must run from 0 to 1")
        if np.any(np.diff(alphas) <= 0):
            raise ValueError("levels must be strictly increasing")
        if np.any(lo > hi):
            raise ValueError("every cut needs lo <= hi")
        for arr in (alphas, lo, hi):
            arr.setflags(write=False)
        self.alphas = alphas
        self.lo = lo
        self.hi = hi

    @classmethod
    def from_trapezoid(
        cls, r: TrapezoidalFuzzyNumber, levels: int = ALPHA_LEVELS
    ) -> "AlphaCutTable":
        a = np.linspace(0.0, 1.0, levels)
        return cls(a, r.r1 + (r.r2 - r.r1) * a, r.r4 + (r.r3 - r.r4) * a)

    def cut(self, alpha: float) -> AlphaCut:
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {alpha}")
        lo = float(np.interp(alpha, self.alphas, self.lo))
        hi = float(np.interp(alpha, self.alphas, self.hi))
        return AlphaCut(lo, hi, alpha)

    @property
    def support(self) -> tuple[float, float]:
        return (float(self.lo[0]), float(self.hi[0]))

    @property
    def core(self) -> tuple[float, float]:
        return (float(self.lo[-1]), float(self.hi[-1]))

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"AlphaCutTable(levels={self.alphas.size}, "
            f"support={self.support}, core={self.core})"
        )


def membership(r: TrapezoidalFuzzyNumber, x: float) -> float:
    """Membership degree of ``x``, piecewise linear in [0, 1]."""
    if x < r.r1 or x > r.r4:
        return 0.0
    if r.r2 <= x <= r.r3:
        return 1.0
    if x < r.r2:
        # rising leg; x > r1 here so the leg is not degenerate
        return (x - r.r1) / (r.r2 - r.r1)
    return (r.r4 - x) / (r.r4 - r.r3)


def alpha_cut(r: TrapezoidalFuzzyNumber, alpha: float) -> AlphaCut:
    """Cut at level ``alpha``; the 0-cut is the closed support [r1, r4]."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    lo = r.r1 + (r.r2 - r.r1) * alpha
    hi = r.r4 + (r.r3 - r.r4) * alpha
    return AlphaCut(lo, hi, alpha)


def expected_value(r: TrapezoidalFuzzyNumber) -> float:
    """Credibility-based expected value, (r1 + r2 + r3 + r4) / 4."""
    return (r.r1 + r.r2 + r.r3 + r.r4) / 4.0


def credibility_geq(r: TrapezoidalFuzzyNumber, y: float) -> CredibilityTriple:
    """Possibility, necessity, and credibility of the event {r >= y}."""
    pos = 1.0 if y <= r.r3 else membership(r, y)
    if y <= r.r1:
        sup_below = 0.0
    elif y > r.r2:
        sup_below = 1.0
    else:
        sup_below = (y - r.r1) / (r.r2 - r.r1)
    nec = 1.0 - sup_below
    return CredibilityTriple(pos, nec, 0.5 * (pos + nec))


def add(
    r: TrapezoidalFuzzyNumber, s: TrapezoidalFuzzyNumber
) -> TrapezoidalFuzzyNumber:
    """Legwise sum; alpha-cuts add intervalwise, so the result stays trapezoidal."""
    return TrapezoidalFuzzyNumber(r.r1 + s.r1, r.r2 + s.r2, r.r3 + s.r3, r.r4 + s.r4)


def multiply(
    r: TrapezoidalFuzzyNumber,
    s: TrapezoidalFuzzyNumber,
    levels: int = ALPHA_LEVELS,
) -> AlphaCutTable:
    """Product via interval arithmetic on each sampled cut.

    Each cut of the result is [min, max] over the four endpoint products.
    The sides of the product are generally curved, hence the table result.
    """
    a = np.linspace(0.0, 1.0, levels)
    r_lo = r.r1 + (r.r2 - r.r1) * a
    r_hi = r.r4 + (r.r3 - r.r4) * a
    s_lo = s.r1 + (s.r2 - s.r1) * a
    s_hi = s.r4 + (s.r3 - s.r4) * a
    corners = np.stack([r_lo * s_lo, r_lo * s_hi, r_hi * s_lo, r_hi * s_hi])
    return AlphaCutTable(a, corners.min(axis=0), corners.max(axis=0))


def extend_unary(
    h: Callable[[float], float],
    r: TrapezoidalFuzzyNumber,
    breakpoints: Sequence[float] = (),
    levels: int = ALPHA_LEVELS,
) -> AlphaCutTable:
    """Image of ``r`` under a real map ``h``.

    Each cut maps to [min h, max h] over the cut. The extrema are searched
    at both endpoints, at any declared breakpoints of monotonicity that fall
    inside the cut (these make piecewise-monotone maps exact), and on a
    64-point interior grid as a safety net for undeclared wiggles.

    Raises whatever ``h`` raises if it cannot be evaluated on the cut.
    """
    a = np.linspace(0.0, 1.0, levels)
    cuts_lo = r.r1 + (r.r2 - r.r1) * a
    cuts_hi = r.r4 + (r.r3 - r.r4) * a
    bps = sorted(float(b) for b in breakpoints)
    out_lo = np.empty(levels)
    out_hi = np.empty(levels)
    for i in range(levels):
        xs = list(np.linspace(cuts_lo[i], cuts_hi[i], EXTEND_GRID + 2))
        xs.extend(b for b in bps if cuts_lo[i] <= b <= cuts_hi[i])
        ys = [float(h(x)) for x in xs]
        out_lo[i] = min(ys)
        out_hi[i] = max(ys)
    return AlphaCutTable(a, out_lo, out_hi)
