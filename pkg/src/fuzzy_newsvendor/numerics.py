"""Quadrature and monotone-CDF inversion helpers shared across modules."""

from __future__ import annotations

from typing import Callable, Sequence

from scipy import integrate
from scipy.optimize import brentq

from .errors import NumericalError

#: Absolute tolerance requested from adaptive quadrature.
QUAD_ABS_TOL = 1e-10

#: Largest acceptable |cdf(q) - target| after inversion.
INVERT_RESIDUAL_TOL = 1e-9


def quad_checked(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    points: Sequence[float] | None = None,
    epsabs: float = QUAD_ABS_TOL,
    epsrel: float = 1e-10,
) -> float:
    """Adaptive quadrature of ``func`` on [a, b] that fails loudly.

    Raises :class:`NumericalError` with the residual estimate instead of
    returning a silently inaccurate value when the integrator gives up.
    """
    if a == b:
        return 0.0
    interior = None
    if points is not None:
        interior = [p for p in points if a < p < b] or None
    result = integrate.quad(
        func, a, b, points=interior, epsabs=epsabs, epsrel=epsrel,
        limit=200, full_output=1,
    )
    if len(result) > 3:
        message = str(result[3]).splitlines()[0]
        raise NumericalError(
            f"quadrature on [{a:g}, {b:g}] did not converge: {message} "
            f"(residual estimate {result[1]:.3e})"
        )
    return float(result[0])


def invert_cdf(
    cdf: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    *,
    residual_tol: float = INVERT_RESIDUAL_TOL,
) -> float:
    """Solve cdf(q) = target for a continuous non-decreasing cdf on [lo, hi]."""
    if not 0.0 < target < 1.0:
        raise ValueError(f"target probability must be in (0, 1), got {target}")
    if cdf(lo) - target > 0.0 or cdf(hi) - target < 0.0:
        raise NumericalError(
            f"cannot bracket probability {target:g} on [{lo:g}, {hi:g}]"
        )
    q = brentq(lambda x: float(cdf(x)) - target, lo, hi, xtol=1e-12, maxiter=200)
    residual = abs(float(cdf(q)) - target)
    if residual > residual_tol:
        raise NumericalError(
            f"inversion residual {residual:.3e} exceeds {residual_tol:g}"
        )
    return float(q)
