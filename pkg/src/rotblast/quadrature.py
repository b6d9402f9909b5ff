"""Adaptive quadrature on the unit interval."""

from __future__ import annotations

import math
import warnings

from scipy import integrate

from .errors import ConvergenceError

__all__ = ["integrate_01", "power_tail"]


def integrate_01(fn, tol: float = 1e-10, x_floor: float = 0.0, limit: int = 200) -> float:
    """Integrate ``fn`` over ``(x_floor, 1]``.

    Uses globally adaptive Gauss-Kronrod (QUADPACK ``qags``), which never
    evaluates the endpoints, so integrable singularities at the lower end
    are tolerated.  With ``x_floor > 0`` the part below the floor is dropped;
    :func:`power_tail` estimates it.

    Raises
    ------
    ConvergenceError
        If the error estimate exceeds ``tol`` (with a 10x allowance for the
        pessimism of the Kronrod estimate) or QUADPACK reports failure.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(fn, x_floor, 1.0, epsabs=tol, epsrel=tol, limit=limit)
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"quadrature failed: {exc}") from exc
    if not err <= 10.0 * max(tol, tol * abs(value)):
        raise ConvergenceError(f"quadrature error estimate {err:.3e} above tolerance {tol:.1e}")
    return value


def power_tail(fn, x_floor: float) -> float:
    """Estimate ``int_0^x_floor fn`` assuming ``fn ~ c x^p`` below the floor.

    The exponent comes from the log-slope between ``x_floor`` and
    ``2 x_floor``.  A zero or sign-changing integrand there gives no usable
    slope and a zero estimate.

    Raises
    ------
    ConvergenceError
        If the fitted exponent is ``<= -1``, i.e. the integral diverges.
    """
    if x_floor <= 0.0:
        return 0.0
    h1, h2 = fn(x_floor), fn(2.0 * x_floor)
    if h1 == 0.0 or h1 * h2 <= 0.0:
        return 0.0
    p = math.log(h2 / h1) / math.log(2.0)
    if p <= -1.0:
        raise ConvergenceError(f"integrand ~ x^{p:.3f} near the axis is not integrable")
    return h1 * x_floor / (p + 1.0)
