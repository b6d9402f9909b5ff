"""
Shock strength, speed and arrival time as functions of the shock radius.

The energy balance ties ``y = (a0/U)^2`` to the radius through
``y / s = J_eff + K y`` with ``s = r_s^2 p0 / E``, where ``J_eff`` is the
effective energy factor and ``K = J0 theta_1 - (1 - b rho0)/(2 (gamma - 1))``
is the first-order correction (``K = 0`` at order zero).  The relation is
linear in ``y``, so it is inverted in closed form.

Two ambient conventions are supported.  ``"fixed"`` freezes ``p0`` and
``a0`` at a reference radius, which gives ``U ~ 1/r_s`` at order zero.
``"local"`` re-evaluates the rotating equilibrium at every radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from scipy.optimize import brentq

from .errors import BreakdownError, ConvergenceError, DomainError
from .gas_model import AmbientState, GasParams, RotationParams, ambient_state, sound_speed
from .quadrature import integrate_01
from .series_engine import SeriesCoefficients

__all__ = [
    "ShockTrajectory",
    "characteristic_radius",
    "reference_ambient",
    "first_order_slope",
    "y_of_radius",
    "velocity_of_radius",
    "travel_time",
    "time_of_radius",
    "shock_trajectory",
]

AmbientMode = Literal["fixed", "local"]


@dataclass(frozen=True)
class ShockTrajectory:
    """Sampled shock trajectory.

    ``samples`` has columns ``(t, r_s, U, y)``; ``t`` is measured from the
    first row.
    """

    explosion_energy: float
    r_s0: float
    samples: np.ndarray
    order: int
    mode: str

    @property
    def t(self):
        return self.samples[:, 0]

    @property
    def r_s(self):
        return self.samples[:, 1]

    @property
    def U(self):
        return self.samples[:, 2]

    @property
    def y(self):
        return self.samples[:, 3]


def characteristic_radius(E: float, p0: float) -> float:
    """``r_s0 = sqrt(E / p0)``."""
    if not E > 0.0:
        raise DomainError(f"explosion energy must be positive, got {E}")
    if not p0 > 0.0:
        raise DomainError(f"ambient pressure must be positive, got {p0}")
    return math.sqrt(E / p0)


def reference_ambient(gas: GasParams, rot: RotationParams, r_ref: float = 1.0, p0: float = None) -> AmbientState:
    """Ambient state frozen at ``r_ref``.

    ``p0`` overrides the rotating-equilibrium pressure, which is needed for
    the non-rotating medium where that pressure vanishes.
    """
    if p0 is None:
        amb = ambient_state(gas, rot, r_ref)
        if amb.degenerate:
            raise DomainError("ambient pressure vanishes for a non-rotating medium; supply p0")
        return amb
    if not p0 > 0.0:
        raise DomainError(f"ambient pressure must be positive, got {p0}")
    v0 = rot.resolved_v_star * r_ref**rot.alpha
    return AmbientState(
        gas.rho0, p0, v0, sound_speed(p0, gas.rho0, gas), v0 / r_ref, r_ref,
    )


def first_order_slope(coeffs: SeriesCoefficients, gas: GasParams) -> float:
    """``K = J0 theta_1 - (1 - b rho0) / (2 (gamma - 1))``."""
    if coeffs.theta1 is None:
        raise DomainError("first-order kinematics needs theta1 in the coefficients")
    return coeffs.j0 * coeffs.theta1 - (1.0 - gas.beta) / (2.0 * (gas.gamma - 1.0))


def _check_order(order):
    if order not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {order}")


def _y_from_s(s, coeffs, gas, order):
    if not coeffs.j0_eff > 0.0:
        raise BreakdownError(f"effective energy factor {coeffs.j0_eff} must be positive")
    slope = first_order_slope(coeffs, gas) if order == 1 else 0.0
    denom = 1.0 - slope * s
    if np.any(denom <= 0.0):
        raise BreakdownError("first-order energy relation has no positive root; series invalid here")
    y = coeffs.j0_eff * s / denom
    if np.any(y >= 1.0):
        raise BreakdownError(f"y = {np.max(y):.6g} >= 1: strong-shock series invalid")
    return y


def _pressure_at(r_s, gas, rot, ambient, mode):
    if mode == "fixed":
        return ambient.p0
    if mode == "local":
        amb = ambient_state(gas, rot, r_s)
        if amb.degenerate:
            raise DomainError("local ambient mode needs a rotating medium")
        return amb.p0
    raise DomainError(f"unknown ambient mode {mode!r}")


def y_of_radius(
    r_s, E: float, gas: GasParams, rot: RotationParams, coeffs: SeriesCoefficients,
    order: int = 0, p0: float = 1.0,
):
    """Shock-strength parameter ``y`` at radius ``r_s`` for a fixed ``p0``.

    Raises
    ------
    BreakdownError
        If the effective energy factor is not positive or the result has
        ``y >= 1``.
    """
    _check_order(order)
    r_s = np.asarray(r_s, dtype=float)
    if np.any(r_s <= 0.0):
        raise DomainError("shock radius must be positive")
    r0 = characteristic_radius(E, p0)
    y = _y_from_s((r_s / r0) ** 2, coeffs, gas, order)
    return float(y) if y.ndim == 0 else y


def velocity_of_radius(
    r_s, E: float, ambient: AmbientState, coeffs: SeriesCoefficients, order: int = 0,
    gas: GasParams = None, rot: RotationParams = None, mode: AmbientMode = "fixed",
):
    """Shock speed ``U = a0 / sqrt(y)``.

    ``gas`` is required at first order and ``rot`` in the local mode.
    """
    _check_order(order)
    if order == 1 and gas is None:
        raise DomainError("first-order speed needs the gas parameters")
    gas = gas or GasParams(rho0=ambient.rho0)
    if mode == "fixed":
        y = y_of_radius(r_s, E, gas, rot, coeffs, order, p0=ambient.p0)
        return ambient.a0 / np.sqrt(y)
    if rot is None:
        raise DomainError("local ambient mode needs the rotation parameters")
    r_arr = np.atleast_1d(np.asarray(r_s, dtype=float))
    out = np.empty_like(r_arr)
    for i, r in enumerate(r_arr):
        amb = ambient_state(gas, rot, r)
        if amb.degenerate:
            raise DomainError("local ambient mode needs a rotating medium")
        out[i] = amb.a0 / math.sqrt(y_of_radius(r, E, gas, rot, coeffs, order, p0=amb.p0))
    return float(out[0]) if np.ndim(r_s) == 0 else out


def travel_time(speed: Callable[[float], float], r_start: float, r_end: float, tol: float = 1e-10) -> float:
    """``int dr / U(r)`` from ``r_start`` to ``r_end`` (signed)."""
    if r_start == r_end:
        return 0.0
    lo, hi = sorted((r_start, r_end))
    width = hi - lo

    def integrand(u):
        return 1.0 / speed(lo + width * u)

    val = width * integrate_01(integrand, tol=tol)
    return val if r_end > r_start else -val


def time_of_radius(
    r_s_target: float, E: float, ambient: AmbientState, coeffs: SeriesCoefficients, order: int = 0,
    gas: GasParams = None, rot: RotationParams = None, mode: AmbientMode = "fixed", tol: float = 1e-10,
    r_s_from: float = None,
) -> float:
    """Time for the shock to travel from ``r_s_from`` (default ``r_s0``) to ``r_s_target``."""
    r0 = characteristic_radius(E, ambient.p0)
    if not r_s_target > r0 * 1e-6:
        raise DomainError(f"target radius {r_s_target} is below 1e-6 r_s0")
    start = r0 if r_s_from is None else r_s_from

    def speed(r):
        return float(velocity_of_radius(r, E, ambient, coeffs, order, gas, rot, mode))

    return travel_time(speed, start, r_s_target, tol=tol)


def _radius_at_y(y_target, E, gas, rot, ambient, coeffs, order, mode):
    def resid(log_r):
        r = math.exp(log_r)
        p0 = _pressure_at(r, gas, rot, ambient, mode)
        s = r * r * p0 / E
        slope = first_order_slope(coeffs, gas) if order == 1 else 0.0
        # y / s = J_eff + K y, rearranged to stay finite for every s
        return s * (coeffs.j0_eff + slope * y_target) - y_target

    centre = math.log(characteristic_radius(E, ambient.p0))
    lo, hi = centre - 40.0, centre + 40.0
    if resid(lo) * resid(hi) > 0.0:
        raise ConvergenceError(f"no radius with y = {y_target} in the search bracket")
    root, info = brentq(resid, lo, hi, xtol=1e-14, rtol=1e-14, full_output=True)
    if not info.converged:
        raise ConvergenceError(f"radius search for y = {y_target} did not converge")
    return math.exp(root)


def shock_trajectory(
    E: float, gas: GasParams, rot: RotationParams, coeffs: SeriesCoefficients,
    ambient: AmbientState, order: int = 0, y_ceiling: float = 0.1, n_points: int = 50,
    mode: AmbientMode = "fixed", tol: float = 1e-10,
) -> ShockTrajectory:
    """Sample ``(t, r_s, U, y)`` outward until ``y`` reaches ``y_ceiling``.

    Sampling starts at ``r_s0`` when ``y(r_s0)`` is below the ceiling.
    Otherwise it starts where ``y = y_ceiling / 100`` so that every row stays
    in the strong-shock range.  Times are measured from the first row.
    """
    _check_order(order)
    if not (0.0 < y_ceiling < 1.0):
        raise DomainError(f"y_ceiling must lie in (0, 1), got {y_ceiling}")
    if n_points < 2:
        raise DomainError("need at least two trajectory points")
    r0 = characteristic_radius(E, ambient.p0)
    s0 = r0 * r0 * _pressure_at(r0, gas, rot, ambient, mode) / E
    slope = first_order_slope(coeffs, gas) if order == 1 else 0.0
    # y at r_s0 may exceed one, so it is only compared, not validated
    y0 = coeffs.j0_eff * s0 / (1.0 - slope * s0) if slope * s0 < 1.0 else math.inf
    r_end = _radius_at_y(y_ceiling, E, gas, rot, ambient, coeffs, order, mode)
    r_start = r0 if y0 < y_ceiling else _radius_at_y(y_ceiling / 100.0, E, gas, rot, ambient, coeffs, order, mode)
    radii = np.geomspace(r_start, r_end, n_points)
    radii[0], radii[-1] = r_start, r_end
    p0 = np.array([_pressure_at(r, gas, rot, ambient, mode) for r in radii])
    y = _y_from_s(radii**2 * p0 / E, coeffs, gas, order)
    a0 = np.full(n_points, ambient.a0) if mode == "fixed" else np.array([ambient_state(gas, rot, r).a0 for r in radii])
    U = a0 / np.sqrt(y)

    def speed(r):
        return float(velocity_of_radius(r, E, ambient, coeffs, order, gas, rot, mode))

    # segment sums keep every quadrature interval short
    t = np.empty(n_points)
    t[0] = 0.0
    for i in range(1, n_points):
        t[i] = t[i - 1] + travel_time(speed, radii[i - 1], radii[i], tol=tol)
    samples = np.column_stack([t, radii, U, y])
    return ShockTrajectory(explosion_energy=E, r_s0=r0, samples=samples, order=order, mode=mode)
