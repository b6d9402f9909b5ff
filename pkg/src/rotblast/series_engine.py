"""
Energy integrals and the expansion of the shock deceleration parameter.

``lambda = r_s (dy/dr_s) / y`` is expanded as ``2 (1 + lambda_1 y + ...)``.
``lambda_1`` can be computed two ways: from the split first-order integrals
``I1``, ``I2`` (:func:`lambda1`), or from the first-order energy correction
``theta_1`` of the assembled profiles (:func:`lambda1_from_theta1`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import BreakdownError, DomainError, SingularityError
from .gas_model import GasParams, RotationParams
from .quadrature import integrate_01, power_tail
from .zeroth_order import ZerothSolution

__all__ = [
    "SeriesCoefficients",
    "integrate_01",
    "integral_j0",
    "effective_energy_factor",
    "integral_theta1",
    "integral_i1",
    "integral_i2",
    "lambda1",
    "lambda1_from_theta1",
    "lambda_of_y",
    "lambda_from_energy",
    "energy_integral",
]

Theta1Reading = Literal["pi1", "pi0"]


@dataclass(frozen=True)
class SeriesCoefficients:
    """Series coefficients for one parameter set.

    ``theta1``, ``i1``, ``i2`` and ``lambda1`` are ``None`` when only the
    zeroth order was computed.
    """

    j0: float
    j0_eff: float
    theta1: Optional[float] = None
    i1: Optional[float] = None
    i2: Optional[float] = None
    lambda1: Optional[float] = None


def _rotation_term(gas, rot):
    # gamma (v*/A*)^2 / (4 (1 - b rho0))
    return gas.gamma * rot.velocity_ratio**2 / (4.0 * (1.0 - gas.beta))


def integral_j0(sol: ZerothSolution, gas: GasParams = None, rot: RotationParams = None, tol: float = 1e-10) -> float:
    """Leading-order energy integral of the closed-form profiles."""
    gas = gas or sol.gas
    gam, beta = gas.gamma, gas.beta

    def integrand(x):
        f, pi, g, phi = sol(x)
        kinetic = gam * pi * (f * f + phi * phi) / (2.0 * (1.0 - beta))
        thermal = (1.0 - beta * pi) * g / (gam - 1.0)
        return float((kinetic + thermal) * x)

    return integrate_01(integrand, tol=tol)


def energy_integral(profiles, gas: GasParams, tol: float = 1e-10, x_floor: float = 0.0) -> float:
    """Energy integral ``J`` of arbitrary reduced profiles ``x -> (f, pi, g, phi)``."""
    gam, beta = gas.gamma, gas.beta

    def integrand(x):
        f, pi, g, phi = profiles(x)
        return float((gam * pi * (f * f + phi * phi) / (2.0 * (1.0 - beta)) + (1.0 - beta * pi) * g / (gam - 1.0)) * x)

    return integrate_01(integrand, tol=tol, x_floor=x_floor)


def effective_energy_factor(j0: float, gas: GasParams, rot: RotationParams) -> float:
    """``j0 [1 - gamma (v*/A*)^2 / (4 j0 (1 - b rho0))]``; must stay positive."""
    if not j0 > 0.0:
        raise DomainError(f"J0 must be positive, got {j0}")
    eff = j0 - _rotation_term(gas, rot)
    if eff <= 0.0:
        raise BreakdownError(
            f"effective energy factor {eff:.6g} <= 0: rotation energy exceeds the blast energy integral"
        )
    return eff


def _first_order_integral(zeroth, profiles, gas, tol, x_floor):
    gam, beta = gas.gamma, gas.beta

    def integrand(x):
        f0, pi0, g0, phi0 = zeroth(x)
        f1, pi1, g1, phi1 = profiles(x)
        val = (
            gam / (1.0 - beta) * (f0 * pi0 * f1 + phi0 * pi0 * phi1)
            + gam * pi1 / (2.0 * (1.0 - beta)) * (f0 * f0 + phi0 * phi0)
            + ((1.0 - beta * pi0) * g1 - beta * pi1 * g0) / (gam - 1.0)
        )
        return float(val * x)

    return integrate_01(integrand, tol=tol, x_floor=x_floor) + power_tail(integrand, x_floor)


def integral_i1(zeroth: ZerothSolution, split1, gas: GasParams = None, tol: float = 1e-10, x_floor: float = 0.0) -> float:
    """First-order energy integral of the lambda-independent split family.

    ``split1`` maps ``x`` to ``(f, pi, g, phi)`` of that family.  Below
    ``x_floor`` the integrand is extended as a power law.
    """
    return _first_order_integral(zeroth, split1, gas or zeroth.gas, tol, x_floor)


def integral_i2(zeroth: ZerothSolution, split2, gas: GasParams = None, tol: float = 1e-10, x_floor: float = 0.0) -> float:
    """Same integral for the family multiplied by ``lambda_1``."""
    return _first_order_integral(zeroth, split2, gas or zeroth.gas, tol, x_floor)


def integral_theta1(
    zeroth: ZerothSolution,
    first,
    gas: GasParams = None,
    j0: float = None,
    reading: Theta1Reading = "pi1",
    tol: float = 1e-10,
) -> float:
    """First-order relative energy correction ``theta_1`` from assembled profiles.

    ``first`` is a :class:`~rotblast.first_order.FirstOrderSolution`.  With
    ``reading="pi1"`` the density correction multiplies the zeroth-order
    kinetic factor ``f0^2 + phi0^2``; ``reading="pi0"`` uses the leading
    density there instead, which duplicates part of ``J0``.
    """
    gas = gas or zeroth.gas
    if reading not in ("pi1", "pi0"):
        raise DomainError(f"unknown theta1 reading {reading!r}")
    gam, beta = gas.gamma, gas.beta
    if j0 is None:
        j0 = integral_j0(zeroth, gas, tol=tol)

    def integrand(x):
        f0, pi0, g0, phi0 = zeroth(x)
        f1, pi1, g1, phi1 = first.assembled_at(x)
        dens = pi1 if reading == "pi1" else pi0
        val = gam / (2.0 * (1.0 - beta)) * (
            2.0 * pi0 * (f0 * f1 + phi0 * phi1) + dens * (f0 * f0 + phi0 * phi0)
        ) + ((1.0 - beta * pi0) * g1 - beta * g0 * pi1) / (gam - 1.0)
        return float(val * x)

    total = integrate_01(integrand, tol=tol, x_floor=first.x_floor) + power_tail(integrand, first.x_floor)
    return total / j0


def lambda1(i1: float, i2: float, j0: float, gas: GasParams, rot: RotationParams, floor: float = 1e-10) -> float:
    """``lambda_1`` from the split integrals.

    ``(I1 - (1-b rho0)/(2(gamma-1))) / (J0/2 - gamma (v*/A*)^2/(8(1-b rho0)) - I2)``
    """
    gam, beta = gas.gamma, gas.beta
    num = i1 - (1.0 - beta) / (2.0 * (gam - 1.0))
    den = 0.5 * j0 - 0.5 * _rotation_term(gas, rot) - i2
    if abs(den) < floor:
        raise SingularityError(f"lambda_1 denominator {den:.3e} is near zero")
    return num / den


def lambda1_from_theta1(theta1: float, j0: float, gas: GasParams, rot: RotationParams) -> float:
    """``lambda_1`` from the energy correction ``theta_1`` via the expansion of ``lambda``."""
    gam, beta = gas.gamma, gas.beta
    den = 1.0 - _rotation_term(gas, rot) / j0
    if den == 0.0:
        raise SingularityError("lambda_1 denominator vanishes")
    return (theta1 - (1.0 - beta) / (2.0 * j0 * (gam - 1.0))) / den


def lambda_of_y(lambda1_value: float, y):
    """First-order truncation ``2 (1 + lambda_1 y)``.

    Negative ``y`` is evaluated as a formal series.
    """
    return 2.0 * (1.0 + lambda1_value * np.asarray(y, dtype=float))


def lambda_from_energy(j: float, dj_dy: float, y: float, gas: GasParams, rot: RotationParams) -> float:
    """Exact ``lambda(y)`` from the energy balance given ``J(y)`` and ``dJ/dy``."""
    gam, beta = gas.gamma, gas.beta
    rot_term = _rotation_term(gas, rot)
    num = 2.0 * j - y * (1.0 - beta) / (gam - 1.0) - 2.0 * rot_term
    den = j - y * dj_dy - rot_term
    if den == 0.0:
        raise SingularityError("energy-balance denominator vanishes")
    return num / den
