"""
Van der Waals gas thermodynamics and the rotating ambient state.

The gas obeys the simplified van der Waals law ``p (1 - b rho) = R rho T``
with constant ratio of specific heats.  The undisturbed medium ahead of the
blast has constant density, no radial motion and azimuthal velocity
``v0 = v* r^alpha``; its pressure follows from radial equilibrium.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError

__all__ = [
    "GasParams",
    "RotationParams",
    "AmbientState",
    "sound_speed",
    "internal_energy",
    "temperature",
    "ambient_state",
]


@dataclass(frozen=True)
class GasParams:
    """Parameters of the van der Waals medium.

    Parameters
    ----------
    gamma : float
        Ratio of specific heats, ``1 < gamma <= 2``.
    b : float
        Excluded volume per unit mass.  ``b = 0`` is the ideal gas.
    rho0 : float
        Ambient density.
    gas_constant : float
        Specific gas constant; only used by :func:`temperature`.
    """

    gamma: float = 1.4
    b: float = 0.0
    rho0: float = 1.0
    gas_constant: float = 1.0

    def __post_init__(self):
        if not (1.0 < self.gamma <= 2.0):
            raise DomainError(f"gamma must lie in (1, 2], got {self.gamma}")
        if not self.rho0 > 0.0:
            raise DomainError(f"rho0 must be positive, got {self.rho0}")
        if self.b < 0.0:
            raise DomainError(f"b must be non-negative, got {self.b}")
        limit = (self.gamma - 1.0) / (2.0 * self.gamma)
        if not self.b * self.rho0 < limit:
            raise DomainError(
                f"b*rho0 = {self.b * self.rho0} must be below (gamma-1)/(2 gamma) = {limit}"
            )
        if not self.gas_constant > 0.0:
            raise DomainError(f"gas_constant must be positive, got {self.gas_constant}")

    @property
    def beta(self) -> float:
        """Dimensionless excluded-volume fraction ``b * rho0``."""
        return self.b * self.rho0


@dataclass(frozen=True)
class RotationParams:
    """Rotation of the ambient medium.

    ``velocity_ratio`` is ``v*/A*``.  When the absolute scales are not given,
    ``A*`` is taken as one working unit so that ``v* = velocity_ratio``.
    The shock-speed exponent ``delta`` always equals ``alpha``.
    """

    velocity_ratio: float = 0.0
    alpha: float = 1.0
    v_star: Optional[float] = None
    a_star: Optional[float] = None

    def __post_init__(self):
        if self.velocity_ratio < 0.0:
            raise DomainError(f"velocity_ratio must be >= 0, got {self.velocity_ratio}")
        if not (0.0 < self.alpha <= 1.0):
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.a_star is not None and not self.a_star > 0.0:
            raise DomainError(f"a_star must be positive, got {self.a_star}")
        if self.v_star is not None and self.v_star < 0.0:
            raise DomainError(f"v_star must be >= 0, got {self.v_star}")
        if self.v_star is not None and self.a_star is not None:
            ratio = self.v_star / self.a_star
            if not math.isclose(ratio, self.velocity_ratio, rel_tol=1e-12, abs_tol=1e-15):
                raise DomainError(
                    f"velocity_ratio {self.velocity_ratio} inconsistent with v*/A* = {ratio}"
                )

    @classmethod
    def from_scales(cls, v_star: float, a_star: float, alpha: float = 1.0) -> "RotationParams":
        return cls(velocity_ratio=v_star / a_star, alpha=alpha, v_star=v_star, a_star=a_star)

    @property
    def delta(self) -> float:
        return self.alpha

    @property
    def resolved_v_star(self) -> float:
        """Absolute ``v*``, falling back to ``velocity_ratio * A*`` (``A*`` = 1 if unset)."""
        if self.v_star is not None:
            return self.v_star
        return self.velocity_ratio * (self.a_star if self.a_star is not None else 1.0)


@dataclass(frozen=True)
class AmbientState:
    """Undisturbed state just ahead of a shock at radius ``shock_radius``.

    ``degenerate`` is set for the non-rotating medium, where the equilibrium
    pressure (and hence the sound speed) vanishes.
    """

    rho0: float
    p0: float
    v0: float
    a0: float
    angular_velocity0: float
    shock_radius: float
    degenerate: bool = False


def _check_state(p, rho, gas, allow_zero_pressure):
    if rho <= 0.0:
        raise DomainError(f"density must be positive, got {rho}")
    if gas.b > 0.0 and rho * gas.b >= 1.0:
        raise DomainError(f"density {rho} reaches the van der Waals limit 1/b = {1.0 / gas.b}")
    if p < 0.0 or (p == 0.0 and not allow_zero_pressure):
        raise DomainError(f"pressure must be positive, got {p}")


def sound_speed(p: float, rho: float, gas: GasParams) -> float:
    """Frozen sound speed ``sqrt(gamma p / (rho (1 - b rho)))``."""
    _check_state(p, rho, gas, allow_zero_pressure=False)
    return math.sqrt(gas.gamma * p / (rho * (1.0 - gas.b * rho)))


def internal_energy(p: float, rho: float, gas: GasParams) -> float:
    """Specific internal energy ``p (1 - b rho) / (rho (gamma - 1))``."""
    _check_state(p, rho, gas, allow_zero_pressure=True)
    return p * (1.0 - gas.b * rho) / (rho * (gas.gamma - 1.0))


def temperature(p: float, rho: float, gas: GasParams) -> float:
    """Temperature from the equation of state, ``p (1 - b rho) / (R rho)``."""
    _check_state(p, rho, gas, allow_zero_pressure=True)
    return p * (1.0 - gas.b * rho) / (gas.gas_constant * rho)


def ambient_state(gas: GasParams, rot: RotationParams, r_s: float) -> AmbientState:
    """Rotating equilibrium ahead of the shock at radius ``r_s``.

    The pressure ``p0 = v*^2 r_s^(2 alpha) rho0 / (2 alpha)`` balances the
    centrifugal term.  For ``v* = 0`` it vanishes and the state is flagged
    degenerate with ``a0 = 0``.
    """
    if not r_s > 0.0:
        raise DomainError(f"shock radius must be positive, got {r_s}")
    alpha = rot.alpha
    if alpha == 0.0:
        raise DomainError("alpha = 0 makes the ambient pressure singular")
    v_star = rot.resolved_v_star
    v0 = v_star * r_s**alpha
    omega0 = v_star * r_s ** (alpha - 1.0)
    p0 = v_star**2 * r_s ** (2.0 * alpha) * gas.rho0 / (2.0 * alpha)
    if p0 == 0.0:
        return AmbientState(gas.rho0, 0.0, v0, 0.0, omega0, r_s, degenerate=True)
    a0 = sound_speed(p0, gas.rho0, gas)
    return AmbientState(gas.rho0, p0, v0, a0, omega0, r_s)
