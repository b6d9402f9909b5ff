"""
Strong-shock jump conditions and shock-front boundary data.

The post-shock relations are the first-order (in ``b rho0`` and in
``y = (a0/U)^2``) truncations used by the power-series method, not the
exact van der Waals Hugoniot.  :func:`rh_residual` measures how far a pair
of states is from satisfying the conservation laws exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RotBlastError
from .gas_model import AmbientState, GasParams, RotationParams

__all__ = [
    "ShockFrontState",
    "ConservedVectors",
    "SimilarityBoundary",
    "strong_shock_state",
    "conservative_eval",
    "rh_residual",
    "similarity_bc",
    "series_bc",
]


@dataclass(frozen=True)
class ShockFrontState:
    rho1: float
    u1: float
    p1: float
    v1: float
    psi: float
    shock_speed: float
    y: float

    @property
    def primitive(self):
        """``(rho, u, p, v)`` just behind the front."""
        return (self.rho1, self.u1, self.p1, self.v1)


@dataclass(frozen=True)
class ConservedVectors:
    """Conserved densities ``g_vec``, fluxes ``h_vec`` and sources ``i_vec``."""

    g_vec: np.ndarray
    h_vec: np.ndarray
    i_vec: np.ndarray


@dataclass(frozen=True)
class SimilarityBoundary:
    """Reduced variables ``(f, pi, g, phi)`` at the front ``x = 1``."""

    f1: float
    pi1: float
    g1: float
    phi1: float
    y: float

    def as_tuple(self):
        return (self.f1, self.pi1, self.g1, self.phi1)


def strong_shock_state(U: float, y: float, ambient: AmbientState, gas: GasParams) -> ShockFrontState:
    """Post-shock state for shock speed ``U`` and strength parameter ``y``."""
    if not U > 0.0:
        raise DomainError(f"shock speed must be positive, got {U}")
    if not (0.0 <= y < 1.0):
        raise DomainError(f"y must lie in [0, 1), got {y}")
    gam = gas.gamma
    rho0 = ambient.rho0
    beta = gas.b * rho0
    rho1 = rho0 * (gam + 1.0) / (gam - 1.0) * (
        1.0 - 2.0 * beta / (gam - 1.0) - 2.0 * (1.0 - beta) / (gam - 1.0) * y
    )
    u1 = 2.0 * U / (gam + 1.0) * (1.0 - beta - (1.0 - beta) * y)
    p1 = 2.0 * rho0 * U**2 / (gam + 1.0) * (
        1.0 - beta - (1.0 - beta) * (gam - 1.0) / (2.0 * gam) * y
    )
    psi = (gam - 1.0) / (gam + 1.0) + 2.0 * beta / (gam + 1.0) + 2.0 * (1.0 - beta) / (gam + 1.0) * y
    if rho1 <= 0.0:
        raise RotBlastError(f"non-positive post-shock density {rho1}")
    return ShockFrontState(rho1, u1, p1, ambient.v0, psi, U, y)


def conservative_eval(rho, u, p, v, r, gas: GasParams) -> ConservedVectors:
    """Conservative-form vectors of the rotating axisymmetric Euler system.

    The primitive ordering is ``(rho, u, p, v)``.  The energy flux is the
    total enthalpy flux ``(E + p) u`` with ``E = rho u^2/2 + p (1 - b rho)/(gamma - 1)``.
    """
    if rho <= 0.0 or (gas.b > 0.0 and gas.b * rho >= 1.0):
        raise DomainError(f"density {rho} outside (0, 1/b)")
    if not r > 0.0:
        raise DomainError(f"radius must be positive, got {r}")
    gam, b = gas.gamma, gas.b
    energy = 0.5 * rho * u**2 + p * (1.0 - b * rho) / (gam - 1.0)
    g_vec = np.array([rho, rho * u, energy, rho * v])
    h_vec = np.array([rho * u, rho * u**2 + p, (energy + p) * u, rho * v * u])
    i_vec = np.array(
        [
            -rho * u / r,
            rho * v**2 / r - rho * u**2 / r,
            rho * u * v**2 / r - rho * u**3 / (2.0 * r) - p * (gam - b * rho) * u / ((gam - 1.0) * r),
            -2.0 * rho * u * v / r,
        ]
    )
    return ConservedVectors(g_vec, h_vec, i_vec)


def rh_residual(U, pre_state, post_state, gas: GasParams, r: float = 1.0) -> np.ndarray:
    """Jump residual ``U [G] - [H]`` for primitive 4-tuples on either side."""
    pre = conservative_eval(*pre_state, r, gas)
    post = conservative_eval(*post_state, r, gas)
    return U * (post.g_vec - pre.g_vec) - (post.h_vec - pre.h_vec)


def similarity_bc(y: float, gas: GasParams, rot: RotationParams) -> SimilarityBoundary:
    """Reduced variables at the shock front as affine functions of ``y``."""
    gam, beta = gas.gamma, gas.beta
    f1 = 2.0 * (1.0 - beta) / (gam + 1.0) * (1.0 - y)
    pi1 = (gam + 1.0) / (gam - 1.0) * (1.0 - 2.0 * beta / (gam - 1.0) - 2.0 * (1.0 - beta) / (gam - 1.0) * y)
    g1 = 2.0 * gam / (gam + 1.0) * (1.0 - (gam - 1.0) / (2.0 * gam) * y)
    return SimilarityBoundary(f1, pi1, g1, rot.velocity_ratio, y)


def series_bc(order: int, gas: GasParams, rot: RotationParams):
    """Front values of the series coefficients.

    Order 0 returns the tuple ``(f, pi, g, phi)`` of the leading term.
    Order 1 returns ``(split1, split2)``: the first-order values carried by
    the lambda-independent family, and the all-zero values of the family
    multiplied by lambda_1.
    """
    gam, beta = gas.gamma, gas.beta
    if order == 0:
        return (
            2.0 * (1.0 - beta) / (gam + 1.0),
            (gam + 1.0) / (gam - 1.0) * (1.0 - 2.0 * beta / (gam - 1.0)),
            2.0 * gam / (gam + 1.0),
            rot.velocity_ratio,
        )
    if order == 1:
        split1 = (
            -2.0 * (1.0 - beta) / (gam + 1.0),
            -2.0 * (gam + 1.0) * (1.0 - beta) / (gam - 1.0) ** 2,
            -(gam - 1.0) / (gam + 1.0),
            0.0,
        )
        return split1, (0.0, 0.0, 0.0, 0.0)
    raise DomainError(f"unsupported series order {order}; only 0 and 1 are implemented")
