"""
First-order corrections ``f1, pi1, g1, phi1`` to the similarity profiles.

The first-order equations depend linearly on the unknown ``lambda_1``, so
each correction is split as ``q1 = q1_split1 + lambda_1 * q1_split2``.  The
two families obey lambda-free linear systems that are integrated inward
from the front; ``lambda_1`` then follows from the energy integrals and the
pieces are assembled.

The equations are implicit in the derivatives (the momentum and energy
rows couple ``f'`` and ``g'``), so at each point they are written as
``A(x) q' = r(x, q)`` and solved by elimination.

``system="printed"`` uses the published split equations.  ``"linearized"``
uses the first-order expansion of the reduced equations; it differs in the
energy row, which gains the convective term ``f1 * g0'`` and carries the
``-2 lambda_1 g0`` forcing without the ``gamma/(1 - b rho0 pi0)^2`` factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, DomainError, SingularityError
from .gas_model import AmbientState, GasParams, RotationParams
from .series_engine import (
    SeriesCoefficients,
    effective_energy_factor,
    integral_i1,
    integral_i2,
    integral_j0,
    integral_theta1,
    lambda1 as lambda1_eq,
)
from .shock_jump import series_bc
from .zeroth_order import ZerothForm, ZerothSolution, zeroth_solution

__all__ = [
    "FirstOrderSolution",
    "split1_rhs",
    "split2_rhs",
    "split_residual",
    "solve_first_order",
    "reconstruct_physical",
    "default_grid",
    "series_coefficients",
]

FirstOrderSystem = Literal["printed", "linearized"]
_SYSTEMS = ("printed", "linearized")


def default_grid(x_min: float = 1e-3, n_points: int = 200) -> np.ndarray:
    """Uniform decreasing grid from 1 to ``x_min``."""
    if not (0.0 < x_min < 1.0):
        raise DomainError(f"x_min must lie in (0, 1), got {x_min}")
    if n_points < 2:
        raise DomainError("need at least two grid points")
    return np.linspace(1.0, x_min, n_points)


def _zeroth_terms(x, zeroth):
    if np.ndim(x) == 0:
        return zeroth.terms(float(x))
    return (
        zeroth.f(x), zeroth.fx(x), zeroth.pi(x), zeroth.pix(x),
        zeroth.g(x), zeroth.gx(x), zeroth.phi(x), zeroth.phix(x),
    )


def _assemble(x, state, zeroth, gas, family, system):
    """Matrix rows and right-hand side of ``A q' = r`` at one point."""
    if system not in _SYSTEMS:
        raise DomainError(f"unknown first-order system {system!r}")
    F, P, G, H = state
    f0, f0x, pi0, pi0x, g0, g0x, phi0, phi0x = _zeroth_terms(x, zeroth)
    gam, beta = gas.gamma, gas.beta
    d = f0 - x
    h0 = f0x + f0 / x
    s = 1.0 - beta * pi0
    forced = family == 2

    r1 = -((pi0x + pi0 / x) * F + (2.0 + h0) * P)
    r2 = -((f0x + 1.0) * pi0 * F - ((x - f0) * f0x + f0) * P - (2.0 * pi0 * phi0 * H + phi0**2 * P) / x)
    r3 = -gam / s**2 * (beta * P * g0 * h0 + s * (g0 * F / x + G * h0))
    # x * phi0 is constant, so the F (phi0' + phi0/x) forcing vanishes
    # identically; evaluating it only injects rounding noise into phi1
    r4 = -(1.0 + f0 / x) * H
    if system == "linearized":
        r3 -= F * g0x
    if forced:
        r2 += f0 * pi0
        r3 += 2.0 * g0 * (gam / s**2 if system == "printed" else 1.0)
        r4 += phi0
    return d, pi0, g0, s, (r1, r2, r3, r4)


def _solve_rows(x, state, zeroth, gas, family, system, floor):
    d, pi0, g0, s, (r1, r2, r3, r4) = _assemble(x, state, zeroth, gas, family, system)
    gam, beta = gas.gamma, gas.beta
    a22 = (1.0 - beta) / gam
    a31 = gam * g0 / s
    det = d * d * pi0 - a22 * a31
    scale = d * d * pi0 + a22 * a31
    if abs(d) < floor or abs(det) < floor * scale:
        raise SingularityError(f"singular first-order system at x = {x} (det = {det:.3e})", x=x)
    fp = (r2 * d - a22 * r3) / det
    gp = (d * pi0 * r3 - a31 * r2) / det
    pp = (r1 - pi0 * fp) / d
    hp = r4 / d
    return np.array([fp, pp, gp, hp])


def split1_rhs(x, state, zeroth: ZerothSolution, gas: GasParams = None, system: FirstOrderSystem = "printed", floor: float = 1e-12):
    """Derivatives ``(f', pi', g', phi')`` of the lambda-independent family."""
    return _solve_rows(x, state, zeroth, gas or zeroth.gas, 1, system, floor)


def split2_rhs(x, state, zeroth: ZerothSolution, gas: GasParams = None, system: FirstOrderSystem = "printed", floor: float = 1e-12):
    """Derivatives of the family multiplying ``lambda_1`` (carries the forcing terms)."""
    return _solve_rows(x, state, zeroth, gas or zeroth.gas, 2, system, floor)


def split_residual(x, state, deriv, zeroth: ZerothSolution, family: int, gas: GasParams = None, system: FirstOrderSystem = "printed"):
    """Residuals of the four split equations written in their implicit form.

    Deliberately independent of the elimination used by the right-hand side
    functions, so back-substituting a solved trajectory checks both.
    """
    gas = gas or zeroth.gas
    gam, beta = gas.gamma, gas.beta
    F, P, G, H = state
    Fx, Px, Gx, Hx = deriv
    f0, f0x, pi0, pi0x, g0, g0x, phi0, phi0x = _zeroth_terms(x, zeroth)
    lam = 1.0 if family == 2 else 0.0
    e1 = pi0 * Fx + (f0 - x) * Px + (pi0x + pi0 / x) * F + (2.0 + f0x + f0 / x) * P
    e2 = (
        (f0 - x) * Fx * pi0 + (1.0 - beta) / gam * Gx + (f0x + 1.0) * F * pi0 - lam * f0 * pi0
        - ((x - f0) * f0x + f0) * P - (2.0 * pi0 * phi0 * H + phi0**2 * P) / x
    )
    s = 1.0 - beta * pi0
    if system == "printed":
        e3 = (f0 - x) * Gx + gam / s**2 * (
            beta * P * g0 * (f0x + f0 / x) - lam * 2.0 * g0
            + s * (g0 * (Fx + F / x) + G * (f0x + f0 / x))
        )
    else:
        e3 = (
            (f0 - x) * Gx + F * g0x + gam * G * (f0x + f0 / x) / s
            + gam * g0 * beta * P * (f0x + f0 / x) / s**2 + gam * g0 * (Fx + F / x) / s
            - lam * 2.0 * g0
        )
    e4 = F * phi0x + (f0 - x) * Hx + (1.0 + f0 / x) * H + F * phi0 / x - lam * phi0
    return np.array([e1, e2, e3, e4])


@dataclass(frozen=True)
class FirstOrderSolution:
    """Gridded split and assembled first-order profiles.

    Arrays have shape ``(4, len(grid))`` with rows ``(f, pi, g, phi)``.
    Continuous evaluation is available through :meth:`split1_at`,
    :meth:`split2_at` and :meth:`assembled_at`, which use the integrator's
    dense output and are valid on ``[x_floor, 1]``.
    """

    grid: np.ndarray
    split1: np.ndarray
    split2: np.ndarray
    lambda1: float
    assembled: np.ndarray
    i1: float
    i2: float
    j0: float
    x_floor: float
    system: str
    zeroth: ZerothSolution = field(repr=False)
    _dense1: object = field(repr=False, compare=False, default=None)
    _dense2: object = field(repr=False, compare=False, default=None)

    def _check(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < self.x_floor * (1.0 - 1e-12)) or np.any(x > 1.0 + 1e-12):
            raise DomainError(f"x outside the integrated range [{self.x_floor}, 1]")
        return x

    def split1_at(self, x):
        return self._dense1(self._check(x))

    def split2_at(self, x):
        return self._dense2(self._check(x))

    def assembled_at(self, x, lambda1=None):
        lam = self.lambda1 if lambda1 is None else lambda1
        x = self._check(x)
        return self._dense1(x) + lam * self._dense2(x)

    def reassemble(self, mu: float) -> np.ndarray:
        """Gridded ``split1 + mu * split2`` for an arbitrary multiplier."""
        return self.split1 + mu * self.split2


def _integrate_family(rhs, y0, x_end, rtol, atol):
    res = solve_ivp(rhs, (1.0, x_end), y0, method="DOP853", rtol=rtol, atol=atol, dense_output=True)
    if not res.success:
        x_fail = float(res.t[-1]) if res.t.size else 1.0
        raise ConvergenceError(f"first-order integration failed at x = {x_fail}: {res.message}", x=x_fail)
    return res.sol


def solve_first_order(
    gas: GasParams,
    rot: RotationParams,
    grid=None,
    zeroth: ZerothSolution = None,
    form: ZerothForm = "published",
    system: FirstOrderSystem = "printed",
    rtol: float = 1e-10,
    atol: float = 1e-12,
    quad_tol: float = 1e-10,
    x_floor: float = 1e-6,
) -> FirstOrderSolution:
    """Integrate both split families, compute ``lambda_1`` and assemble.

    The integration runs from the front down to ``min(grid[-1], x_floor)``;
    the energy integrals use the dense output on that range plus a power-law
    tail below it.  Near the axis the integrands behave like ``x^p`` with
    ``p > -1``; in strongly rotating cases ``g1`` grows like ``1/x`` and
    ``p`` is close to zero, so the tail is not negligible.
    """
    if zeroth is None:
        zeroth = zeroth_solution(gas, rot, form)
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or grid[0] != 1.0 or np.any(np.diff(grid) >= 0.0) or grid[-1] <= 0.0:
        raise DomainError("grid must be strictly decreasing from 1 and stay above 0")
    x_end = min(float(grid[-1]), x_floor)
    bc1, bc2 = series_bc(1, gas, rot)
    dense1 = _integrate_family(lambda x, s: split1_rhs(x, s, zeroth, gas, system), bc1, x_end, rtol, atol)
    dense2 = _integrate_family(lambda x, s: split2_rhs(x, s, zeroth, gas, system), bc2, x_end, rtol, atol)
    j0 = integral_j0(zeroth, gas, tol=quad_tol)
    i1 = integral_i1(zeroth, dense1, gas, tol=quad_tol, x_floor=x_end)
    i2 = integral_i2(zeroth, dense2, gas, tol=quad_tol, x_floor=x_end)
    lam1 = lambda1_eq(i1, i2, j0, gas, rot)
    s1 = dense1(grid)
    s2 = dense2(grid)
    # exact front values; dense output reproduces them only to rounding
    s1[:, 0] = bc1
    s2[:, 0] = bc2
    return FirstOrderSolution(
        grid=grid, split1=s1, split2=s2, lambda1=lam1, assembled=s1 + lam1 * s2,
        i1=i1, i2=i2, j0=j0, x_floor=x_end, system=system, zeroth=zeroth,
        _dense1=dense1, _dense2=dense2,
    )


def series_coefficients(
    gas: GasParams, rot: RotationParams, order: int = 0, form: ZerothForm = "published",
    system: FirstOrderSystem = "printed", quad_tol: float = 1e-10, ode_tol: float = 1e-10,
    grid=None,
):
    """Series coefficients for one parameter set.

    Returns ``(coeffs, first)`` where ``first`` is the
    :class:`FirstOrderSolution` at order one and ``None`` at order zero.
    ``theta1`` uses the assembled profiles with the printed ``lambda_1``.
    """
    if order not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {order}")
    zeroth = zeroth_solution(gas, rot, form)
    j0 = integral_j0(zeroth, gas, tol=quad_tol)
    j0_eff = effective_energy_factor(j0, gas, rot)
    if order == 0:
        return SeriesCoefficients(j0, j0_eff), None
    first = solve_first_order(
        gas, rot, grid=grid, zeroth=zeroth, system=system, rtol=ode_tol, quad_tol=quad_tol,
    )
    theta1 = integral_theta1(zeroth, first, gas, j0, tol=quad_tol)
    coeffs = SeriesCoefficients(j0, j0_eff, theta1=theta1, i1=first.i1, i2=first.i2, lambda1=first.lambda1)
    return coeffs, first


def reconstruct_physical(
    x, y: float, U: float, ambient: AmbientState, zeroth: ZerothSolution,
    first: FirstOrderSolution = None, pressure: str = "dynamic",
):
    """Physical ``(rho, u, p, v)`` behind the front from the reduced profiles.

    ``pressure="dynamic"`` writes the pressure as
    ``rho0 U^2 (1 - b rho0) g / gamma``, which stays finite as ``y -> 0``;
    ``"ambient"`` uses ``p0 g / y`` and therefore needs ``y > 0``.
    """
    if y < 0.0:
        raise DomainError(f"y must be >= 0, got {y}")
    gas = zeroth.gas
    f, pi, g, phi = (np.asarray(q, dtype=float) for q in zeroth(x))
    if first is not None:
        f1, pi1, g1, phi1 = first.assembled_at(x)
        f, pi, g, phi = f + y * f1, pi + y * pi1, g + y * g1, phi + y * phi1
    rho = ambient.rho0 * pi
    u = U * f
    v = U * phi
    if pressure == "dynamic":
        p = ambient.rho0 * U**2 * (1.0 - gas.b * ambient.rho0) * g / gas.gamma
    elif pressure == "ambient":
        if y == 0.0:
            raise DomainError("p = p0 g / y is undefined at y = 0; use pressure='dynamic'")
        p = ambient.p0 * g / y
    else:
        raise DomainError(f"unknown pressure scaling {pressure!r}")
    return rho, u, p, v
