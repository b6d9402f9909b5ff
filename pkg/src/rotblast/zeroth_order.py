r"""
Zeroth-order similarity profiles behind the blast front.

The radial velocity is approximated by the Taylor ansatz
:math:`f^{(0)} = x/\gamma + B x^n`, whose two constants match the front value
and front slope.  With ``f`` fixed, the density, pressure and azimuthal
equations integrate in closed form.

Two closed forms of the density and pressure are provided:

``"published"``
    The published formulas (with the ``(gamma-1)(gamma+1)`` reading of the
    bracket constant).  These generate the tabulated reference values but
    do not satisfy the pressure equation exactly when ``b != 0`` and carry a
    first-order-in-``b`` density prefactor.
``"integrated"``
    The exact integrals of the density/pressure/azimuthal equations for the
    ansatz velocity, anchored at the front values.  This is what
    :func:`solve_zeroth_by_ode` reproduces for any ``b``.

For ``b = 0`` the two coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, DomainError, SingularityError
from .gas_model import GasParams, RotationParams
from .quadrature import integrate_01
from .shock_jump import series_bc

__all__ = [
    "ZerothAnsatz",
    "ZerothSolution",
    "ZerothODEProfiles",
    "front_slope",
    "ansatz_coefficients",
    "zeroth_solution",
    "eval_zeroth",
    "zeroth_ode_rhs",
    "solve_zeroth_by_ode",
    "mass_integral",
    "velocity_residual",
]

ZerothForm = Literal["published", "integrated"]
_FORMS = ("published", "integrated")


@dataclass(frozen=True)
class ZerothAnsatz:
    """Constants of ``f0(x) = x/gamma + big_b * x**n_exp``."""

    big_b: float
    n_exp: float
    fx0_front: float


def front_slope(gas: GasParams, rot: RotationParams) -> float:
    """Slope ``df0/dx`` at the front implied by the momentum balance there."""
    gam, beta = gas.gamma, gas.beta
    w2 = rot.velocity_ratio**2
    p = 1.0 - 2.0 * beta / (gam - 1.0)
    q = gam - 1.0 - beta * (gam + 1.0) * p
    if q == 0.0:
        raise SingularityError("degenerate parameters: vanishing compression factor", x=1.0)
    a = (1.0 - gam - 2.0 * beta) / (2.0 * gam * (gam - 1.0)) * p
    num = a * (2.0 * (1.0 - beta) + w2 * (gam + 1.0)) + (1.0 - beta) / gam * (
        2.0 * gam * (gam - 1.0) * (1.0 - beta) / ((gam + 1.0) * q) - 2.0
    )
    den = (1.0 - gam - 2.0 * beta) * a - (gam - 1.0) * (1.0 - beta) / q
    if abs(den) < 1e-14:
        raise SingularityError("degenerate parameters: front slope denominator vanishes", x=1.0)
    return num / den


def ansatz_coefficients(gas: GasParams, rot: RotationParams) -> ZerothAnsatz:
    gam, beta = gas.gamma, gas.beta
    big_b = (gam - 1.0 - 2.0 * beta * gam) / (gam * (gam + 1.0))
    slope = front_slope(gas, rot)
    n_exp = (slope - 1.0 / gam) / big_b
    if not n_exp > 1.0:
        raise DomainError(f"ansatz exponent n = {n_exp} must exceed 1")
    return ZerothAnsatz(big_b, n_exp, slope)


def _exponents(gamma, n):
    """Density bracket exponent and pressure bracket exponent (both positive)."""
    e_rho = (2.0 - (n + 1.0) * (1.0 - gamma)) / ((1.0 - gamma) * (1.0 - n))
    e_p = gamma * (n + 1.0) / (n - 1.0)
    return e_rho, e_p


@dataclass(frozen=True)
class ZerothSolution:
    """Closed-form zeroth-order profiles for one parameter set.

    Evaluators accept scalars or arrays of ``x`` in ``(0, 1]``.
    """

    gas: GasParams
    rot: RotationParams
    ansatz: ZerothAnsatz
    form: ZerothForm = "published"
    _c: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.form not in _FORMS:
            raise DomainError(f"unknown zeroth-order form {self.form!r}")
        gam, beta = self.gas.gamma, self.gas.beta
        n = self.ansatz.n_exp
        # c/B = (gamma-1)(gamma+1)/(gamma-1-2 gamma b rho0)
        k = (gam - 1.0) * (gam + 1.0) / (gam - 1.0 - 2.0 * gam * beta)
        e_rho, e_p = _exponents(gam, n)
        if self.form == "published":
            pi_front = (gam + 1.0) / (gam - 1.0 + 2.0 * beta)
        else:
            pi_front = series_bc(0, self.gas, self.rot)[1]
        self._c.update(k=k, e_rho=e_rho, e_p=e_p, pi_front=pi_front, log_k1=math.log(k - 1.0))

    @staticmethod
    def _as_x(x):
        arr = np.asarray(x, dtype=float)
        if np.any(arr <= 0.0) or np.any(arr > 1.0 + 1e-12):
            raise DomainError("x must lie in (0, 1]")
        return arr

    def _log_bracket(self, x):
        return np.log(self._c["k"] - x ** (self.ansatz.n_exp - 1.0)) - self._c["log_k1"]

    def _dlog_bracket(self, x):
        n = self.ansatz.n_exp
        return -(n - 1.0) * x ** (n - 2.0) / (self._c["k"] - x ** (n - 1.0))

    def f(self, x):
        x = self._as_x(x)
        return x / self.gas.gamma + self.ansatz.big_b * x**self.ansatz.n_exp

    def fx(self, x):
        x = self._as_x(x)
        n = self.ansatz.n_exp
        return 1.0 / self.gas.gamma + n * self.ansatz.big_b * x ** (n - 1.0)

    def pi(self, x):
        x = self._as_x(x)
        gam = self.gas.gamma
        log_pi = (
            math.log(self._c["pi_front"])
            + 2.0 / (gam - 1.0) * np.log(x)
            - self._c["e_rho"] * self._log_bracket(x)
        )
        return np.exp(log_pi)

    def pix(self, x):
        x = self._as_x(x)
        gam = self.gas.gamma
        dlog = 2.0 / ((gam - 1.0) * x) - self._c["e_rho"] * self._dlog_bracket(x)
        return self.pi(x) * dlog

    def g(self, x):
        x = self._as_x(x)
        gam, beta = self.gas.gamma, self.gas.beta
        # sign of the (1 - b rho0 pi) power is where the two forms differ
        sign = 1.0 if self.form == "published" else -1.0
        log_g = (
            math.log(2.0 * gam / (gam + 1.0))
            + gam * math.log1p(-beta * self._c["pi_front"])
            + sign * gam * np.log1p(-beta * self.pi(x))
            - self._c["e_p"] * self._log_bracket(x)
        )
        return np.exp(log_g)

    def gx(self, x):
        x = self._as_x(x)
        gam, beta = self.gas.gamma, self.gas.beta
        sign = 1.0 if self.form == "published" else -1.0
        pi = self.pi(x)
        dlog = -sign * gam * beta * self.pix(x) / (1.0 - beta * pi) - self._c["e_p"] * self._dlog_bracket(x)
        return self.g(x) * dlog

    def phi(self, x):
        x = self._as_x(x)
        return self.rot.velocity_ratio / x

    def phix(self, x):
        x = self._as_x(x)
        return -self.rot.velocity_ratio / x**2

    def __call__(self, x):
        return self.f(x), self.pi(x), self.g(x), self.phi(x)

    def terms(self, x: float):
        """All profiles and slopes at a scalar ``x`` in one pass.

        Returns ``(f, f_x, pi, pi_x, g, g_x, phi, phi_x)``.  Pure ``math``
        for speed inside ODE right-hand sides; no domain check.
        """
        gam, beta = self.gas.gamma, self.gas.beta
        big_b, n = self.ansatz.big_b, self.ansatz.n_exp
        c = self._c
        w = x ** (n - 1.0)
        f = x / gam + big_b * w * x
        fx = 1.0 / gam + n * big_b * w
        log_br = math.log(c["k"] - w) - c["log_k1"]
        dlog_br = -(n - 1.0) * w / (x * (c["k"] - w))
        pi = math.exp(math.log(c["pi_front"]) + 2.0 / (gam - 1.0) * math.log(x) - c["e_rho"] * log_br)
        pix = pi * (2.0 / ((gam - 1.0) * x) - c["e_rho"] * dlog_br)
        sign = 1.0 if self.form == "published" else -1.0
        g = math.exp(
            math.log(2.0 * gam / (gam + 1.0))
            + gam * math.log1p(-beta * c["pi_front"])
            + sign * gam * math.log1p(-beta * pi)
            - c["e_p"] * log_br
        )
        gx = g * (-sign * gam * beta * pix / (1.0 - beta * pi) - c["e_p"] * dlog_br)
        v = self.rot.velocity_ratio
        return f, fx, pi, pix, g, gx, v / x, -v / x**2


def zeroth_solution(gas: GasParams, rot: RotationParams, form: ZerothForm = "published") -> ZerothSolution:
    return ZerothSolution(gas, rot, ansatz_coefficients(gas, rot), form)


def eval_zeroth(x, sol: ZerothSolution):
    """Return ``(f, pi, g, phi)`` at ``x``."""
    return sol(x)


def _eq58_parts(x, f, pi, g, phi, gas):
    gam, beta = gas.gamma, gas.beta
    num = (f + phi**2 / x) * pi * (f - x) / g + (1.0 - beta) / gam * (
        gam * f / ((1.0 - beta * pi) * x) - 2.0
    )
    den = (f - x) ** 2 * pi / g - (1.0 - beta) / (1.0 - beta * pi)
    return num, den


def zeroth_ode_rhs(x, state, gas: GasParams, floor: float = 1e-12):
    """Derivatives ``(f_x, pi_x, g_x, phi_x)`` of the leading-order system.

    ``f_x`` is obtained by eliminating the pressure gradient from the
    momentum equation; the other three follow from mass, energy and angular
    momentum conservation.
    """
    f, pi, g, phi = state
    gam, beta = gas.gamma, gas.beta
    if abs(f - x) < floor:
        raise SingularityError(f"f - x = {f - x:.3e} below floor at x = {x}", x=x)
    num, den = _eq58_parts(x, f, pi, g, phi, gas)
    if abs(den) < floor:
        raise SingularityError(f"slope denominator {den:.3e} below floor at x = {x}", x=x)
    fx = num / den
    h = fx + f / x
    pix = pi * h / (x - f)
    gx = g * (gam * h / (1.0 - beta * pi) - 2.0) / (x - f)
    phix = phi * (f / x - 1.0) / (x - f)
    return fx, pix, gx, phix


def velocity_residual(x, sol: ZerothSolution) -> np.ndarray:
    """Mismatch between the ansatz slope and the slope demanded by the momentum balance.

    Zero at the front by construction; nonzero in the interior since the
    ansatz is only a two-term approximation.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    f, pi, g, phi = sol(x)
    num, den = _eq58_parts(x, f, pi, g, phi, sol.gas)
    return sol.fx(x) - num / den


@dataclass(frozen=True)
class ZerothODEProfiles:
    """Numerically integrated ``pi``, ``g``, ``phi`` on a grid."""

    x: np.ndarray
    pi: np.ndarray
    g: np.ndarray
    phi: np.ndarray


def solve_zeroth_by_ode(
    gas: GasParams,
    rot: RotationParams,
    grid,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> ZerothODEProfiles:
    """Integrate the density, pressure and azimuthal equations inward from the front.

    The velocity is the ansatz ``f0``; the initial values are the front
    boundary data.  ``grid`` must start at 1 and decrease.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or grid[0] != 1.0 or np.any(np.diff(grid) >= 0.0):
        raise DomainError("grid must be a strictly decreasing sequence starting at 1")
    if grid[-1] <= 0.0:
        raise DomainError("grid must stay above x = 0")
    sol = zeroth_solution(gas, rot, form="integrated")
    gam, beta = gas.gamma, gas.beta
    big_b, n = sol.ansatz.big_b, sol.ansatz.n_exp

    def rhs(x, s):
        pi, g, phi = s
        f = x / gam + big_b * x**n
        h = 2.0 / gam + (n + 1.0) * big_b * x ** (n - 1.0)
        xf = x - f
        return [pi * h / xf, g * (gam * h / (1.0 - beta * pi) - 2.0) / xf, phi * (f / x - 1.0) / xf]

    _, pi1, g1, phi1 = series_bc(0, gas, rot)
    res = solve_ivp(
        rhs, (1.0, grid[-1]), [pi1, g1, phi1], method="DOP853", t_eval=grid, rtol=rtol, atol=atol
    )
    if not res.success:
        x_fail = float(res.t[-1]) if res.t.size else 1.0
        raise ConvergenceError(f"zeroth-order integration failed at x = {x_fail}: {res.message}", x=x_fail)
    return ZerothODEProfiles(grid, res.y[0], res.y[1], res.y[2])


def mass_integral(sol: ZerothSolution, tol: float = 1e-10) -> float:
    """``int_0^1 pi0(x) x dx``; exact similarity flow would give 1/2."""
    return integrate_01(lambda x: float(sol.pi(x)) * x, tol=tol)
