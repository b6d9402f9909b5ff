"""
Command-line driver: profiles, coefficient sweeps, trajectories and validation.

Usage::

    python -m rotblast profile --gamma 1.4 --b 0.0011 --order 1
    python -m rotblast coeffs --order 0
    python -m rotblast trajectory --v-ratio 0.5 --energy 2
    python -m rotblast validate --config run.cfg

Settings are resolved as command-line flags, then ``key = value`` lines of
``--config``, then built-in defaults.  The effective settings are echoed as
``#`` comment lines at the top of every output.

Exit codes: 0 success, 1 invalid settings or failed invariant, 2 usage
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields

import numpy as np

from .errors import DomainError, RotBlastError
from .first_order import (
    default_grid,
    series_coefficients,
    solve_first_order,
    split1_rhs,
    split2_rhs,
    split_residual,
)
from .gas_model import GasParams, RotationParams
from .series_engine import lambda1_from_theta1, lambda_from_energy
from .shock_jump import rh_residual, series_bc, similarity_bc, strong_shock_state
from .shock_kinematics import reference_ambient, shock_trajectory
from .zeroth_order import (
    ansatz_coefficients,
    front_slope,
    mass_integral,
    solve_zeroth_by_ode,
    velocity_residual,
    zeroth_solution,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

# parameter grid of the published coefficient table
TABLE_GAMMAS = (1.33, 1.4, 1.667)
TABLE_BS = (0.0, 0.0009, 0.0011)
TABLE_V_RATIOS = (0.0, 0.5, 1.0)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Effective settings of one CLI run.

    ``gamma``, ``b`` and ``v_ratio`` are tuples so that ``coeffs`` can sweep
    them; the other subcommands require a single value each.
    """

    gamma: tuple = (1.4,)
    b: tuple = (0.0,)
    rho0: float = 1.0
    v_ratio: tuple = (0.0,)
    alpha: float = 1.0
    order: int = 0
    x_min: float = 1e-3
    grid_points: int = 200
    quad_tol: float = 1e-10
    ode_tol: float = 1e-10
    energy: float = 1.0
    p0: float = None
    y_max: float = 0.1
    trajectory_points: int = 50
    ambient_mode: str = "fixed"
    form: str = "published"
    system: str = "printed"
    digits: int = 6
    output: str = None
    format: str = "csv"

    def check(self):
        """Raise :class:`DomainError` for any setting outside its domain."""
        if self.order not in (0, 1):
            raise DomainError(f"order must be 0 or 1, got {self.order}")
        if not (0.0 < self.x_min < 1.0):
            raise DomainError(f"x_min must lie in (0, 1), got {self.x_min}")
        if self.grid_points < 16:
            raise DomainError(f"grid_points must be >= 16, got {self.grid_points}")
        for name in ("quad_tol", "ode_tol", "energy"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive")
        if self.p0 is not None and not self.p0 > 0.0:
            raise DomainError("p0 must be positive")
        if not (0.0 < self.y_max < 1.0):
            raise DomainError(f"y_max must lie in (0, 1), got {self.y_max}")
        if self.trajectory_points < 2:
            raise DomainError("trajectory_points must be >= 2")
        if not (1 <= self.digits <= 17):
            raise DomainError("digits must lie in [1, 17]")
        choices = {
            "format": ("csv", "json"), "form": ("published", "integrated"),
            "system": ("printed", "linearized"), "ambient_mode": ("fixed", "local"),
        }
        for name, allowed in choices.items():
            if getattr(self, name) not in allowed:
                raise DomainError(f"{name} must be one of {allowed}, got {getattr(self, name)!r}")
        for gamma in self.gamma:
            for b in self.b:
                gas = GasParams(gamma=gamma, b=b, rho0=self.rho0)
                for v in self.v_ratio:
                    ansatz_coefficients(gas, RotationParams(velocity_ratio=v, alpha=self.alpha))

    def single(self):
        if len(self.gamma) != 1 or len(self.b) != 1 or len(self.v_ratio) != 1:
            raise UsageError("only coeffs accepts comma-separated gamma, b and v-ratio lists")
        gas = GasParams(gamma=self.gamma[0], b=self.b[0], rho0=self.rho0)
        rot = RotationParams(velocity_ratio=self.v_ratio[0], alpha=self.alpha)
        return gas, rot

    def header_lines(self):
        out = []
        for f in fields(self):
            if f.name == "output":
                continue
            val = getattr(self, f.name)
            if isinstance(val, tuple):
                val = ",".join(repr(v) for v in val)
            out.append(f"# {f.name} = {val}")
        return out


_LIST_KEYS = ("gamma", "b", "v_ratio")
_INT_KEYS = ("order", "grid_points", "trajectory_points", "digits")
_FLOAT_KEYS = ("rho0", "alpha", "x_min", "quad_tol", "ode_tol", "energy", "p0", "y_max")


def _canonical_key(key):
    norm = key.strip().lstrip("-").replace("-", "_").lower()
    known = {f.name.replace("_", ""): f.name for f in fields(RunConfig)}
    name = known.get(norm.replace("_", ""))
    if name is None:
        raise UsageError(f"unknown setting {key!r}")
    return name


def _convert(name, raw):
    raw = str(raw).strip()
    try:
        if name in _LIST_KEYS:
            vals = tuple(float(v) for v in raw.split(",") if v.strip())
            if not vals:
                raise ValueError
            return vals
        if name in _INT_KEYS:
            return int(raw)
        if name in _FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise UsageError(f"cannot parse {name} = {raw!r}") from None
    return raw


def read_config_file(path):
    """Parse ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    settings = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        key, val = line.split("=", 1)
        name = _canonical_key(key)
        settings[name] = _convert(name, val)
    return settings


def resolve_config(flags: dict, command: str) -> RunConfig:
    """Merge flags over config-file settings over defaults."""
    settings = {}
    if flags.get("config"):
        settings.update(read_config_file(flags["config"]))
    for key, val in flags.items():
        if key in ("config", "command") or val is None:
            continue
        settings[key] = _convert(key, val)
    if command == "coeffs":
        defaults = {"gamma": TABLE_GAMMAS, "b": TABLE_BS, "v_ratio": TABLE_V_RATIOS}
        for key, val in defaults.items():
            settings.setdefault(key, val)
    return RunConfig(**settings)


def _fmt(value, digits):
    if value is None:
        return "nan"
    if isinstance(value, str):
        return value
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:#.{digits}g}"


def render_table(cfg: RunConfig, columns, rows, extra_header=()):
    """Format ``rows`` as CSV or JSON text; deterministic for fixed input."""
    header = cfg.header_lines() + [f"# {line}" for line in extra_header]
    cells = [[_fmt(v, cfg.digits) for v in row] for row in rows]
    if cfg.format == "csv":
        body = [",".join(columns)] + [",".join(r) for r in cells]
        return "\n".join(header + body) + "\n"
    def value(text):
        # json has no NaN literal in strict mode, so non-finite cells stay strings
        try:
            num = float(text)
        except ValueError:
            return text
        return num if math.isfinite(num) else text

    data = {name: [value(r[j]) for r in cells] for j, name in enumerate(columns)}
    payload = {"header": [h[2:] for h in header], "columns": list(columns), "data": data}
    return json.dumps(payload, indent=1, allow_nan=False) + "\n"


def _emit(cfg, text, stdout):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def cmd_profile(cfg: RunConfig, stdout=sys.stdout) -> int:
    gas, rot = cfg.single()
    grid = default_grid(cfg.x_min, cfg.grid_points)
    zeroth = zeroth_solution(gas, rot, cfg.form)
    f, pi, g, phi = zeroth(grid)
    columns = ["x", "f", "pi", "g", "phi"]
    table = [grid, f, pi, g, np.broadcast_to(phi, grid.shape)]
    extra = []
    if cfg.order == 1:
        first = solve_first_order(
            gas, rot, grid=grid, zeroth=zeroth, system=cfg.system,
            rtol=cfg.ode_tol, quad_tol=cfg.quad_tol,
        )
        columns += ["f1", "pi1", "g1", "phi1"]
        table += list(first.assembled)
        extra.append(f"lambda1 = {_fmt(first.lambda1, cfg.digits)}")
    rows = list(zip(*table))
    _emit(cfg, render_table(cfg, columns, rows, extra), stdout)
    return EXIT_OK


def cmd_coeffs(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    columns = ["gamma", "b", "v_ratio", "B", "n", "J0"]
    if cfg.order == 1:
        columns += ["lambda1", "theta1"]
    columns.append("status")
    rows, failed = [], False
    for gamma in cfg.gamma:
        for b in cfg.b:
            for v in cfg.v_ratio:
                row = [gamma, b, v]
                try:
                    gas = GasParams(gamma=gamma, b=b, rho0=cfg.rho0)
                    rot = RotationParams(velocity_ratio=v, alpha=cfg.alpha)
                    ansatz = ansatz_coefficients(gas, rot)
                    coeffs, _ = series_coefficients(
                        gas, rot, cfg.order, cfg.form, cfg.system, cfg.quad_tol, cfg.ode_tol,
                        grid=default_grid(cfg.x_min, cfg.grid_points),
                    )
                    row += [ansatz.big_b, ansatz.n_exp, coeffs.j0]
                    if cfg.order == 1:
                        row += [coeffs.lambda1, coeffs.theta1]
                    row.append("ok")
                except RotBlastError as exc:
                    failed = True
                    row += [None] * (len(columns) - 4) + [f"error:{type(exc).__name__}"]
                    stderr.write(f"row gamma={gamma} b={b} v_ratio={v}: {exc}\n")
                rows.append(row)
    _emit(cfg, render_table(cfg, columns, rows), stdout)
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_trajectory(cfg: RunConfig, stdout=sys.stdout) -> int:
    gas, rot = cfg.single()
    coeffs, _ = series_coefficients(gas, rot, cfg.order, cfg.form, cfg.system, cfg.quad_tol, cfg.ode_tol)
    ambient = reference_ambient(gas, rot, 1.0, cfg.p0)
    traj = shock_trajectory(
        cfg.energy, gas, rot, coeffs, ambient, order=cfg.order, y_ceiling=cfg.y_max,
        n_points=cfg.trajectory_points, mode=cfg.ambient_mode, tol=cfg.quad_tol,
    )
    extra = [
        f"r_s0 = {_fmt(traj.r_s0, cfg.digits)}",
        f"a0 = {_fmt(ambient.a0, cfg.digits)}",
        f"j0_eff = {_fmt(coeffs.j0_eff, cfg.digits)}",
    ]
    rows = [tuple(r) for r in traj.samples]
    _emit(cfg, render_table(cfg, ["t", "r_s", "U", "y"], rows, extra), stdout)
    return EXIT_OK


@dataclass
class Check:
    name: str
    kind: str  # "hard" or "soft"
    value: float
    limit: float
    passed: bool


def _run_checks(cfg: RunConfig):
    gas, rot = cfg.single()
    beta = gas.beta
    checks = []

    def hard(name, value, limit):
        checks.append(Check(name, "hard", value, limit, bool(value <= limit)))

    def soft(name, value, limit=float("nan")):
        checks.append(Check(name, "soft", value, limit, bool(not value > limit) if not math.isnan(limit) else True))

    # front data: affine in y
    ys = (0.0, 0.005, 0.01)
    bcs = [np.array(similarity_bc(y, gas, rot).as_tuple()) for y in ys]
    hard("bc_affine_in_y", float(np.max(np.abs(bcs[2] - 2.0 * bcs[1] + bcs[0]))), 1e-12)
    # closed conservation jump for the ideal gas at infinite strength, otherwise O(beta^2)
    amb = reference_ambient(gas, rot, 1.0, 1.0)
    post = strong_shock_state(1.0, 0.0, amb, gas)
    pre = (amb.rho0, 0.0, 0.0, amb.v0)
    res = np.abs(rh_residual(1.0, pre, post.primitive, gas))
    hard("rh_residual_y0", float(np.max(res)), 1e-12 + 100.0 * beta**2)
    # Taylor ansatz reproduces the front slope
    zeroth = zeroth_solution(gas, rot, cfg.form)
    hard("ansatz_front_slope", abs(float(zeroth.fx(1.0)) - front_slope(gas, rot)), 1e-12)
    # closed form against direct integration
    grid = np.linspace(1.0, 0.05, 20)
    ode = solve_zeroth_by_ode(gas, rot, grid, rtol=cfg.ode_tol)
    ode_err = max(
        float(np.max(np.abs(ode.pi - zeroth.pi(grid)))),
        float(np.max(np.abs(ode.g - zeroth.g(grid)))),
        float(np.max(np.abs(ode.phi - zeroth.phi(grid)))),
    )
    if cfg.form == "integrated" or beta == 0.0:
        hard("closed_form_vs_ode", ode_err, 1e-6)
    else:
        soft("closed_form_vs_ode", ode_err, 1e-6)
    coeffs, first = series_coefficients(gas, rot, cfg.order, cfg.form, cfg.system, cfg.quad_tol, cfg.ode_tol)
    hard("effective_energy_factor_margin", -coeffs.j0_eff, 0.0)
    lam0 = lambda_from_energy(coeffs.j0, (coeffs.theta1 or 0.0) * coeffs.j0, 0.0, gas, rot)
    hard("lambda_at_y0", abs(lam0 - 2.0), 1e-6)
    soft("mass_integral", mass_integral(zeroth, tol=cfg.quad_tol))
    xs = np.linspace(0.95, 0.05, 19)
    soft("interior_velocity_residual", float(np.max(np.abs(velocity_residual(xs, zeroth)))))
    if first is not None:
        bc1, bc2 = series_bc(1, gas, rot)
        front = max(
            float(np.max(np.abs(first.split1[:, 0] - np.array(bc1)))),
            float(np.max(np.abs(first.split2[:, 0] - np.array(bc2)))),
        )
        hard("first_order_front_values", front, 1e-12)
        # derivatives from the eliminated form, residuals from the implicit one
        worst = 0.0
        for family, dense, rhs in ((1, first.split1_at, split1_rhs), (2, first.split2_at, split2_rhs)):
            for x in np.linspace(1.0, 0.05, 20):
                state = dense(x)
                resid = split_residual(x, state, rhs(x, state, zeroth, gas, cfg.system), zeroth, family, gas, cfg.system)
                scale = 1.0 + float(np.max(np.abs(state)))
                worst = max(worst, float(np.max(np.abs(resid))) / scale)
        hard("first_order_back_substitution", worst, 1e-8)
        lam_alt = lambda1_from_theta1(coeffs.theta1, coeffs.j0, gas, rot)
        gap = abs(lam_alt - coeffs.lambda1) / abs(coeffs.lambda1)
        soft("lambda1_two_route_gap", gap, 1e-3)
    return checks


def cmd_validate(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    checks = _run_checks(cfg)
    rows = []
    for c in checks:
        if c.kind == "hard":
            status = "pass" if c.passed else "fail"
        else:
            status = "info" if c.passed else "warn"
        rows.append((c.name, c.kind, status, c.value, c.limit))
    text = render_table(cfg, ["check", "kind", "status", "value", "limit"], rows)
    _emit(cfg, text, stdout)
    for c in checks:
        if c.kind == "hard" and not c.passed:
            stderr.write(f"invariant failed: {c.name} = {c.value:.3e} > {c.limit:.3e}\n")
            return EXIT_INVALID
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotblast", description="Cylindrical blast waves in a rotating van der Waals gas.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    add = common.add_argument
    # defaults stay None so that unset flags fall through to the config file
    add("--gamma", help="adiabatic exponent (comma list for coeffs)")
    add("--b", help="excluded volume (comma list for coeffs)")
    add("--rho0")
    add("--v-ratio", dest="v_ratio", help="rotational parameter v*/A* (comma list for coeffs)")
    add("--alpha")
    add("--order", choices=("0", "1"))
    add("--x-min", dest="x_min")
    add("--grid-points", dest="grid_points")
    add("--quad-tol", dest="quad_tol")
    add("--ode-tol", dest="ode_tol")
    add("--energy", help="explosion energy per unit length")
    add("--p0", help="ambient pressure; required for a non-rotating trajectory")
    add("--y-max", dest="y_max", help="trajectory stops where y reaches this value")
    add("--trajectory-points", dest="trajectory_points")
    add("--ambient-mode", dest="ambient_mode", choices=("fixed", "local"))
    add("--form", choices=("published", "integrated"), help="closed-form zeroth-order profiles")
    add("--system", choices=("printed", "linearized"), help="first-order equation set")
    add("--digits", help="significant digits in the output")
    add("--output")
    add("--format", choices=("csv", "json"))
    add("--config", help="file of key = value settings")
    for name, text in (
        ("profile", "reduced profiles on a grid"),
        ("coeffs", "B, n, J0 (and lambda1) over parameter sweeps"),
        ("trajectory", "shock time, radius, speed and strength"),
        ("validate", "run invariant checks and diagnostics"),
    ):
        sub.add_parser(name, parents=[common], help=text)
    return parser


_COMMANDS = {
    "profile": cmd_profile,
    "coeffs": cmd_coeffs,
    "trajectory": cmd_trajectory,
    "validate": cmd_validate,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    flags = vars(args)
    command = flags["command"]
    try:
        cfg = resolve_config(flags, command)
        cfg.check()
        if command != "coeffs":
            cfg.single()
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, TypeError) as exc:
        stderr.write(f"invalid settings: {exc}\n")
        return EXIT_INVALID
    func = _COMMANDS[command]
    try:
        if command in ("coeffs", "validate"):
            return func(cfg, stdout, stderr)
        return func(cfg, stdout)
    except DomainError as exc:
        stderr.write(f"invalid settings: {exc}\n")
        return EXIT_INVALID
    except RotBlastError as exc:
        stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        stderr.write(f"cannot write output: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
