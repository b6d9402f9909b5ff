import csv
import io
import json
import subprocess
import sys

import pytest

from rotblast.cli import (
    EXIT_INVALID,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    RunConfig,
    main,
    render_table,
    resolve_config,
)

from conftest import COEFF_TABLE


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def parse(text):
    header = [ln for ln in text.splitlines() if ln.startswith("#")]
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    rows = list(csv.DictReader(body))
    return header, rows


def header_value(header, key):
    for line in header:
        name, _, val = line[2:].partition(" = ")
        if name == key:
            return val
    raise KeyError(key)


def test_profile_front_row():
    code, out, _ = run("profile")
    assert code == EXIT_OK
    _, rows = parse(out)
    front = rows[0]
    assert (front["x"], front["f"], front["pi"], front["g"], front["phi"]) == (
        "1.00000", "0.833333", "6.00000", "1.16667", "0.00000",
    )


def test_profile_table_value():
    _, out, _ = run("profile", "--b", "0.0011", "--x-min", "0.1", "--grid-points", "19")
    _, rows = parse(out)
    row = next(r for r in rows if r["x"] == "0.900000")
    assert float(row["pi"]) == pytest.approx(1.902, abs=2e-3)


def test_profile_row_count():
    _, out, _ = run("profile", "--grid-points", "16")
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert len(lines) == 17
    assert lines[0] == "x,f,pi,g,phi"


def test_profile_first_order_columns():
    code, out, _ = run("profile", "--order", "1", "--grid-points", "20")
    assert code == EXIT_OK
    header, rows = parse(out)
    assert list(rows[0]) == ["x", "f", "pi", "g", "phi", "f1", "pi1", "g1", "phi1"]
    assert float(header_value(header, "lambda1")) == pytest.approx(-1.54098, abs=1e-5)
    assert float(rows[0]["f1"]) == pytest.approx(-2.0 / 2.4, abs=1e-6)


@pytest.mark.parametrize("cell,column,expected,tol", [
    ((1.4, 0.0, 0.0), "B", 0.119048, 1e-6),
    ((1.4, 0.0, 0.0), "n", 6.83333, 1e-5),
    ((1.4, 0.0, 0.0), "J0", 0.878679, 5e-4),
    ((1.33, 0.0, 1.0), "J0", 1.42385, 1e-3),
    ((1.667, 0.0009, 0.5), "n", 6.39079, 1e-3 * 6.39079),
])
def test_coeffs_examples(cell, column, expected, tol):
    gamma, b, v = cell
    code, out, _ = run("coeffs", "--gamma", str(gamma), "--b", str(b), "--v-ratio", str(v))
    assert code == EXIT_OK
    _, rows = parse(out)
    assert len(rows) == 1 and rows[0]["status"] == "ok"
    assert float(rows[0][column]) == pytest.approx(expected, abs=tol)


def test_coeffs_default_sweep_is_the_table_grid():
    code, out, _ = run("coeffs")
    assert code == EXIT_OK
    _, rows = parse(out)
    assert len(rows) == 27
    for row in rows:
        big_b, cols = COEFF_TABLE[(float(row["gamma"]), float(row["b"]))]
        n, j0 = cols[float(row["v_ratio"])]
        assert float(row["B"]) == pytest.approx(big_b, abs=1e-6)
        assert float(row["n"]) == pytest.approx(n, rel=1e-3)
        assert float(row["J0"]) == pytest.approx(j0, rel=5e-3)


def test_coeffs_first_order_columns():
    code, out, _ = run("coeffs", "--gamma", "1.4", "--b", "0", "--v-ratio", "0", "--order", "1")
    assert code == EXIT_OK
    _, rows = parse(out)
    assert rows[0]["lambda1"] == "-1.54098"
    assert rows[0]["theta1"] == "0.652099"


def test_coeffs_failed_row_is_isolated():
    # at gamma = 2 with strong swirl the first-order energy integrand diverges at the axis
    code, out, err = run("coeffs", "--order", "1", "--gamma", "1.4,2.0", "--b", "0", "--v-ratio", "2")
    assert code == EXIT_NUMERIC
    _, rows = parse(out)
    assert [r["status"] for r in rows] == ["ok", "error:ConvergenceError"]
    assert rows[1]["J0"] == "nan" and rows[1]["lambda1"] == "nan"
    assert "row gamma=2.0" in err


def test_trajectory_header_scales_with_energy():
    r = []
    for energy in ("1", "2"):
        code, out, _ = run("trajectory", "--v-ratio", "0.5", "--energy", energy)
        assert code == EXIT_OK
        header, _ = parse(out)
        r.append(float(header_value(header, "r_s0")))
    assert r[1] / r[0] == pytest.approx(2.0**0.5, rel=1e-5)


def test_trajectory_rows_ordered():
    _, out, _ = run("trajectory", "--v-ratio", "0.5", "--trajectory-points", "20")
    _, rows = parse(out)
    assert len(rows) == 20
    t = [float(r["t"]) for r in rows]
    rs = [float(r["r_s"]) for r in rows]
    assert all(b > a for a, b in zip(t[:-1], t[1:]))
    assert all(b > a for a, b in zip(rs[:-1], rs[1:]))
    assert float(rows[-1]["y"]) == pytest.approx(0.1, rel=1e-5)


def test_trajectory_starts_at_characteristic_radius_below_ceiling():
    _, out, _ = run("trajectory", "--p0", "1", "--y-max", "0.95")
    header, rows = parse(out)
    assert rows[0]["r_s"] == header_value(header, "r_s0")
    assert rows[0]["y"] == header_value(header, "j0_eff")


def test_trajectory_without_rotation_needs_pressure():
    code, _, err = run("trajectory")
    assert code == EXIT_INVALID
    assert "p0" in err


def test_validate_default_passes():
    code, out, _ = run("validate")
    assert code == EXIT_OK
    _, rows = parse(out)
    names = {r["check"]: r for r in rows}
    assert "mass_integral" in names
    assert float(names["mass_integral"]["value"]) == pytest.approx(0.5, abs=1e-9)
    assert all(r["status"] in ("pass", "info") for r in rows)


def test_validate_first_order_reports_two_route_gap():
    code, out, _ = run("validate", "--order", "1")
    assert code == EXIT_OK
    _, rows = parse(out)
    gap = next(r for r in rows if r["check"] == "lambda1_two_route_gap")
    assert gap["kind"] == "soft" and gap["status"] == "warn"
    assert float(gap["value"]) == pytest.approx(0.5, abs=1e-6)


def test_validate_rejects_excluded_volume_limit():
    code, _, err = run("validate", "--b", "0.2")
    assert code == EXIT_INVALID
    assert "b rho0" in err or "below" in err


def test_exit_codes():
    assert run("profile", "--gamma", "x")[0] == EXIT_USAGE
    assert run("nonsense")[0] == EXIT_USAGE
    assert run("profile", "--gamma", "1.4,1.5")[0] == EXIT_USAGE
    assert run("profile", "--gamma", "0.9")[0] == EXIT_INVALID
    assert run("profile", "--grid-points", "4")[0] == EXIT_INVALID
    assert run("--help")[0] == EXIT_OK


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\ngamma = 1.667\nv-ratio = 0.5\ngrid_points = 16\n", encoding="utf-8")
    resolved = resolve_config({"config": str(cfg), "gamma": "1.33", "b": None}, "profile")
    assert resolved.gamma == (1.33,)
    assert resolved.v_ratio == (0.5,)
    assert resolved.grid_points == 16
    assert resolved.b == RunConfig().b
    code, out, _ = run("profile", "--config", str(cfg), "--gamma", "1.33")
    header, rows = parse(out)
    assert header_value(header, "gamma") == "1.33" and len(rows) == 16


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n", encoding="utf-8")
    assert run("profile", "--config", str(bad))[0] == EXIT_USAGE
    bad.write_text("gamma 1.4\n", encoding="utf-8")
    assert run("profile", "--config", str(bad))[0] == EXIT_USAGE
    assert run("profile", "--config", str(tmp_path / "missing.cfg"))[0] == EXIT_USAGE


def test_header_echoes_effective_settings():
    _, out, _ = run("profile", "--grid-points", "16", "--digits", "8")
    header, rows = parse(out)
    assert header_value(header, "grid_points") == "16"
    assert header_value(header, "digits") == "8"
    assert rows[0]["f"] == "0.83333333"


def test_csv_round_trip():
    _, out, _ = run("coeffs", "--gamma", "1.4", "--b", "0,0.0011", "--v-ratio", "0.5")
    _, rows = parse(out)
    for row in rows:
        for key, text in row.items():
            if key != "status":
                assert f"{float(text):#.6g}" == text


def test_json_output(tmp_path):
    path = tmp_path / "coeffs.json"
    code, out, _ = run("coeffs", "--gamma", "1.4", "--b", "0", "--v-ratio", "0", "--format", "json", "--output", str(path))
    assert code == EXIT_OK and out == ""
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload["columns"] == ["gamma", "b", "v_ratio", "B", "n", "J0", "status"]
    assert payload["data"]["J0"] == [pytest.approx(0.878679, abs=1e-6)]
    assert payload["data"]["status"] == ["ok"]
    assert "format = json" in payload["header"]


def test_render_keeps_non_finite_cells_as_text():
    cfg = RunConfig(format="json")
    payload = json.loads(render_table(cfg, ["a", "b"], [(float("nan"), None), (float("inf"), 1.0)]))
    assert payload["data"] == {"a": ["nan", "inf"], "b": ["nan", 1.0]}


@pytest.mark.parametrize("argv", [["coeffs", "--order", "1", "--gamma", "1.4", "--v-ratio", "0,1"], ["validate", "--order", "1"]])
def test_outputs_are_deterministic(argv):
    first, second = run(*argv)[1], run(*argv)[1]
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rotblast", "profile", "--grid-points", "16"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == run("profile", "--grid-points", "16")[1]
