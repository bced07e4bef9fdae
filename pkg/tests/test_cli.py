import json
import math

import pytest
from click.testing import CliRunner
from openpyxl import load_workbook

import clonebelt.verify as verify
from clonebelt.cli import cli, to_radians
from clonebelt.records import ProfileRecord, read_csv

HEADER = "theta1,theta2,alpha,beta,fbar,branch,K,P,Q,R"


def _run(*args):
    return CliRunner().invoke(cli, list(args))


def _fbars(output):
    return [record.fbar for record in read_csv(output)]


def test_optimal_whole_sphere():
    result = _run("optimal", "0", "3.141592653589793")
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 2
    assert lines[1].split(",")[4].startswith("0.8333333333333333")


def test_optimal_equator():
    result = _run("optimal", "1.5707963267948966", "1.5707963267948966")
    assert result.exit_code == 0
    assert _fbars(result.output)[0] == pytest.approx(0.5 * (1.0 + 1.0 / math.sqrt(2.0)), abs=1e-12)


def test_optimal_in_degrees():
    result = _run("--degrees", "optimal", "0", "180")
    assert result.exit_code == 0
    record = read_csv(result.output)[0]
    assert record.theta2 == math.pi
    assert record.fbar == pytest.approx(5.0 / 6.0, abs=1e-12)


@pytest.mark.parametrize(
    "args",
    [
        ("optimal", "2", "1"),
        ("optimal", "0", "4"),
        ("optimal", "zero", "1"),
        ("grid", "--steps", "1"),
        ("curve", "--theta1", "0", "--steps", "1"),
        ("curve", "--theta1", "5", "--steps", "10"),
        ("--format", "yaml", "grid", "--steps", "2"),
        ("verify", "everything"),
    ],
)
def test_usage_errors_exit_with_two(args):
    assert _run(*args).exit_code == 2


def test_grid_emits_the_triangle():
    result = _run("grid", "--steps", "2")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 7
    fbars = _fbars(result.output)
    assert min(fbars) >= 5.0 / 6.0 - 1e-12


def test_grid_output_is_byte_reproducible():
    assert _run("grid", "--steps", "5").output == _run("grid", "--steps", "5").output


def test_grid_as_json():
    result = _run("--format", "json", "grid", "--steps", "2")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert len(payload) == 6
    assert list(payload[0]) == HEADER.split(",")


def test_curve_endpoints():
    polar = _run("curve", "--theta1", "0", "--steps", "100")
    assert polar.exit_code == 0
    assert _fbars(polar.output)[-1] == pytest.approx(5.0 / 6.0, abs=1e-12)
    assert len(_fbars(polar.output)) == 101

    equatorial = _run("curve", "--theta1", "1.5707963267948966", "--steps", "10")
    assert _fbars(equatorial.output)[0] == pytest.approx(0.8535533905932737, abs=1e-12)


def test_profile_of_the_universal_cloner_is_flat():
    result = _run("profile", "--theta1", "0", "--theta2", "3.141592653589793", "--steps", "12")
    assert result.exit_code == 0
    records = read_csv(result.output, ProfileRecord)
    assert len(records) == 13
    assert all(r.fidelity == pytest.approx(5.0 / 6.0, abs=1e-10) for r in records)


def test_output_file(tmp_path):
    target = tmp_path / "grid.csv"
    result = _run("--output", str(target), "grid", "--steps", "2")
    assert result.exit_code == 0
    assert result.output == ""
    assert target.read_text(encoding="utf-8").splitlines()[0] == HEADER


def test_xlsx_needs_an_output_file(tmp_path):
    assert _run("--format", "xlsx", "grid", "--steps", "2").exit_code == 2

    target = tmp_path / "grid.xlsx"
    result = _run("--format", "xlsx", "--output", str(target), "grid", "--steps", "2")
    assert result.exit_code == 0
    assert load_workbook(target)["records"].max_row == 7


def test_verify_special_points():
    result = _run("verify", "special-points")
    assert result.exit_code == 0, result.output
    assert result.output.endswith("PASS\n")


def test_verify_exits_with_one_on_failure(monkeypatch):
    monkeypatch.setitem(verify.SUITES, "special-points", [("never", lambda seed, quick: (False, "no"))])
    result = _run("verify", "special-points")
    assert result.exit_code == 1
    assert "FAIL  special-points/never" in result.output


def test_to_radians():
    assert to_radians(1.25, degrees=False) == 1.25
    assert to_radians(180.0, degrees=True) == math.pi
    assert to_radians(90.0, degrees=True) == pytest.approx(math.pi / 2.0)


@pytest.mark.slow
def test_verify_all_is_byte_reproducible():
    first = _run("verify", "all", "--seed", "7")
    second = _run("verify", "all", "--seed", "7")
    assert first.exit_code == 0, first.output
    assert first.output == second.output
