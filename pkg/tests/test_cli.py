import csv
import io
import json

import pytest
from click.testing import CliRunner

from bicoulomb.cli import main, parse_pair, parse_range, parse_state


@pytest.fixture
def runner():
    return CliRunner()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parsers():
    assert parse_range("1..3") == [1, 2, 3]
    assert parse_range("2") == [2]
    assert parse_range("1,4") == [1, 4]
    assert parse_pair("1,2") == (1.0, 2.0)
    assert parse_pair("3", int) == (3, 3)
    assert parse_state("2,1,1").as_tuple() == (2, 1, 1, 0, 0, 0)


def test_energy_table(runner):
    res = runner.invoke(main, ["energy", "--n1", "1..3", "--n2", "1..3", "--xi", "1,1"])
    assert res.exit_code == 0
    table = rows(res.output)
    assert len(table) == 9
    first = table[0]
    assert (first["n1"], first["n2"]) == ("1", "1")
    assert float(first["re"]) == -0.5 and float(first["hy"]) == 0.0
    assert first["degeneracy"] == "1"


def test_energy_skewed_xi(runner):
    res = runner.invoke(main, ["energy", "--n1", "2", "--n2", "2", "--xi", "1,2"])
    assert res.exit_code == 0
    (row,) = rows(res.output)
    assert float(row["e2"]) == -1 / 32
    assert row["degeneracy"] == "16"


def test_energy_json(runner):
    res = runner.invoke(main, ["energy", "--n1", "1", "--n2", "2", "--format", "json"])
    assert res.exit_code == 0
    (row,) = json.loads(res.output)
    assert row["re"] == -0.3125 and row["hy"] == -0.1875


@pytest.mark.parametrize(
    "args",
    [
        ["energy", "--xi", "0,1"],
        ["energy", "--xi", "-1,1"],
        ["energy", "--n1", "0..2"],
        ["energy", "--n1", "a..b"],
        ["energy", "--xi", "1,2,3"],
    ],
)
def test_energy_usage_errors(runner, args):
    res = runner.invoke(main, args)
    assert res.exit_code == 2


def test_null_cone_message(runner):
    res = runner.invoke(main, ["energy", "--xi", "0,1"])
    assert "null cone" in res.output


def test_wavefunction(runner):
    res = runner.invoke(main, ["wavefunction", "--state", "1,1,0,0,0,0", "--point", "1,0.5,0.2", "--point", "2,1,1"])
    assert res.exit_code == 0
    table = rows(res.output)
    assert len(table) == 2
    assert table[0]["psi1_re"] == table[0]["psi2_re"]
    assert " | " in table[0]["psi"]


def test_wavefunction_rejects_invalid_state(runner):
    res = runner.invoke(main, ["wavefunction", "--state", "1,1,1,0,0,0", "--point", "1,0,0"])
    assert res.exit_code == 2
    assert "l1" in res.output


def test_orthocheck_passes(runner, tmp_path):
    out = tmp_path / "report.csv"
    res = runner.invoke(main, ["orthocheck", "--nmax", "2", "-o", str(out)])
    assert res.exit_code == 0
    table = rows(out.read_text())
    assert len(table) == 25 * 25
    assert max(float(r["deviation"]) for r in table) < 1e-8
    assert "PASS" in res.output


def test_orthocheck_below_quadrature_floor(runner, tmp_path):
    res = runner.invoke(main, ["orthocheck", "--nmax", "3", "--tol", "1e-15", "-o", str(tmp_path / "r.csv")])
    assert res.exit_code == 1
    assert "FAIL" in res.output


def test_orthocheck_explicit_states(runner):
    res = runner.invoke(main, ["orthocheck", "--state", "1,2", "--state", "1,1", "--xi", "0.5,2"])
    assert res.exit_code == 0
    table = rows(res.output.split("states=")[0])
    off = next(r for r in table if r["bra"] == "(1,2,0,0,0,0)" and r["ket"] == "(1,1,0,0,0,0)")
    assert abs(float(off["c1_re"]) - 1) < 1e-8 and abs(float(off["c2_re"])) < 1e-8


def test_orthocheck_empty_state_list(runner):
    res = runner.invoke(main, ["orthocheck"])
    assert res.exit_code == 2


def test_output_directory_from_environment(runner, tmp_path):
    res = runner.invoke(
        main, ["surface", "--n", "3", "--l", "1", "--x", "0:1:2", "--y", "-1:1:2", "-o", "s.csv"],
        env={"BICOULOMB_OUTPUT_DIR": str(tmp_path)},
    )
    assert res.exit_code == 0
    assert (tmp_path / "s.csv").read_text().count("\n") == 5


@pytest.mark.parametrize("path", ["idempotent", "polynomial"])
def test_surface_export(runner, path):
    res = runner.invoke(main, ["surface", "--n", "25", "--l", "12", "--x", "0:120:4", "--y", "-40:40:3", "--path", path])
    assert res.exit_code == 0
    table = rows(res.output)
    assert len(table) == 12
    for r in table:
        assert float(r["norm2"]) == float(r["re"]) ** 2 + float(r["hy"]) ** 2


def test_surface_paths_agree_through_cli(runner):
    args = ["surface", "--n", "8", "--l", "3", "--x", "0:40:5", "--y", "-10:10:5", "--format", "json"]
    a = json.loads(runner.invoke(main, args).output)["rows"]
    b = json.loads(runner.invoke(main, args + ["--path", "polynomial"]).output)["rows"]
    for ra, rb in zip(a, b):
        assert ra[2] == pytest.approx(rb[2], rel=1e-9, abs=1e-15)
        assert ra[3] == pytest.approx(rb[3], rel=1e-9, abs=1e-15)


def test_surface_usage_errors(runner):
    assert runner.invoke(main, ["surface", "--n", "2", "--l", "2"]).exit_code == 2
    assert runner.invoke(main, ["surface", "--x", "0:1"]).exit_code == 2
    assert runner.invoke(main, ["surface", "--xi", "1,-1", "--n", "2", "--l", "0"]).exit_code == 2


def test_verify_single_check(runner):
    res = runner.invoke(main, ["verify", "--only", "ode-residual", "--n", "25", "--l", "12"])
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert len(lines) == 1
    doc = json.loads(lines[0])
    assert doc["name"] == "ode-residual" and doc["passed"] and doc["value"] < 1e-4


def test_verify_is_reproducible(runner):
    args = ["verify", "--only", "ring-axioms", "--only", "norm-inequalities", "--seed", "42", "--samples", "500"]
    a = runner.invoke(main, args)
    b = runner.invoke(main, args)
    assert a.exit_code == 0
    assert a.output == b.output
    assert len(a.output.strip().splitlines()) == 2


def test_verify_rejects_unknown_check(runner):
    assert runner.invoke(main, ["verify", "--only", "nothing"]).exit_code == 2


def test_commands_are_byte_identical(runner):
    args = ["surface", "--n", "5", "--l", "2", "--x", "0:20:6", "--y", "-4:4:3", "--format", "json"]
    assert runner.invoke(main, args).stdout_bytes == runner.invoke(main, args).stdout_bytes


def test_verify_default_run_passes(runner):
    res = runner.invoke(main, ["verify"])
    assert res.exit_code == 0, res.output
    docs = [json.loads(line) for line in res.output.strip().splitlines()]
    assert len(docs) == 12
    assert all(d["passed"] for d in docs)
