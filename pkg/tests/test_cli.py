import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest

from ucmquad import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_adams_bashforth_json(capsys):
    code, out, _ = run(capsys, "rule", "adams-bashforth", "--n", "4", "--exact", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["weights"] == ["55/24", "-59/24", "37/24", "-3/8"]
    assert doc["degree"] == 3
    assert doc["error"] == {"coefficient": "251/720", "derivative_order": 4, "h_power": 5}
    assert doc["arithmetic"] == "rational" and "precision_digits" not in doc
    assert doc["nodes"] == ["0/1", "-1/1", "-2/1", "-3/1"]
    assert doc["diagnostics"]["I_q_list"] == ["251/30"]


def test_gauss_csv_sums_to_two(capsys):
    code, out, _ = run(capsys, "rule", "gauss-legendre", "--n", "16", "--digits", "100", "--format", "csv")
    assert code == 0
    comments = [line for line in out.splitlines() if line.startswith("#")]
    assert "# degree: 31" in comments
    assert any(line.startswith("# error_coefficient: 2.738035350149445") for line in comments)
    rows = list(csv.reader(io.StringIO("\n".join(l for l in out.splitlines() if not l.startswith("#")))))
    assert rows[0] == ["index", "node", "weight"]
    assert len(rows) == 17
    ctx = mpmath.MPContext()
    ctx.dps = 120
    total = ctx.fsum(ctx.mpf(r[2]) for r in rows[1:])
    assert abs(total - 2) < ctx.mpf("1e-95")
    assert all(len(r[2].split("e")[0].lstrip("-").replace(".", "")) == 100 for r in rows[1:])


def test_custom_simpson(capsys):
    code, out, _ = run(capsys, "rule", "custom", "--nodes", "0,1/2,1", "--interval", "0,1", "--exact")
    assert code == 0
    doc = json.loads(out)
    assert doc["weights"] == ["1/6", "2/3", "1/6"]
    assert doc["degree"] == 3
    assert "h_power" not in doc["error"]


def test_custom_decimals_select_bigfloat(capsys):
    _, out, _ = run(capsys, "rule", "custom", "--nodes", "0,0.5,1", "--interval", "0,1")
    doc = json.loads(out)
    assert doc["arithmetic"] == "bigfloat" and doc["precision_digits"] == 116
    assert doc["weights"][1].startswith("6.66666666666")
    _, out, _ = run(capsys, "rule", "custom", "--nodes", "0,0.5,1", "--interval", "0,1", "--exact")
    assert json.loads(out)["weights"] == ["1/6", "2/3", "1/6"]


def test_custom_sqrt_nodes(capsys):
    code, out, _ = run(capsys, "rule", "custom", "--nodes=-sqrt(1/3),sqrt(1/3)", "--interval=-1,1",
                       "--digits", "40")
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"] == 3
    assert doc["weights"][0].startswith("1.0000000000000000000000000000")
    code, _, err = run(capsys, "rule", "custom", "--nodes=-sqrt(1/3),sqrt(1/3)", "--interval=-1,1",
                       "--exact")
    assert code == 2 and "rational" in err
    # perfect squares stay exact
    _, out, _ = run(capsys, "rule", "custom", "--nodes", "sqrt(1/4),sqrt(9/4)", "--interval", "0,2")
    assert json.loads(out)["nodes"] == ["1/2", "3/2"]


@pytest.mark.parametrize(
    "argv",
    [
        ["rule", "simpson", "--n", "3"],
        ["rule", "newton-cotes-closed", "--n", "1"],
        ["rule", "newton-cotes-closed", "--n", "three"],
        ["rule", "adams-moulton"],
        ["rule", "gauss-legendre", "--n", "3", "--exact"],
        ["rule", "gauss-legendre", "--n", "3", "--digits", "10"],
        ["rule", "custom", "--nodes", "0,1"],
        ["rule", "custom", "--nodes", "0,1", "--interval", "0"],
        ["rule", "custom", "--nodes", "0,1,1", "--interval", "0,1"],
        ["rule", "custom", "--nodes", "0,1/0", "--interval", "0,1"],
        ["rule", "custom", "--nodes", "0,pi", "--interval", "0,1"],
        ["rule", "custom", "--n", "3", "--nodes", "0,1", "--interval", "0,1"],
        ["verify", "custom", "--n", "2"],
        ["verify", "adams-bashforth", "--n", "5..2"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("ucmquad: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["rule", "gauss-legendre", "--digits", "30", "--exact"])
    assert exc.value.code == 2


def test_verify_closed_newton_cotes(capsys):
    code, out, _ = run(capsys, "verify", "newton-cotes-closed", "--n", "2..10", "--exact")
    assert code == 0
    assert "degrees [1,3,3,5,5,7,7,9,9]  all pass" in out


def test_verify_adams_moulton(capsys):
    code, out, _ = run(capsys, "verify", "adams-moulton", "--n", "1..8", "--exact", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert [r["degree"] for r in doc["results"]] == list(range(8))


def test_verify_gauss(capsys):
    code, out, _ = run(capsys, "verify", "gauss-legendre", "--n", "2..32", "--digits", "60")
    assert code == 0
    assert out.strip().endswith("all pass")


def test_verify_failure_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "probe_degree", lambda *a, **k: -1)
    code, out, err = run(capsys, "verify", "adams-bashforth", "--n", "2..3", "--exact")
    assert code == 1
    assert "FAIL:degree=probe" in out
    assert "n=2: check degree=probe failed" in err


def test_json_round_trip_and_determinism(capsys):
    argv = ["rule", "gauss-legendre", "--n", "5", "--digits", "30"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert cli.dump_json(json.loads(first)) == first


def test_table_format(capsys):
    code, out, _ = run(capsys, "rule", "newton-cotes-closed", "--n", "3", "--format", "table")
    assert code == 0
    assert "1/3" in out and "4/3" in out
    assert "error  h^5 * -1/90 * f^(4)(xi)" in out


def test_bigfloat_classical(capsys):
    _, out, _ = run(capsys, "rule", "newton-cotes-closed", "--n", "3", "--digits", "25")
    doc = json.loads(out)
    assert doc["arithmetic"] == "bigfloat" and doc["precision_digits"] == 25
    assert doc["weights"][1] == "1.333333333333333333333333e+0"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ucmquad", "rule", "newton-cotes-open", "--n", "3", "--exact"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["weights"] == ["8/3", "-4/3", "8/3"]
