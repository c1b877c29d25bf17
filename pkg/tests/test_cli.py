import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import load_fixture
from m24prod.cli import EXIT_BAD_INPUT, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_OK, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_solve_11a():
    code, text = run("solve", "11A", "--minimize")
    assert code == EXIT_OK
    js = json.loads(text)
    assert js["rows"] == [{"N": 11, "n": 1, "tc0": "2", "tc2": ["11/6", "0"]}]


def test_solve_1a():
    code, text = run("solve", "1A")
    assert code == EXIT_OK
    assert json.loads(text)["rows"] == [{"N": 1, "n": 1, "tc0": "24", "tc2": []}]


def test_solve_infeasible_exit_code():
    code, text = run("solve", "8A", "--level", "8")
    assert code == EXIT_INFEASIBLE
    assert json.loads(text)["infeasible"] is True


@pytest.mark.parametrize("label,p,weight", [("3B", 3, "6"), ("23AB", 1, "-1"), ("8A", 8, "4")])
def test_verify_examples(label, p, weight):
    code, text = run("verify", label)
    assert code == EXIT_OK
    js = json.loads(text)
    assert (js["p"], js["weight"]) == (p, weight)
    assert js["expansion"]["equal"] and js["checks_failed"] == []


def test_verify_23ab_reports_rational_exponents():
    js = json.loads(run("verify", "23AB", "--bounds", "3", "3")[1])
    assert js["expansion"]["integral_exponents"] is False


def test_verify_failure_exit_code(tmp_path, monkeypatch):
    from m24prod import dataio
    raw = json.loads(dataio.DEFAULT_PATH.read_text(encoding="utf-8"))
    raw["classes"]["11A"]["rows"][0]["tc0"] = "3"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(raw), encoding="utf-8")
    # main sets the data variable; monkeypatch restores it afterwards
    monkeypatch.setenv(dataio.DATA_ENV, str(dataio.DEFAULT_PATH))
    code, text = run("--data", str(bad), "verify", "11A", "--bounds", "3", "3")
    assert code == EXIT_FAIL
    assert json.loads(text)["checks_failed"]


@pytest.mark.parametrize("argv", [["solve", "9Z"], ["tables", "nope"], ["solve", "2A", "--order", "2"],
                                  ["verify"], ["numverify", "--tol", "-1"], ["bogus"]])
def test_bad_input(argv):
    assert run(*argv)[0] == EXIT_BAD_INPUT


def test_tables_cusps_match_fixture():
    rows = json.loads(run("tables", "cusps")[1])
    fx = load_fixture("cusps")
    got = {}
    for r in rows:
        got.setdefault(str(r["N"]), []).append([r["cusp"], r["h"], r["N_c"]])
    # level 6 is supported in addition to the published levels
    assert sorted(got.pop("6")) == [["0", 6, 6], ["1/2", 3, 3], ["1/3", 2, 2], ["Infinity", 1, 1]]
    assert {k: sorted(v) for k, v in got.items()} == {k: sorted(v) for k, v in fx.items()}


def test_tables_zg_match_fixture():
    rows = json.loads(run("tables", "Zg")[1])
    fx = load_fixture("Zg")
    assert len(rows) == sum(len(v) for v in fx.values())
    for r in rows:
        m0, coords = fx[r["class"]][str(r["d"])]
        assert Fraction(r["tc0"]) == Fraction(m0)
        assert [Fraction(x) for x in r["tc2"]] == [Fraction(x) for x in coords]


def test_tables_projections_match_fixture():
    rows = json.loads(run("tables", "projections")[1])
    fx = load_fixture("projections")
    got = {f"{r['N']}:{r['cusp']}": r["matrix"] for r in rows}
    assert sorted(k for k in got if k not in fx) == ["6:0", "6:1/2", "6:1/3"]
    assert {k: got[k] for k in fx} == {k: [[str(Fraction(x)) for x in row] for row in v] for k, v in fx.items()}


def test_tables_ng_and_solutions(table_rows):
    ng = {r["class"]: r for r in json.loads(run("tables", "Ng")[1])}
    for label, (N, k) in load_fixture("Ng").items():
        assert (ng[label]["N_g"], Fraction(ng[label]["k_g"])) == (N, Fraction(k))
    sols = json.loads(run("tables", "solutions")[1])
    got = {}
    for r in sols:
        got.setdefault(r["class"], []).append([r["N"], r["n"], r["tc0"], r["tc2"]])
    assert got == table_rows


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_table_formats(fmt):
    code, text = run("tables", "cusps", "--format", fmt)
    assert code == EXIT_OK and "Infinity" in text


def test_numverify_command():
    code, text = run("numverify", "--tol", "1e-7")
    assert code == EXIT_OK
    assert all(r["ok"] for r in json.loads(text))


def test_deterministic_output():
    a = run("solve", "4C", "--minimize")[1]
    b = run("solve", "4C", "--minimize")[1]
    assert a == b


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "m24prod.cli", "solve", "2A"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["p"] == 1
