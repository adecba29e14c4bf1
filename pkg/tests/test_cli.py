import json
import subprocess
import sys

import pytest

from tki.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_golden(capsys):
    code, out, _ = run(capsys, "compute", "--n", "2", "--m", "3", "--invariant", "homfly", "--vars", "az", "--format", "text")
    assert code == 0
    assert out.strip() == "-a^4 + 2*a^2 + a^2*z^2"


def test_not_coprime(capsys):
    code, _, err = run(capsys, "compute", "--n", "2", "--m", "4")
    assert code == 2
    assert "not coprime" in err


def test_usage_errors(capsys):
    assert run(capsys, "compute", "--n", "2")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "--max", "4", "--checks", "bogus")[0] == 2
    assert run(capsys, "cs-check", "--n", "2", "--m", "3", "--N", "7")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--max", "6", "--checks", "relation,symmetry,a1,olga")
    assert code == 0
    assert "all pass" in out


def test_verify_json_with_oracle(capsys):
    code, out, _ = run(capsys, "verify", "--max", "4", "--checks", "relation,oracle", "--N", "7", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["pass"] is True
    assert [r["knot"] for r in obj["rows"]] == sorted(r["knot"] for r in obj["rows"])


def test_cs_check(capsys):
    code, out, _ = run(capsys, "cs-check", "--n", "2", "--m", "3", "--N", "7", "--level", "20", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] and rep["knot"] == [2, 3] and rep["abs_error"] < 1e-8


def test_cs_check_failure_exit(capsys):
    code, _, _ = run(capsys, "cs-check", "--n", "2", "--m", "3", "--N", "7", "--level", "20", "--tol", "-1")
    assert code == 1


def test_table_is_byte_stable(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "table", "--max", "5", "--invariant", "all", "--out", str(p1))[0] == 0
    assert run(capsys, "table", "--max", "5", "--invariant", "all", "--out", str(p2), "--threads", "2")[0] == 0
    assert p1.read_bytes() == p2.read_bytes()
    rows = json.loads(p1.read_text())
    assert {r["kind"] for r in rows} == {"homfly", "kauffman", "kauffman-neg", "alexander", "qtilde"}


def test_verify_writes_nothing_without_out(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(capsys, "verify", "--max", "4")
    assert list(tmp_path.iterdir()) == []


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "tki", "compute", "--n", "3", "--m", "4", "--invariant", "alexander"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert r.stdout.strip() == "1 + 5*z^2 + 5*z^4 + z^6"


@pytest.mark.parametrize("threads", ["1", "2"])
def test_threads_env(capsys, monkeypatch, threads):
    monkeypatch.setenv("TKI_THREADS", threads)
    code, out, _ = run(capsys, "verify", "--max", "5", "--format", "json")
    assert code == 0 and json.loads(out)["pass"]
