import json
from importlib import resources

import jsonschema
import pytest

from quon_energy.cli import main

SCHEMA = json.loads(resources.files("quon_energy").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def test_matrix_text(capsys):
    code, out, _ = run(capsys, "matrix", "--n", "2")
    assert code == 0
    assert "1, q\nq, 1" in out


def test_matrix_n1(capsys):
    code, data = run_json(capsys, "matrix", "--n", "1")
    assert code == 0 and data["result"]["matrix"]["entries"] == [["1"]]


@pytest.mark.parametrize("q", ["1", "-1", "0.5", "1/0", "abc"])
def test_bad_q_is_usage_error(capsys, q):
    code, _, err = run(capsys, "matrix", "--n", "2", "--q", q)
    assert code == 2 and "error" in err


def test_matrix_inverse(capsys):
    code, data = run_json(capsys, "matrix", "--n", "2", "--q", "1/2", "--inverse")
    assert code == 0
    assert data["result"]["inverse"]["entries"] == [["4/3", "-2/3"], ["-2/3", "4/3"]]


def test_matrix_inverse_bound(capsys):
    assert run(capsys, "matrix", "--n", "5", "--inverse")[0] == 2


def test_coeffs_both(capsys):
    code, data = run_json(capsys, "coeffs", "--n", "2", "--method", "both")
    assert code == 0 and data["passed"] is True
    first = data["result"]["coeffs"]["coeffs"][0]
    assert first == {"perm": [1, 2], "i": 1, "value": "(-1)/(-1 + q^2)"}


def test_coeffs_n1(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "1")
    assert code == 0 and "c_1([1]) = 1" in out


def test_coeffs_n5_specialized(capsys):
    code, data = run_json(capsys, "coeffs", "--n", "5", "--q", "1/3", "--method", "both")
    assert code == 0 and data["result"]["equality"]["equal"]


def test_verify_det(capsys):
    code, data = run_json(capsys, "verify", "det", "--n", "3")
    assert code == 0 and data["result"]["match"]
    assert data["result"]["determinant"] == data["result"]["formula"]


def test_verify_eigen(capsys):
    code, data = run_json(capsys, "verify", "eigen", "--n", "2", "--q", "1/2", "--seed", "7")
    assert code == 0 and data["seed"] == 7 and data["result"]["draws"] == 20


@pytest.mark.parametrize("check,extra", [
    ("remark1", []), ("rp", []), ("integrality", []), ("greenberg", []),
    ("remark1", ["--q", "2/5"]), ("rp", ["--q", "-1/3"]),
])
def test_verify_checks_pass(capsys, check, extra):
    code, data = run_json(capsys, "verify", check, "--n", "3", *extra)
    assert code == 0 and data["passed"] is True


def test_verify_position_symmetry_n4(capsys):
    assert run(capsys, "verify", "remark1", "--n", "4")[0] == 0


def test_greenberg_rejects_nonzero_q(capsys):
    assert run(capsys, "verify", "greenberg", "--n", "2", "--q", "1/2")[0] == 2


def test_unknown_check(capsys):
    assert run(capsys, "verify", "bogus", "--n", "2")[0] == 2


def test_bench_refuses_large_n(capsys):
    assert run(capsys, "bench", "--n", "8")[0] == 2


def test_bench_small(capsys):
    code, data = run_json(capsys, "bench", "--n", "3")
    assert code == 0
    ops = {(r["n"], r["mode"], r["op"]) for r in data["result"]["timings"]}
    assert (3, "symbolic", "det") in ops and (3, "q=1/3", "coeffs") in ops


def test_byte_identical_json(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "eigen", "--n", "2", "--seed", "11", "--format", "json",
                     "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    jsonschema.validate(json.loads(a.read_text()), SCHEMA)


def test_failure_exit_code(capsys, monkeypatch):
    from quon_energy import cli, zagier
    monkeypatch.setattr(zagier, "zagier_formula", lambda n: zagier.delta(n))
    code, data = run_json(capsys, "verify", "det", "--n", "2")
    assert code == 1 and data["passed"] is False
    assert cli.EXIT_FAIL == 1


def test_singular_exit_code(capsys, monkeypatch):
    from quon_energy import zagier
    from quon_energy.group_algebra import SingularSpecializationError

    def boom(*a, **k):
        raise SingularSpecializationError("singular")

    monkeypatch.setattr(zagier, "invert", boom)
    code, data = run_json(capsys, "matrix", "--n", "2", "--q", "1/2", "--inverse")
    assert code == 3 and data["error"] == "singular"


def test_module_entry_point():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "quon_energy", "matrix", "--n", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "q, 1" in r.stdout
