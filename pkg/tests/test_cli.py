import json
import subprocess
import sys

import pytest

from freemult import cli
from freemult.arrangement import MultiArrangement, x3
from freemult.derivations import Status


def call(argv):
    req = cli.parse_request(argv)
    return cli.run(req)


def test_classify_free():
    code, rep = call(["classify", "--alpha", "-1", "--mult", "2,2,2,1,1,1"])
    assert code == 0
    r = rep["result"]
    assert r["agree"] is True and r["exponents"] == [3, 3, 3]
    assert {v["status"] for v in r["verdicts"].values()} == {"Free"}
    assert rep["schema"] == cli.SCHEMA


def test_classify_not_free_over_f7():
    code, rep = call(["classify", "--field", "Fp:7", "--alpha", "2", "--mult", "4,4,4,1,1,1"])
    assert code == 0
    assert {v["status"] for v in rep["result"]["verdicts"].values()} == {"NotFree"}


def test_degenerate_alpha_exit_code():
    code, rep = call(["classify", "--alpha", "1", "--mult", "2,2,2,1,1,1"])
    assert code == cli.EXIT_DEGENERATE and "error" in rep


@pytest.mark.parametrize("argv", [
    ["classify", "--alpha", "2", "--mult", "2,2"],
    ["classify", "--alpha", "2", "--mult", "a,b,c,d,e,f"],
    ["classify", "--field", "Fp:8", "--alpha", "2", "--mult", "2,2,2,1,1,1"],
    ["charpoly"],
    ["charpoly", "--arrangement", "/nonexistent.json"],
    ["scan", "--max-weight", "20"],
])
def test_bad_input_exit_code(argv):
    code, rep = call(argv)
    assert code == cli.EXIT_BAD_INPUT and rep["error"]


def test_disagreement_exit_code(monkeypatch):
    def fake(alpha, m, field, methods):
        return {"homological": Status.FREE, "bruteforce": Status.NOT_FREE}

    monkeypatch.setattr(cli, "run_methods", fake)
    code, rep = call(["classify", "--alpha", "2", "--mult", "2,2,2,1,1,1"])
    assert code == cli.EXIT_DISAGREE and rep["result"]["agree"] is False


def test_request_round_trip():
    argv = ["grid-line", "--field", "Fp:11", "--format", "json", "--a", "1,2", "--b", "-1,-2", "--line", "1,1,0"]
    req = cli.parse_request(argv)
    assert req.params["b"] == "-1,-2"
    again = cli.parse_request(req.to_argv())
    assert again == req
    assert json.loads(json.dumps(req.to_json()))["params"]["a"] == "1,2"


def test_seed_reproducible():
    a = call(["complex-check", "--random", "4", "--seed", "7"])[1]["result"]
    b = call(["complex-check", "--random", "4", "--seed", "7"])[1]["result"]
    assert a == b and a["all_exact"]


def test_charpoly_from_json_file(tmp_path):
    path = tmp_path / "a.json"
    path.write_text(x3(3).to_json())
    code, rep = call(["charpoly", "--arrangement", str(path)])
    assert code == 0
    r = rep["result"]
    assert r["coefficients"] == [1, -6, 12, -7] and not r["splits"]
    assert MultiArrangement.from_dict(r["arrangement"]) == x3(3)


def test_basis_canonical_and_generic():
    code, rep = call(["basis", "--canonical", "1"])
    assert code == 0 and rep["result"]["status"] == "Free" and rep["result"]["exponents"] == [3, 3, 3]
    code, rep = call(["basis", "--alpha", "2", "--mult", "3,3,3,1,1,1"])
    assert code == 0 and rep["result"]["exponents"] == [4, 4, 4]


def test_p1_exponents_command():
    code, rep = call(["p1-exponents", "--forms", "x,z,x+z,x-z", "--vars", "x,z", "--mult", "3,3,1,1"])
    assert code == 0 and rep["result"]["exponents"] == [3, 5]
    code, _ = call(["p1-exponents", "--forms", "x^2,z", "--vars", "x,z", "--mult", "1,1"])
    assert code == cli.EXIT_BAD_INPUT


def test_grid_line_command():
    code, rep = call(["grid-line", "--a", "1,2", "--b", "-1,-2", "--line", "1,1,0"])
    assert code == 0 and rep["result"]["free"] and rep["result"]["q"] == 2


def test_extend_command():
    code, rep = call(["extend", "--order", "2", "--t", "1"])
    r = rep["result"]
    assert code == 0 and r["hyperplanes"] == 10 and r["verification"]["free"]
    code, rep = call(["extend", "--field", "Fp:7", "--alpha", "2", "--t", "2"])
    assert code == 0 and rep["result"]["hyperplanes"] == 22


def test_scan_command_small():
    code, rep = call(["scan", "--max-weight", "9", "--alphas", "-1,2"])
    r = rep["result"]
    assert code == 0 and not r["disagreements"] and not r["unknown"]
    assert sorted(tuple(c["m"]) for c in r["free_cells"]) == [(2, 2, 2, 1, 1, 1)] * 2


def test_table_rendering():
    req = cli.parse_request(["classify", "--alpha", "-1", "--mult", "2,2,2,1,1,1"])
    code, rep = cli.run(req)
    text = cli.render(req, code, rep)
    assert "exponents    (3, 3, 3)" in text


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "freemult", "charpoly", "--alpha", "2", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["coefficients"] == [1, -6, 12, -7]
