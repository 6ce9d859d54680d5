import io
import json
import subprocess
import sys

import pytest

from wdrd import constructions as C
from wdrd import textio
from wdrd.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERDICT, main, parse_connection, run

# the 4-cycle with one extra arc: strongly connected, not regular
BAD = "4 5\n0 1\n1 2\n2 3\n3 0\n0 3\n"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


def test_parse_connection():
    assert parse_connection("(1,0),(0,1),(-1,-1)") == [(1, 0), (0, 1), (-1, -1)]
    assert parse_connection("1,2") == [1, 2]
    assert parse_connection(" (1, 0) , (0,1) ") == [(1, 0), (0, 1)]


def test_construct_roundtrip_through_check(tmp_path):
    code, text = call("construct", "cayley", "--moduli", "4,4", "--conn", "(1,0),(0,1),(-1,-1)")
    assert code == EXIT_OK
    path = tmp_path / "doob.txt"
    path.write_text(text)
    g = textio.read(path)
    assert g == C.cayley((4, 4), C.DOOB_ORIENTED_CONNECTION)
    code, res = call_json("check", "--in", str(path))
    assert code == EXIT_OK
    assert res["strongly_connected"] and res["wdrd"] and res["commutative"]
    assert res["tensor"]["labels"] == [[0, 0], [1, 2], [2, 1], [2, 2], [3, 3]]


def test_construct_json():
    code, data = call_json("construct", "hamming", "--d", "2", "--q", "2")
    assert code == EXIT_OK and data["n"] == 4 and len(data["arcs"]) == 8
    code, text = call("construct", "--base", "folded_cube", "--n", "3")
    assert code == EXIT_OK and text.startswith("4 12\n")


def test_check_reports_witness(tmp_path):
    path = tmp_path / "g.txt"
    textio.write(C.cayley((4,), [1]), path)
    bad = tmp_path / "bad.txt"
    bad.write_text(BAD)
    code, res = call_json("check", "--in", str(bad))
    assert code == EXIT_OK and res["wdrd"] is False
    assert res["witness"]["kind"] == "non-constant-intersection"
    assert res["witness"]["triple"] == [[0, 0], [1, 1], [1, 1]]
    code, text = call("check", "--in", str(bad))
    assert "weakly distance-regular: False" in text and "witness:" in text
    code, text = call("check", "--in", str(path))
    assert "weakly distance-regular: True" in text and "girth: 4" in text


def test_tensor_command(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text(BAD)
    code, text = call("tensor", "cayley", "--moduli", "4", "--conn", "1,2")
    assert code == EXIT_OK
    assert "k(1,2) = 1" in text and "p^(1,1)_(1,2),(1,2) = 1" in text
    code, data = call_json("tensor", "paley", "--q", "7")
    assert code == EXIT_OK and data["commutative"] is True
    code, _ = call("tensor", "--in", str(bad))
    assert code == EXIT_USAGE


def test_lemmas_command(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text(BAD)
    code, data = call_json("lemmas", "cayley", "--moduli", "4,4", "--conn", "(1,0),(0,1),(-1,-1)")
    assert code == EXIT_OK and data["s=t"]["status"] == "pass"
    code, _ = call("lemmas", "--in", str(bad))
    assert code == EXIT_USAGE  # not weakly distance-regular
    code, text = call("lemmas", "hamming", "--d", "2", "--q", "2")
    assert code == EXIT_OK and "underlying array" in text


def test_search_command():
    code, data = call_json("search", "hamming", "--d", "2", "--q", "2", "--jobs", "1")
    assert code == EXIT_OK
    assert data["total_visited"] == 81 and data["complete"] is True
    assert len(data["proper_classes"]) == 1
    code, text = call("search", "complete", "--q", "4", "--prune", "regular-degrees", "--jobs", "1")
    assert code == EXIT_OK and "proper classes: 1" in text and "complete: True" in text
    code, text = call("search", "complete", "--q", "4", "--no-dedup", "--jobs", "1")
    assert "proper classes: 6" in text


def test_search_budget_exit_code():
    code, data = call_json("search", "hamming", "--d", "3", "--q", "2", "--budget-leaves", "10", "--jobs", "1")
    assert code == EXIT_BUDGET and data["complete"] is False and data["total_visited"] == 10


def test_verify_thm_exit_codes():
    code, text = call("verify", "thm", "--base", "hamming", "--d", "2", "--q", "2", "--jobs", "1")
    assert code == EXIT_OK and "verdict: pass" in text
    code, data = call_json("verify", "thm", "--base", "doob", "--d1", "1", "--d2", "0")
    assert code == EXIT_OK and data["mode"] == "sufficiency-only"
    code, text = call("verify", "thm", "--base", "folded_cube", "--n", "4", "--prune", "regular-degrees",
                      "--jobs", "1")
    assert code == EXIT_VERDICT and "verdict: FAIL" in text
    code, _ = call("verify", "thm", "--base", "hamming", "--d", "3", "--q", "2", "--budget-leaves", "3",
                   "--jobs", "1")
    assert code == EXIT_BUDGET


def test_verify_product(tmp_path):
    code, data = call_json("verify", "product", "cayley", "--moduli", "4", "--conn", "1,2")
    assert code == EXIT_OK and data["passed"] and data["pairs_checked"] == 256
    path = tmp_path / "k4.txt"
    textio.write(C.cayley((4,), [1, 2]), path)
    code, text = call("verify", "product", "--in", str(path), "--in", str(path))
    assert code == EXIT_OK and "verdict: pass" in text
    code, _ = call("verify", "product", "cayley", "--moduli", "3", "--conn", "1")
    assert code == EXIT_USAGE  # girth 3 breaks the hypotheses


@pytest.mark.parametrize("argv", [
    ["check"],
    ["check", "hamming", "--d", "2"],
    ["check", "petersen"],
    ["check", "hamming", "--d", "2", "--q", "2", "--in", "x.txt"],
    ["check", "--in", "/nonexistent/file.txt"],
    ["check", "cayley", "--moduli", "4", "--conn", "(1,0"],
    ["verify", "thm", "--base", "shrikhande"],
    ["verify", "thm"],
    ["search", "cayley", "--moduli", "4", "--conn", "1"],
    ["search", "hamming", "--d", "2", "--q", "2", "--prune", "nope"],
    ["search", "complete", "--q", "3", "--prune", "arc-type-q2"],
    ["frobnicate"],
    ["check", "--d", "notanint"],
])
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1\n")
    assert main(["check", "--in", str(path)]) == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wdrd", "construct", "cayley", "--moduli", "3", "--conn", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "3 3\n0 1\n1 2\n2 0\n"
    proc = subprocess.run([sys.executable, "-m", "wdrd", "--help"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "construct" in proc.stdout
