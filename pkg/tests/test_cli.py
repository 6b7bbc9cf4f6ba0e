import io
import json
import subprocess
import sys

import pytest

from matroid_forge.cli import build, invariants, main
from matroid_forge.geometries import cyclic_dowling_matrix
from matroid_forge.matroid import complete_graphic, fano, is_isomorphic, parse_matroid
from matroid_forge.modular import format_csv_matrix


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_build_dowling_plane():
    code, text = run("build", "dg", "3", "z2")
    assert code == 0
    m, label = parse_matroid(text)
    assert m.n == 9 and m.r == 3
    assert label is not None


@pytest.mark.parametrize("argv,size", [
    (("mkn", "5"), 10), (("pg", "2", "3"), 13), (("reid", "3"), 9), (("lg-plus", "3", "z3"), 10),
    (("dg-minus", "3", "z3"), 9), (("cyclic-matrix", "3", "2"), 9), (("dg", "4", "z3"), 22),
])
def test_build_sizes(argv, size):
    m, _ = parse_matroid(build(argv[0], list(argv[1:])))
    assert m.n == size


def test_build_then_invariants_round_trip(tmp_path):
    path = tmp_path / "k4.txt"
    assert run("build", "mkn", "4", "-o", str(path))[0] == 0
    code, text = run("--json", "invariants", str(path))
    assert code == 0
    rep = json.loads(text)
    assert rep.pop("kind") == "MKn"
    assert rep == json.loads(json.dumps(invariants(complete_graphic(4))))
    assert rep["vertical_connectivity"] == 3 and rep["line_lengths"] == {"2": 3, "3": 4}


def test_invariants_fano(tmp_path):
    from matroid_forge.matroid import format_matroid
    path = tmp_path / "f7.txt"
    path.write_text(format_matroid(fano()))
    code, text = run("--json", "invariants", str(path))
    rep = json.loads(text)
    assert code == 0
    assert (rep["size"], rep["rank"], rep["epsilon"], rep["girth"], rep["corank"]) == (7, 3, 7, 3, 4)
    assert rep["line_minor_threshold"] == 3
    code, plain = run("invariants", str(path))
    assert "size 7" in plain.splitlines()


def test_invariants_budget_fallback(tmp_path):
    path = tmp_path / "pg.txt"
    run("build", "pg", "2", "3", "-o", str(path))
    rep = json.loads(run("--json", "--budget", "8", "invariants", str(path))[1])
    assert rep["vertical_connectivity"] is None


def test_build_determinism():
    assert run("build", "dg", "3", "z3")[1] == run("build", "dg", "3", "z3")[1]


def test_build_usage_errors(capsys):
    assert run("build", "nope", "3")[0] == 2
    assert run("build", "dg", "x", "z2")[0] == 2
    assert run("build", "dg", "3")[0] == 2
    assert run("build", "dg", "3", "q8x")[0] == 2
    assert "matroid-forge:" in capsys.readouterr().err


def test_verify_suites():
    code, text = run("verify", "sizes", "--scale", "small")
    assert code == 0
    assert text.strip().splitlines()[-1].endswith("PASS")
    code, text = run("--json", "verify", "tangles", "--scale", "small")
    rep = json.loads(text)
    assert code == 0 and rep["failures"] == 0 and rep["checks"]


def test_verify_delta_with_csv(tmp_path):
    path = tmp_path / "d32.csv"
    path.write_text(format_csv_matrix(cyclic_dowling_matrix(3, 2)))
    code, text = run("--json", "verify", "delta", "--scale", "small", "--csv", str(path), "--delta", "2")
    rep = json.loads(text)
    assert code == 0 and rep["matrix"]["certified"]
    code, _ = run("verify", "delta", "--scale", "small", "--csv", str(path), "--delta", "1")
    assert code == 1


def test_delta_command(tmp_path):
    ident = tmp_path / "i.csv"
    ident.write_text("1,0,0\n0,1,0\n0,0,1\n")
    code, text = run("--json", "delta", str(ident), "--delta", "1")
    assert code == 0 and json.loads(text)["delta"] == 1
    cyc = tmp_path / "c.csv"
    cyc.write_text(format_csv_matrix(cyclic_dowling_matrix(4, 1)))
    code, text = run("delta", str(cyc), "--delta", "1", "--c", "0")
    assert code == 0
    assert "certified yes" in text and "distinct_columns 10" in text and "bound 16" in text
    wide = tmp_path / "w.csv"
    wide.write_text("1,0,1,1,1\n0,1,1,-1,2\n")
    code, text = run("delta", str(wide), "--c", "0")
    assert code == 1 and "within_bound no" in text
    d4 = tmp_path / "d4.csv"
    d4.write_text(format_csv_matrix(cyclic_dowling_matrix(4, 2)))
    assert run("delta", str(d4), "--delta", "2")[0] == 1


def test_delta_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3,x\n")
    assert run("delta", str(bad))[0] == 2
    assert "line 2, column 2" in capsys.readouterr().err
    assert run("delta", str(tmp_path / "missing.csv"))[0] == 2


def test_threads_flag_and_env(monkeypatch, tmp_path):
    path = tmp_path / "k4.txt"
    assert run("--threads", "2", "build", "mkn", "4", "-o", str(path))[0] == 0
    assert run("--threads", "0", "build", "mkn", "4")[0] == 2
    assert run("--threads", "many", "build", "mkn", "4")[0] == 2
    monkeypatch.setenv("MATROID_FORGE_THREADS", "-3")
    assert run("build", "mkn", "4")[0] == 2
    monkeypatch.setenv("MATROID_FORGE_THREADS", "3")
    assert run("build", "mkn", "4")[0] == 0


def test_argparse_usage_exit():
    assert run()[0] == 2
    assert run("verify", "no-such-suite")[0] == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "matroid_forge.cli", "build", "reid", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    m, _ = parse_matroid(res.stdout)
    assert is_isomorphic(m, fano()) is not None
