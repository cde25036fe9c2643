import json
import subprocess
import sys

import pytest

from qpc.cli import main
from qpc.qp import potential_to_json
from qpc.quiver import quiver_to_json
from qpc.typea import gamma_qp

SL5_WORD = "1,2,1,3,2,1,4,3,2,1"


@pytest.fixture
def qp_file(tmp_path):
    def write(word):
        qp = gamma_qp(word)
        path = tmp_path / "qp.json"
        path.write_text(json.dumps({"quiver": quiver_to_json(qp.quiver), "potential": potential_to_json(qp.potential)}))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_quiver_mutate_sl3(capsys, qp_file):
    code, out, _ = run(capsys, "quiver-mutate", qp_file((1, 2, 1)), "--word", "1")
    assert code == 0
    data = json.loads(out)
    assert sorted((a["t"], a["h"]) for a in data["quiver"]["arrows"]) == [(1, 2), (3, 1)]
    assert data["b_matrix"] == [[0], [1], [-1]]


def test_quiver_mutate_empty_word(capsys, qp_file):
    path = qp_file((1, 2, 1))
    code, out, _ = run(capsys, "quiver-mutate", path)
    assert code == 0
    assert json.loads(out)["quiver"] == json.load(open(path))["quiver"]


def test_quiver_mutate_frozen_index(capsys, qp_file):
    code, _, err = run(capsys, "quiver-mutate", qp_file((1, 2, 1)), "--word", "2")
    assert code == 2
    assert "not a mutable vertex" in err


def test_invalid_json_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "quiver-mutate", str(bad))[0] == 2


def test_qp_mutate(capsys, qp_file):
    code, out, _ = run(capsys, "qp-mutate", qp_file((1, 2, 1)), "--word", "1")
    assert code == 0
    assert len(json.loads(out)["potential"]) == 1


def test_rep_projective_and_mutate(capsys, qp_file):
    path = qp_file((1, 2, 1, 3, 2, 1))
    code, out, _ = run(capsys, "rep-projective", path, "--vertex", "1")
    assert code == 0
    rep = json.loads(out)
    code, out, _ = run(capsys, "rep-mutate", path, "--projective", "1", "--word", "1,2")
    assert code == 0
    assert set(json.loads(out)) == {"qp", "rep"}
    code, _, _ = run(capsys, "rep-projective", path, "--vertex", "9")
    assert code == 2
    assert rep["dims"][0] == 1


def test_lg_sl3(capsys):
    code, out, _ = run(capsys, "lg", "--word", "1,2,1", "--method", "all", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "AGREE"
    for method in ("chart", "fpoly", "paths"):
        assert f"W_2 [{method}] = X_2^{{-1}} + X_1^{{-1}}X_2^{{-1}}" in lines
        assert f"W_3 [{method}] = X_3^{{-1}}" in lines


def test_lg_n2(capsys):
    code, out, _ = run(capsys, "lg", "--word", "1")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "AGREE"
    assert [p["W"]["chart"]["text"] for p in data["potentials"]] == ["X_1^{-1}"]


def test_lg_sl5(capsys):
    code, out, _ = run(capsys, "lg", "--word", SL5_WORD)
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "AGREE"
    assert [p["frozen"] for p in data["potentials"]] == [7, 8, 9, 10]


def test_lg_quiver_file(capsys, qp_file):
    code, out, _ = run(capsys, "lg", "--quiver", qp_file((1, 2, 1)), "--format", "text")
    assert code == 0 and out.splitlines()[-1] == "AGREE"


def test_lg_depth_bound_exit_4(capsys):
    code, _, err = run(capsys, "lg", "--word", SL5_WORD, "--depth-max", "1")
    assert code == 4
    assert "within depth 1" in err


def test_bad_word_exit_2(capsys):
    assert run(capsys, "lg", "--word", "1,1,2")[0] == 2
    assert run(capsys, "lg", "--word", "1,x")[0] == 2
    assert run(capsys, "stringcone", "--word", "1,2")[0] == 2


def test_nonpositive_bound_exit_2(capsys):
    assert run(capsys, "lg", "--word", "1,2,1", "--d-max", "0")[0] == 2


def test_stringcone(capsys):
    code, out, _ = run(capsys, "stringcone", "--word", "1,2,1")
    data = json.loads(out)
    assert code == 0
    assert data["normals"] == [[0, 0, 1], [0, 1, -1], [1, 0, 0]]
    assert data["verdict"] == "AGREE"
    code, out, _ = run(capsys, "stringcone", "--word", "1", "--method", "gp")
    assert json.loads(out) == {"normals": [[1]]}


def test_stringcone_sl5_gp_equals_fpoly(capsys):
    _, gp, _ = run(capsys, "stringcone", "--word", "2,1,2,3,4,3,2,1,3,2", "--method", "gp")
    _, fp, _ = run(capsys, "stringcone", "--word", "2,1,2,3,4,3,2,1,3,2", "--method", "fpoly")
    assert json.loads(gp) == json.loads(fp)


def test_wiring(capsys):
    code, out, _ = run(capsys, "wiring", "--word", "1,2,1")
    data = json.loads(out)
    assert code == 0
    assert [c["wires"] for c in data["crossings"]] == [[1, 2], [1, 3], [2, 3]]
    code, out, _ = run(capsys, "wiring", "--word", "1,2,1", "--format", "text")
    # each crossing is drawn on both of its wires
    assert out.count("X") == 6


def test_output_is_deterministic_across_jobs(capsys):
    outs = set()
    for jobs in ("1", "2", "1", "2"):
        outs.add(run(capsys, "lg", "--word", "1,2,1,3,2,1", "--jobs", jobs, "--seed", "7")[1])
    assert len(outs) == 1


def test_module_entry_point_and_env_seed():
    env = {"QPC_SEED": "3", "PATH": ""}
    cmd = [sys.executable, "-m", "qpc", "stringcone", "--word", "1,2,1"]
    a = subprocess.run(cmd, capture_output=True, env=env)
    b = subprocess.run(cmd, capture_output=True, env=env)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_usage_error_exit_2(capsys):
    assert main(["no-such-command"]) == 2
