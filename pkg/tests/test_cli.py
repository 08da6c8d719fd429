import json
import subprocess
import sys
from pathlib import Path

import pytest

from torusfilt.cli import parse_vector, parse_vectors, run
from torusfilt.errors import InputError

INPUTS = Path(__file__).resolve().parent.parent / "inputs"
P2_FAN = "ray 1: 1 0\nray 2: 0 1\nray 3: -1 -1\ncone: 1 2\ncone: 2 3\ncone: 1 3\n"
P1xP1_FAN = "ray 1: 1 0\nray 2: 0 1\nray 3: -1 0\nray 4: 0 -1\ncone: 1 2\ncone: 2 3\ncone: 3 4\ncone: 4 1\n"


@pytest.fixture
def p2_fan(tmp_path):
    path = tmp_path / "p2.fan"
    path.write_text(P2_FAN)
    return str(path)


def test_parse_vector():
    assert parse_vector("0, 1/2,-3", "--s") == (0, 0.5, -3)
    assert parse_vectors("1,0,0;0,1,0", "--lambdas") == ((1, 0, 0), (0, 1, 0))
    with pytest.raises(InputError, match="--s"):
        parse_vector("1,x", "--s")
    with pytest.raises(InputError):
        parse_vector("", "--s")


def test_flag_regular(capsys, tmp_path):
    out = tmp_path / "a2.json"
    assert run(["flag", "--family", "A", "--rank", "2", "--s", "0,1,3", "--out", str(out)]) == 0
    assert "gr_dims: (1, 2, 2, 1)" in capsys.readouterr().out
    doc = json.loads(out.read_text())
    assert doc["overall"] == "PASS"
    assert doc["sections"]["profile"]["gr_dims"] == [1, 2, 2, 1]
    assert doc["job"]["s"] == ["0/1", "1/1", "3/1"]


def test_flag_nonregular_without_t(capsys):
    assert run(["flag", "--family", "A", "--rank", "2", "--s", "1,1,0"]) == 2
    assert "non-regular s requires t" in capsys.readouterr().err


def test_flag_nonregular_with_t_and_lambdas(capsys):
    code = run(["flag", "--family", "A", "--rank", "2", "--s", "1,1,0", "--t", "0,1,3", "--lambdas", "1,0,0;0,1,0", "--json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["sections"]["profile"]["gr_dims"] == [1, 2, 2, 1]
    assert len(doc["sections"]["chern"]["elements"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["flag", "--family", "Q", "--rank", "2", "--s", "1,2,3"],
        ["flag", "--family", "A", "--rank", "2", "--s", "1,2"],
        ["flag", "--family", "A", "--rank", "2", "--s", "1,x,3"],
        ["flag", "--family", "A", "--rank", "2", "--s", "1,1,0", "--t", "0,0,1"],
        ["flag", "--family", "A", "--rank", "2"],
        ["toric", "--fan", "/nonexistent/p2.fan", "--polytope", "0,0,1"],
        ["verify", "bogus"],
        [],
    ],
)
def test_input_errors_exit_2(argv):
    assert run(argv) == 2


def test_toric_p2(p2_fan, capsys):
    assert run(["toric", "--fan", p2_fan, "--polytope", "0,0,1", "--gamma", "1,2"]) == 0
    assert "gr_dims: (1, 1, 1)" in capsys.readouterr().out


def test_toric_rejections_exit_2(p2_fan, tmp_path, capsys):
    assert run(["toric", "--fan", p2_fan, "--polytope", "0,0,1", "--gamma", "1,1"]) == 2
    assert "gamma rejected" in capsys.readouterr().err
    assert run(["toric", "--fan", p2_fan]) == 2
    bad = tmp_path / "bad.fan"
    bad.write_text("ray 1: 1 0\nray 2: 0 1\nray 3: -1 -1\ncone: 1 2\ncone: 2 3\n")
    assert run(["toric", "--fan", str(bad), "--polytope", "0,0,1"]) == 2
    assert "facet" in capsys.readouterr().err


def test_failing_check_exits_1(tmp_path, capsys):
    fan = tmp_path / "p1xp1.fan"
    fan.write_text(P1xP1_FAN)
    # one polytope cannot span H^2 of P1 x P1: the points embed but lie on a line
    assert run(["toric", "--fan", str(fan), "--polytope", "0,0,1,1"]) == 1
    assert "overall: FAIL" in capsys.readouterr().out


def test_verify_suites(capsys):
    assert run(["verify", "coinvariant"]) == 0
    out = capsys.readouterr().out
    assert "root_system=A2, hilbert=(1, 2, 2, 1), length_distribution=(1, 2, 2, 1)" in out
    assert run(["verify", "all"]) == 0


def test_reports_are_byte_identical(tmp_path, p2_fan):
    for k in range(2):
        assert run(["flag", "--family", "B", "--rank", "2", "--s", "1,0", "--t", "1,2", "--out", str(tmp_path / f"f{k}.json")]) == 0
        assert run(["toric", "--fan", p2_fan, "--polytope", "0,0,1", "--out", str(tmp_path / f"t{k}.json")]) == 0
    assert (tmp_path / "f0.json").read_bytes() == (tmp_path / "f1.json").read_bytes()
    assert (tmp_path / "t0.json").read_bytes() == (tmp_path / "t1.json").read_bytes()


def test_job_files(tmp_path, capsys):
    assert run(["job", str(INPUTS / "flag_a2_nonregular.json")]) == 0
    assert run(["job", str(INPUTS / "toric_h1.json")]) == 0
    job = tmp_path / "job.json"
    out = tmp_path / "report.json"
    job.write_text(json.dumps({"kind": "toric", "fan": {"rays": [[1, 0], [0, 1], [-1, -1]], "cones": [[0, 1], [1, 2], [0, 2]]},
                               "polytopes": [[0, 0, 1]], "gamma": [1, 2], "out": str(out)}))
    assert run(["job", str(job)]) == 0
    assert json.loads(out.read_text())["sections"]["profile"]["gr_dims"] == [1, 1, 1]
    job.write_text(json.dumps({"kind": "flag", "family": "A", "rank": 2}))
    assert run(["job", str(job)]) == 2
    assert "'s'" in capsys.readouterr().err
    job.write_text("{not json")
    assert run(["job", str(job)]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "torusfilt", "flag", "--family", "A", "--rank", "2", "--s", "0,1,3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "overall: PASS" in proc.stdout
