import json
import os
import subprocess

import pytest

import q2seg

CLI = os.environ.get("Q2SEG_CLI")


def run_cli(*args):
    out = subprocess.run([CLI, *args], capture_output=True, text=True)
    return out.returncode, out.stdout


def test_broken_pairs_of_the_square():
    pairs = [(a, b) for a in range(4) for b in range(a + 1, 4) if q2seg.is_broken([a, b], 3)]
    assert pairs == [(0, 2), (1, 3)]
    assert q2seg.two_segal_horns(3) == [[0, 2], [1, 3]]


def test_triangulation_counts_are_catalan():
    assert [len(q2seg.triangulations(n)) for n in range(2, 7)] == [1, 2, 5, 14, 42]
    for tris in q2seg.triangulations(5):
        assert len(q2seg.extreme_vertices(5, tris)) >= 2


def test_certificate_round_trip():
    cert = q2seg.certify({"shape": "genhorn", "n": 4, "missing": [1, 3, 4]})
    assert cert["schema"] == "cert/1"
    assert q2seg.verify(cert)["accepted"]


def test_nerve_passes_and_horn_fails():
    assert q2seg.check("quasi2segal", "s3", 4, seed=1, samples=5)["failures"] == []
    assert q2seg.check("quasi2segal", "genhorn:3:0,2", 3)["failures"]


def test_shape_and_errors():
    s = q2seg.shape({"shape": "genhorn", "n": 3, "missing": [0, 2]})
    assert s["sub"]["schema"] == "ssetjson/1"
    assert len(s["inclusion"]["assignment"]) == len(s["sub"]["cells"])
    with pytest.raises(ValueError):
        q2seg.certify({"shape": "genhorn", "n": 4, "missing": [0, 1, 2]})


def test_counterexample_reproduces():
    assert q2seg.counterexample()["reproduces"]


@pytest.mark.skipif(not CLI, reason="CLI path not given")
def test_cli_agrees_with_module():
    code, out = run_cli("triangulations", "--n", "6", "--count-only")
    assert code == 0 and json.loads(out) == {"count": len(q2seg.triangulations(6))}

    code, out = run_cli("--seed", "5", "--mode", "sample=4", "check", "--property", "quasi2segal",
                        "--example", "cyclic:3", "--cap", "4")
    assert code == 0
    assert json.loads(out) == q2seg.check("quasi2segal", "cyclic:3", 4, seed=5, samples=4)

    code, out = run_cli("certify", "--genhorn", "5", "--missing", "0,2,4")
    assert code == 0
    assert json.loads(out) == q2seg.certify({"shape": "genhorn", "n": 5, "missing": [0, 2, 4]})

    code, out = run_cli("counterexample")
    assert code == 0 and json.loads(out) == q2seg.counterexample()
