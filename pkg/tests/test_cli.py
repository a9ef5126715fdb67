import json

import pytest

from delsarte.batch import BatchConfig, random_unimodular
from delsarte.cli import main
from delsarte.linalg import IntMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_fermat(capsys):
    code, out, _ = run(capsys, "analyze", "--fermat", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["torsion_T"] == [] and data["rank_K"] == {"formula": 24, "snf": 24}
    assert data["pi1"]["order"] == 1
    assert list(data) == sorted(data)


def test_analyze_matrix(capsys):
    code, out, _ = run(capsys, "analyze", "--matrix", "diag(2,9,9)*[[−4,2,1],[−3,1,0],[1,0,1]]", "--json")
    data = json.loads(out)
    assert (code, data["pi1"]["order"], data["torsion_T"]) == (0, 3, [3, 3, 3, 3, 3, 3, 9])


def test_analyze_diagonal_and_bounds(capsys):
    code, out, _ = run(capsys, "analyze", "--diagonal", "4,6,12", "--json", "--all-permutation-bounds")
    data = json.loads(out)
    assert data["torsion_T"] == [6]
    assert len(data["bounds"]["all"]) == 24


def test_analyze_cyclic_and_human(capsys):
    code, out, _ = run(capsys, "analyze", "--cyclic", "12:3,7,5,9")
    assert code == 0 and "cyclic check  ok" in out


def test_deterministic(capsys):
    a = run(capsys, "analyze", "--diagonal", "2,4,4", "--json")[1]
    b = run(capsys, "analyze", "--diagonal", "2,4,4", "--json")[1]
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--matrix", "[[1,2],[3,4]]"],
        ["analyze", "--matrix", "[[1,2,3],[2,4,6],[1,1,1]]"],
        ["analyze", "--cyclic", "4:1,1,1,2"],
        ["analyze", "--cyclic", "4-1,1,1,1"],
        ["analyze", "--diagonal", "2,x,4"],
        ["analyze", "--exponent", "[[1,1,1,0],[0,1,1,1],[1,0,1,1],[1,1,0,-1]]"],
        ["analyze", "--fermat", "0"],
        ["analyze"],
        ["nonsense"],
    ],
)
def test_validation_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_paper_examples_pass(capsys):
    code, out, _ = run(capsys, "paper-examples")
    assert code == 0
    assert "FAIL" not in out


def test_paper_examples_mismatch_exit(capsys, monkeypatch):
    import delsarte.paper_examples as pe

    bad = pe.GoldenQuotient("tampered", (1, 8, 8), ((0, 3, 1), (1, 0, 0), (0, 1, 0)), 1, (2, 4))
    monkeypatch.setattr(pe, "GOLDEN", (bad,))
    monkeypatch.setattr(pe, "DIAGONAL", ())
    code, out, _ = run(capsys, "paper-examples")
    assert code == 3 and "FAIL" in out


def test_internal_assertion_exit(capsys, monkeypatch):
    import delsarte.cli as cli

    def boom(*a, **k):
        raise AssertionError("engine fault")

    monkeypatch.setattr(cli, "analyze", boom)
    code, _, err = run(capsys, "analyze", "--fermat", "2")
    assert code == 4 and "engine fault" in err


def test_batch_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (a, b):
        code, _, _ = run(capsys, "batch", "--seed", "7", "--count", "5", "--diag", "1,4,4", "--bound", "3", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert len(lines) == 6
    assert [json.loads(x)["index"] for x in lines[:5]] == list(range(5))
    assert "summary" in json.loads(lines[-1])


def test_batch_trivial(tmp_path, capsys):
    out = tmp_path / "t.jsonl"
    run(capsys, "batch", "--seed", "1", "--count", "1", "--diag", "1,1,1", "--bound", "3", "--out", str(out))
    report = json.loads(out.read_text().splitlines()[0])
    assert report["torsion_T"] == [] and report["group"]["order"] == 1


def test_batch_parallel_same_output(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "batch", "--seed", "3", "--count", "4", "--diag", "1,2,4", "--bound", "2", "--out", str(a))
    run(capsys, "batch", "--seed", "3", "--count", "4", "--diag", "1,2,4", "--bound", "2", "--out", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes()


def test_random_unimodular():
    import random

    rng = random.Random(0)
    for _ in range(50):
        assert abs(IntMatrix(random_unimodular(rng, 3)).det()) == 1


def test_batch_config_validation():
    with pytest.raises(ValueError):
        BatchConfig(seed=1, count=0, diag=(1, 1, 1))
    with pytest.raises(ValueError):
        BatchConfig(seed=1, count=1, diag=(1, 1, 1), bound=0)
