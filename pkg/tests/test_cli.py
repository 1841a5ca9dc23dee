import json

import pytest

from wedgecalc.algebra import Decomposition
from wedgecalc.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def worked_path(fixtures_dir):
    return fixtures_dir / "worked.json"


@pytest.fixture
def square_path(fixtures_dir):
    return fixtures_dir / "square.json"


def test_decompose_trace(capsys, worked_path):
    code, out, _ = run(capsys, "decompose", worked_path, "--trace")
    assert code == 0
    lines = out.splitlines()
    steps = [l for l in lines if l.startswith("Step")]
    assert [s.split()[0:2] for s in steps] == [["Step", "1"], ["Step", "2"], ["Step", "3"]]
    assert "adjoin-face (2,3)" in steps[1] and "adjoin-face (2,4)" in steps[2]
    assert "  state:  Σ X2∧X4 ∨ Σ X3∧X4 ∨ Σ^2 X1∧X2∧X3 ∨ Σ X2∧X3∧X4 ∨ Σ^2 X1∧X2∧X3∧X4" in lines
    assert lines[-1] == "Σ X3∧X4 ∨ Σ^2 X1∧X2∧X3 ∨ Σ^2 X1∧X2∧X4 ∨ 2·Σ^2 X1∧X2∧X3∧X4"


def test_decompose_output_is_stable(capsys, worked_path):
    first = run(capsys, "decompose", worked_path, "--trace", "--format", "json")
    second = run(capsys, "decompose", worked_path, "--trace", "--format", "json")
    assert first == second


def test_json_round_trip(capsys, worked_path):
    code, out, _ = run(capsys, "decompose", worked_path, "--format", "json", "--check-bbcg")
    data = json.loads(out)
    assert code == 0 and data["bbcg"] == {"agree": True}
    d = Decomposition.from_json(data["decomposition"])
    assert json.loads(json.dumps(d.to_json())) == data["decomposition"]


def test_square_search(capsys, square_path):
    code, out, _ = run(capsys, "check-shifted", square_path, "--search")
    assert code == 0 and out.strip() == "not shifted under any of 24 orders"


def test_check_shifted_witness(capsys, square_path, worked_path):
    code, out, _ = run(capsys, "check-shifted", square_path, "--format", "json")
    assert json.loads(out)["witness"] == {"sigma": [1, 4], "nu": 4, "nu_prime": 3}
    code, out, _ = run(capsys, "check-shifted", worked_path, "--order", "1,2,3,4")
    assert out.strip() == "shifted under order 1,2,3,4"


def test_square_decompose_fails(capsys, square_path):
    code, out, err = run(capsys, "decompose", square_path)
    assert code == 1
    assert err.startswith("error: NotShifted")
    assert "bbcg" in err
    code, out, _ = run(capsys, "decompose", square_path, "--format", "json")
    obj = json.loads(out)
    assert obj["error"] == "NotShifted" and "hint" in obj["payload"]


def test_bbcg_and_homology(capsys, square_path):
    code, out, _ = run(capsys, "bbcg", square_path, "--show-subcomplexes", "--format", "json")
    data = json.loads(out)
    assert data["validity"] == "suspended-only"
    assert len(data["subcomplexes"]) == 7
    code, out, _ = run(capsys, "homology", square_path)
    assert out.strip() == "H~_1 = Z^1"


def test_glue_and_wedge(capsys, tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("1 2\n1 3\n2 3\n")
    b.write_text("1 2\n1 4\n2 4\n")
    code, out, _ = run(capsys, "glue-decompose", a, b, "--tau", "1,2", "--check-bbcg")
    assert code == 0
    assert out.splitlines()[0] == "Σ X3∧X4 ∨ Σ^2 X1∧X2∧X3 ∨ Σ^2 X1∧X2∧X4 ∨ 2·Σ^2 X1∧X2∧X3∧X4"
    inline = '{"vertices":[1,2,3,4],"maximal_faces":[[1,2],[1,3],[4]]}'
    code, out, _ = run(capsys, "wedge-decompose", "--inline", inline, "--J", "1,1,1,2", "--check-bbcg")
    assert code == 0 and "bbcg: agrees" in out


def test_skeleton(capsys):
    code, out, _ = run(capsys, "skeleton", "--n", 5, "--k", 1)
    assert code == 0 and out.strip().endswith("closed form: agrees")
    code, _, err = run(capsys, "skeleton", "--n", 3, "--k", 2)
    assert code == 1 and "KOutOfRange" in err


def test_moment_angle_and_specialize(capsys, worked_path, square_path, tmp_path):
    code, out, _ = run(capsys, "moment-angle", worked_path, "--format", "json")
    assert json.loads(out) == {
        "spheres": [{"dim": 3, "mult": 1}, {"dim": 5, "mult": 2}, {"dim": 6, "mult": 2}],
        "poincare": "1+t^3+2t^5+2t^6",
        "validity": "exact",
    }
    code, _, err = run(capsys, "moment-angle", square_path)
    assert code == 1 and "SuspendedOnlyNotAcknowledged" in err
    code, out, _ = run(capsys, "moment-angle", square_path, "--suspended-only-ack")
    assert code == 0 and "validity: suspended-only" in out

    dec = tmp_path / "d.json"
    dec.write_text(json.dumps([{"suspension": 1, "indices": [1, 2], "multiplicity": 1}]))
    code, out, _ = run(capsys, "specialize", dec, "--dims", "2,3", "--format", "json")
    assert json.loads(out)["spheres"] == [{"dim": 6, "mult": 1}]
    code, out, _ = run(capsys, "specialize", worked_path, "--dims", "1,1,1,1")
    assert "poincare: 1+t^3+2t^5+2t^6" in out
    code, _, err = run(capsys, "specialize", dec, "--dims", "2")
    assert code == 1 and "MissingDimension" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", 5)
    assert code == 0 and out.strip().endswith("all agree")
    assert "n=5: 92 shifted complexes, 0 mismatches" in out


def test_error_codes(capsys, tmp_path, worked_path):
    code, _, err = run(capsys, "nonsense")
    assert code == 2 and "UnknownSubcommand" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"maximal_faces": [[2, 1]]}')
    code, _, err = run(capsys, "decompose", bad)
    assert code == 2 and "ParseError" in err
    code, _, err = run(capsys, "decompose", tmp_path / "missing.json")
    assert code == 2
    code, _, err = run(capsys, "decompose", worked_path, "--inline", "1 2")
    assert code == 2
    code, _, err = run(capsys, "decompose", "--bogus-flag", worked_path)
    assert code == 2
    code, out, _ = run(capsys, "decompose", "--inline", "1 2 2", "--format", "json")
    assert code == 2 and json.loads(out)["error"] == "ParseError"


def test_env_cap(capsys, monkeypatch, worked_path):
    monkeypatch.setenv("WEDGECALC_MAX_VERTICES", "3")
    code, _, err = run(capsys, "bbcg", worked_path)
    assert code == 1 and "TooManyVertices" in err
    code, _, _ = run(capsys, "bbcg", worked_path, "--max-vertices", "4")
    assert code == 0


def test_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("1 2\n2 3\n1 3\n"))
    code, out, _ = run(capsys, "decompose", "-")
    assert code == 0 and out.strip() == "Σ^2 X1∧X2∧X3"
