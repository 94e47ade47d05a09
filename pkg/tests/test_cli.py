import json
import subprocess
import sys

import pytest

from flagpos.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def flag_file(tmp_path):
    def write(obj, name="flag.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return write


EXAMPLE_FLAG = {"n": 4, "K": [1, 3], "rep": [["1", "0", "0"], ["1", "1", "0"], ["2", "0", "1"], ["3", "4", "5"]]}
FL3 = {"n": 3, "K": [1, 2], "rep": [[1, 0, 0], [2, 1, 0], [1, 1, 1]]}
GR24 = {"n": 4, "K": [2], "rep": [[1, 0], [1, 1], [0, 1], [-1, 1]]}


def test_pluecker_example(capsys, flag_file):
    code, out, _ = run(capsys, "pluecker", flag_file(EXAMPLE_FLAG))
    assert code == 0
    rep = json.loads(out)
    assert rep["plucker"]["1"] == {"1": "1", "2": "1", "3": "2", "4": "3"}
    assert rep["plucker"]["3"] == {"1,2,3": "1", "1,2,4": "5", "1,3,4": "-4", "2,3,4": "-11"}


def test_pluecker_identity(capsys, flag_file):
    code, out, _ = run(capsys, "pluecker", flag_file({"n": 3, "K": [1, 2], "rep": [[1, 0], [0, 1], [0, 0]]}))
    rep = json.loads(out)
    assert rep["plucker"]["1"]["1"] == "1" and rep["plucker"]["2"]["1,2"] == "1"
    assert rep["class"] == "PLUCKER_NONNEG_NOT_POSITIVE"


def test_pluecker_malformed(capsys, flag_file, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "pluecker", str(bad))[0] == 2
    assert run(capsys, "pluecker", flag_file({"n": 2}))[0] == 2
    assert run(capsys, "pluecker", str(tmp_path / "missing.json"))[0] == 2


def test_counterexample_round_trip(capsys, flag_file):
    code, out, _ = run(capsys, "counterexample", "converse", "--n", "4", "--K", "1,3")
    assert code == 0
    flag = json.loads(out)["flag"]
    code, out, _ = run(capsys, "pluecker", flag_file(flag))
    assert json.loads(out)["class"] == "PLUCKER_NONNEG_NOT_POSITIVE"
    code, out, _ = run(capsys, "classify", flag_file(flag))
    assert json.loads(out)["lusztig"] == "NOT_TNN_WITH_CERTIFICATE"
    assert run(capsys, "witness", flag_file(flag))[0] == 5


def test_witness_examples(capsys, flag_file):
    code, out, _ = run(capsys, "witness", flag_file(FL3))
    assert code == 0 and json.loads(out)["verified"] is True
    code, out, _ = run(capsys, "witness", flag_file(GR24))
    assert code == 0 and json.loads(out)["verified"] is True
    code, out, _ = run(capsys, "witness", flag_file(FL3), "--t", "1/2")
    assert code == 0 and json.loads(out)["witness"][0] == ["1/4", "1/2", "1/4"]
    assert run(capsys, "witness", flag_file(FL3), "--t", "abc")[0] == 2


def test_witness_non_interval(capsys, flag_file):
    # Plücker positive at orders 1 and 3 but K is not an interval
    tp = {"n": 4, "K": [1, 3], "rep": [[1, 1, 1], [1, 2, 3], [1, 3, 6], [1, 4, 10]]}
    assert run(capsys, "witness", flag_file(tp))[0] == 4


def test_complete_and_shift(capsys, flag_file):
    code, out, _ = run(capsys, "complete", flag_file(GR24))
    assert code == 0 and json.loads(out)["K"] == [1, 2, 3]
    code, out, _ = run(capsys, "shift", flag_file(GR24), "--eps", "0")
    assert code == 0 and json.loads(out)["rep"][3] == ["-1/1", "0/1"]
    assert run(capsys, "shift", flag_file(GR24))[0] == 2


def test_verify_decompositions(capsys):
    code, out, _ = run(capsys, "verify", "decompositions", "--n", "4", "--K", "1,3")
    rep = json.loads(out)
    assert code == 0 and rep["result"] == "PASS"
    check = rep["checks"][0]
    assert check["injective"] is False
    assert [[[1, 2, 3, 4], [4, 2, 3, 1]], [[1, 3, 2, 4], [4, 2, 3, 1]]] in check["collisions"]


def test_verify_converse_and_cyclic(capsys):
    code, out, _ = run(capsys, "verify", "converse", "--n", "4", "--K", "1,3")
    assert code == 0 and all(c["result"] == "PASS" for c in json.loads(out)["checks"])
    code, out, _ = run(capsys, "verify", "cyclic", "--n", "5", "--K", "2,4")
    assert code == 0 and len(json.loads(out)["checks"]) == 4
    assert run(capsys, "verify", "converse", "--n", "4", "--K", "1,2")[0] == 2


def test_verify_minkowski_all(capsys):
    code, out, _ = run(capsys, "verify", "minkowski", "--n", "4", "--K", "all", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "check,result" and len(lines) == 1 + 7
    assert all(line.endswith("PASS") for line in lines[1:])


def test_resource_bound(capsys, monkeypatch):
    assert run(capsys, "verify", "decompositions", "--n", "6", "--K", "2")[0] == 3
    assert run(capsys, "strata", "--n", "6", "--K", "2")[0] == 3
    monkeypatch.setenv("FLAGPOS_MAX_N", "3")
    assert run(capsys, "strata", "--n", "4", "--K", "2")[0] == 3


def test_strata_csv(capsys):
    code, out, _ = run(capsys, "strata", "--n", "4", "--K", "1,3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,K,cell_count,stratum_count,injective,collisions",
                                "4,1 3,85,84,False,1"]


def test_bip(capsys):
    code, out, _ = run(capsys, "bip", "--n", "4", "--K", "1,3", "--v", "1234", "--w", "4231")
    rep = json.loads(out)
    assert code == 0 and rep["minkowski_check"] is True
    assert [t["cell"] for t in rep["minkowski_terms"]] == [[[1, 2, 3, 4], [4, 1, 2, 3]],
                                                          [[1, 2, 3, 4], [2, 3, 4, 1]]]
    assert run(capsys, "bip", "--n", "4", "--K", "2", "--v", "1234", "--w", "4231")[0] == 2


def test_bad_arguments(capsys):
    assert run(capsys, "strata", "--n", "4", "--K", "5")[0] == 2
    assert run(capsys, "strata", "--n", "4", "--K", "a,b")[0] == 2
    assert run(capsys, "pluecker", "x.json", "--format", "csv")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert run(capsys, "strata", "--n", "3", "--K", "1", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["injective"] is True


def test_deterministic_output(tmp_path):
    argv = [sys.executable, "-m", "flagpos", "verify", "minkowski", "--n", "4", "--trials", "20", "--seed", "7"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and b"PASS" in a
