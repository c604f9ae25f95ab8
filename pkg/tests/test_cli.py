import json

import pytest

from chaincodes import zmod
from chaincodes.cli import main
from chaincodes.constructions import ToeplitzSpec
from chaincodes.conv import ConvCode, PolyMatrix
from chaincodes.linalg import RingMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture()
def golden(tmp_path):
    z121 = zmod(121)
    G = PolyMatrix(z121, [RingMatrix(z121, [[1, 2, 1], [11, 22, 11]]),
                          RingMatrix(z121, [[1, 3, 4], [11, 33, 44]])])
    paths = {}
    paths["code322"] = tmp_path / "z121_322.json"
    paths["code322"].write_text(json.dumps(ConvCode(z121, 3, G).to_json()))
    z11 = zmod(11)
    paths["t6"] = tmp_path / "t6_z11.json"
    paths["t6"].write_text(json.dumps(
        ToeplitzSpec(z11, (1, 2, 1, 1, 3, 4)).to_json()))
    Gf = PolyMatrix(z11, [RingMatrix(z11, [[1, 2, 1]]),
                          RingMatrix(z11, [[1, 3, 4]])])
    paths["field311"] = tmp_path / "f11_311.json"
    paths["field311"].write_text(json.dumps(ConvCode(z11, 3, Gf).to_json()))
    z4 = zmod(4)
    Gz = PolyMatrix(z4, [RingMatrix(z4, [[0, 0], [0, 0]]),
                         RingMatrix(z4, [[1, 1], [2, 2]])])
    paths["not_delay_free"] = tmp_path / "zz_stack.json"
    paths["not_delay_free"].write_text(
        json.dumps(ConvCode(z4, 2, Gz).to_json()))
    paths["matrix_z9"] = tmp_path / "m_z9.json"
    paths["matrix_z9"].write_text(
        json.dumps(RingMatrix(zmod(9), [[3, 3], [3, 6]]).to_json()))
    paths["dir"] = tmp_path
    return paths


def test_ring_report(capsys):
    code, doc = run(capsys, "ring", "--ring", "z8")
    assert code == 0
    assert doc["schema"].startswith("chaincodes-report/")
    assert doc["results"]["nu"] == 3
    assert doc["results"]["q"] == 2
    assert doc["results"]["transversal"] == [0, 1]


def test_ring_parse_variants(capsys):
    assert run(capsys, "ring", "--ring", "gr(2,3,3)")[1]["results"]["q"] == 8
    assert run(capsys, "ring", "--ring", "tp(4,2)")[1]["results"]["nu"] == 2
    assert run(capsys, "ring", "--ring", "f9")[1]["results"]["size"] == 9
    assert run(capsys, "ring", "--ring", "garbage")[0] == 2


def test_check_mdp_both(capsys, golden):
    code, doc = run(capsys, "check", "mdp", "--code",
                    str(golden["code322"]), "--method", "both")
    assert code == 0
    assert doc["results"]["mdp"] == {"minors": True, "distances": True}


def test_check_reverse_mdp(capsys, golden):
    code, doc = run(capsys, "check", "reverse-mdp", "--code",
                    str(golden["code322"]))
    assert code == 0
    assert doc["results"]["reverse-mdp"] == {"minors": True}


def test_check_delay_free_fails_with_exit_1(capsys, golden):
    code, doc = run(capsys, "check", "delay-free", "--code",
                    str(golden["not_delay_free"]))
    assert code == 1
    assert doc["results"]["delay-free"] is False


def test_check_precondition_exit_2(capsys, golden):
    # nu does not divide k for this torsion-row code
    z4 = zmod(4)
    G = PolyMatrix(z4, [RingMatrix(z4, [[2, 2]])])
    bad = golden["dir"] / "bad.json"
    bad.write_text(json.dumps(ConvCode(z4, 2, G).to_json()))
    code, doc = run(capsys, "check", "mdp", "--code", str(bad))
    assert code == 2
    assert "divide" in doc["results"]["error"]["message"]


def test_check_missing_file_exit_2(capsys):
    code, doc = run(capsys, "check", "mdp", "--code", "no-such-file.json")
    assert code == 2
    assert "error" in doc["results"]


def test_construct_superregular_matches_lift(capsys, golden):
    code, doc = run(capsys, "construct", "superregular",
                    "--matrix", str(golden["t6"]), "--n", "3", "--k", "1",
                    "--L", "1", "--ring", "z121", "--rows", "example")
    assert code == 0
    code2, doc2 = run(capsys, "construct", "lift",
                      "--field-code", str(golden["field311"]),
                      "--ring", "z121")
    assert code2 == 0
    assert doc["results"]["code"] == doc2["results"]["code"]
    assert doc["results"]["code"] == json.loads(
        golden["code322"].read_text())


def test_construct_pipes_into_check(capsys, golden, monkeypatch, tmp_path):
    code, doc = run(capsys, "construct", "binomial", "--n", "3", "--k", "1",
                    "--delta", "1", "--p", "7")
    assert code == 0
    assert doc["warnings"]  # 7 is below the sufficient field size
    report = tmp_path / "report.json"
    report.write_text(json.dumps(doc))
    # a whole report document is accepted wherever a code is expected
    code2, doc2 = run(capsys, "check", "reverse-mdp", "--code", str(report))
    assert code2 == 0
    assert doc2["results"]["reverse-mdp"] == {"minors": True}


def test_distances_report(capsys, golden):
    code, doc = run(capsys, "distances", "--code", str(golden["code322"]),
                    "--max-j", "1")
    assert code == 0
    res = doc["results"]
    assert res["profile"] == [3, 5]
    assert res["saturated"] == [True, True]
    assert res["L"] == 1


def test_distances_budget_exit_2(capsys, golden):
    code, doc = run(capsys, "distances", "--code", str(golden["code322"]),
                    "--max-j", "9", "--budget", "100000")
    assert code == 2
    assert doc["results"]["error"]["type"] == "BudgetExceeded"


def test_bounds_report(capsys):
    code, doc = run(capsys, "bounds", "--n", "3", "--k", "2",
                    "--delta", "2", "--nu", "2")
    assert code == 0
    res = doc["results"]
    assert res["L"] == 1
    assert res["column_distance_bounds"] == [3, 5]
    assert res["generalized_singleton"] == 6
    assert res["embedding_preserves_L"] is False


def test_blockcode_reports(capsys, golden):
    m = str(golden["matrix_z9"])
    code, doc = run(capsys, "blockcode", "shape", "--matrix", m)
    assert code == 0 and doc["results"]["shape"] == [0, 2]
    code, doc = run(capsys, "blockcode", "params", "--matrix", m)
    assert code == 0 and doc["results"]["parameters"] == [0, 2]
    code, doc = run(capsys, "blockcode", "standard-form", "--matrix", m)
    assert code == 0
    assert doc["results"]["standard_form"]["entries"] == [3, 0, 0, 3]
    code, doc = run(capsys, "blockcode", "mindist", "--matrix", m)
    assert code == 0
    assert doc["results"]["min_distance"] == 1
    assert doc["results"]["is_mds"] is False


def test_search_exhaustive(capsys):
    code, doc = run(capsys, "search", "superregular", "--ell", "2",
                    "--ring", "f2")
    assert code == 0
    assert doc["results"]["count"] == 1


def test_search_random_needs_seed(capsys):
    code, doc = run(capsys, "search", "superregular", "--ell", "3",
                    "--ring", "z11", "--strategy", "random")
    assert code == 2
    assert doc["results"]["error"]["type"] == "InvalidParams"


def test_search_random_deterministic(capsys):
    args = ("search", "superregular", "--ell", "3", "--ring", "z11",
            "--strategy", "random", "--seed", "1", "--budget", "60",
            "--reverse")
    _, doc1 = run(capsys, *args)
    _, doc2 = run(capsys, *args)
    assert doc1["results"]["hits"] == doc2["results"]["hits"]
    assert doc1["results"]["count"] == 36


def test_threads_flag_warns(capsys, golden):
    code, doc = run(capsys, "--threads", "4", "ring", "--ring", "z4")
    assert code == 0
    assert any("single-threaded" in w for w in doc["warnings"])
