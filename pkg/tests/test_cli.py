import json
import subprocess
import sys

import pytest

from gkmtools.catalog import fig3
from gkmtools.cli import main, run
from gkmtools.io import dumps, graph_to_dict


def structured(argv):
    code, rep = run(argv + ["--format", "structured"])
    return code, rep.as_dict()


def test_validate_examples():
    code, rep = structured(["validate", "--catalog", "fig3"])
    assert code == 0 and rep["data"]["gkm_level"] == 3
    code, rep = structured(["validate", "--catalog", "flag_su3"])
    assert code == 0 and rep["data"]["gkm_level"] == 2


def test_malformed_edge_list(tmp_path, capsys):
    doc = graph_to_dict(fig3())
    doc["edges"][4] = [1, 2]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["validate", "--input", str(path)]) == 2
    assert "edge 4" in capsys.readouterr().err


def test_input_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(dumps(graph_to_dict(fig3())))
    code, rep = structured(["cohom", "--input", str(path), "-D", "4"])
    assert code == 0 and rep["data"]["hilbert"] == [1, 3, 12]


def test_cohom_examples():
    code, rep = structured(["cohom", "--catalog", "fig3", "-D", "6"])
    assert code == 0
    assert rep["data"]["hilbert"][:2] == [1, 3]
    assert rep["data"]["freeness"].startswith("not-free")
    assert rep["data"]["witness"]["relation"]
    code, rep = structured(["cohom", "--catalog", "cpn_torus:3", "-D", "6"])
    assert rep["data"]["freeness"] == "free-up-to-6"
    assert rep["data"]["quotient_dims"] == [1, 1, 1, 1]
    code, rep = structured(["cohom", "--catalog", "fig3", "-D", "0"])
    assert rep["data"]["hilbert"] == [1]


@pytest.mark.parametrize("mode", ["rational", "integer"])
def test_demo_counterexample(mode):
    code, rep = structured(["demo-counterexample", "--mode", mode])
    assert code == 0 and rep["status"] == "pass"
    assert set(rep["checks"]) == {"degree2_dimensions", "restriction_not_surjective",
                                  "thom_classes", "signed_relation", "not_free"}
    assert all(rep["checks"].values())


def test_demo_counterexample_modes_agree():
    a = structured(["demo-counterexample", "--mode", "rational"])[1]
    b = structured(["demo-counterexample", "--mode", "integer"])[1]
    assert a["checks"] == b["checks"]


def test_demo_counterexample_identity():
    code, rep = structured(["demo-counterexample", "--identity-p"])
    assert rep["status"] == "hypothesis changed"
    assert rep["checks"] == {"surjective_with_identity": True}


def test_demo_theorem1():
    code, rep = structured(["demo-theorem1", "-D", "12"])
    assert code == 0 and all(rep["checks"].values())
    code, rep = structured(["demo-theorem1", "--identity-p", "-D", "6"])
    assert code == 0
    code, rep = structured(["demo-theorem1", "--source", "flag_su3", "--target", "fig3",
                            "--projection", "[[1,0,1],[0,1,1]]"])
    assert code == 1 and rep["status"] == "hypothesis violated"


def test_other_commands():
    code, rep = structured(["lift", "--catalog", "fig3"])
    assert code == 0 and rep["checks"]["tgraph_valid"] and rep["checks"]["characteristic_round_trip"]
    code, rep = structured(["facering", "--catalog", "cpn_torus:3", "--check-iso", "-D", "8"])
    assert code == 0 and rep["checks"]["facemap_iso"]
    code, rep = structured(["extend", "--catalog", "flag_su3", "--rank", "3", "--bound", "1"])
    assert code == 0 and rep["data"]["solutions"] >= 1
    code, rep = structured(["faces", "--catalog", "fig3"])
    assert code == 0 and rep["data"]["rank_profile"] == [6, 9, 3, 1]
    code, rep = structured(["abfp", "--catalog", "cpn_torus:3", "-D", "4"])
    assert code == 0 and all(rep["checks"].values())


def test_failure_exit_code():
    # flag_su3 has rank 2 < valence 3, so there is nothing to lift
    code, rep = structured(["lift", "--catalog", "flag_su3"])
    assert code == 1 and rep["checks"] == {"completed": False}
    assert "not a torus graph" in rep["data"]["error"]


@pytest.mark.parametrize("argv", [["validate"], ["validate", "--catalog", "fig3", "--input", "x"],
                                  ["cohom", "--catalog", "nope"],
                                  ["cohom", "--catalog", "fig3", "-D", "3"], ["bogus"]])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_structured_output_is_deterministic():
    argv = [sys.executable, "-m", "gkmtools", "demo-counterexample", "--format", "structured",
            "--seed", "5"]
    outs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["command"] == "demo-counterexample"


def test_jobs_do_not_change_results():
    a = structured(["cohom", "--catalog", "fig3", "-D", "6", "--jobs", "1"])[1]
    b = structured(["cohom", "--catalog", "fig3", "-D", "6", "--jobs", "2"])[1]
    a["config"].pop("jobs")
    b["config"].pop("jobs")
    assert a == b


def test_validate_reports_both_effectivity_readings(tmp_path):
    doc = graph_to_dict(fig3().transform([[2, 0, 0], [0, 2, 0], [0, 0, 2]]))
    path = tmp_path / "doubled.json"
    path.write_text(json.dumps(doc))
    code, rep = structured(["validate", "--input", str(path)])
    assert rep["data"]["effective_span"] == {"rational": True, "integer": False}
    assert code == 0
    code, rep = structured(["validate", "--input", str(path), "--mode", "integer"])
    assert code == 1
