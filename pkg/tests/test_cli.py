import json
import os
import subprocess
import sys

import pytest

from weightlab import slopes as sl
from weightlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_axioms_stupid_exits_zero(capsys):
    code, rep = run_json(capsys, "axioms", "--structure", "stupid", "--base", "vect", "--samples", "50", "--seed", "7")
    assert code == 0 and rep["ok"]
    assert [a["axiom"] for a in rep["axioms"]] == ["retract", "shift", "orthogonality", "decomposition"]


def test_axioms_quiver_base(capsys):
    code, rep = run_json(capsys, "axioms", "--base", "quiver", "--field", "fp:101", "--samples", "10")
    assert code == 0 and rep["ok"]


def test_corrupted_structure_exits_one_with_witness(capsys):
    code, rep = run_json(capsys, "axioms", "--structure", "corrupted", "--samples", "10")
    assert code == 1
    orth = next(a for a in rep["axioms"] if a["axiom"] == "orthogonality")
    assert orth["status"] == "violation" and orth["witness"]["hom_dim"] > 0


def test_counterexample(capsys):
    code, rep = run_json(capsys, "counterexample", "--alpha", "1/2")
    assert code == 0
    assert rep["certificate"]["slopes"] == {"alpha": "1/2", "beta": "1/2"}
    assert rep["oracle"]["decompositions_in_Cprime"] == 0
    # the printed witness re-verifies
    M = sl.SlopeObject.from_json(rep["object"])
    assert sl.no_decomposition_witness(M).verify() == []


def test_counterexample_third(capsys):
    code, rep = run_json(capsys, "counterexample", "--alpha", "1/3", "--beta", "4/3")
    assert code == 0 and rep["certificate"]["slopes"]["alpha"] == "1/3"


def test_counterexample_rejects_integral_slopes(capsys):
    code, rep = run_json(capsys, "counterexample", "--alpha", "1")
    assert code == 2 and "location" in rep


def test_k0_criterion(capsys):
    code, rep = run_json(capsys, "k0-criterion", "--scenario", "cprime", "--period", "2")
    assert code == 0 and rep["verdict"] == "no extension exists"
    assert rep["criterion"]["counterexample"] == ["1/2", "1/2"]
    assert rep["criterion"]["G"]["hnf"] == [["1", "1"], ["0", "2"]]
    code, rep = run_json(capsys, "k0-criterion", "--scenario", "c")
    assert code == 0 and rep["verdict"] == "no obstruction"


def test_k0_criterion_lattice_file(tmp_path, capsys):
    f = tmp_path / "lat.json"
    f.write_text(json.dumps({"G": [[1, 0], [0, 1], ["1/2", "1/2"]], "Kminus": [["1/2", 0]], "Kplus": [[0, "1/2"]]}))
    code, rep = run_json(capsys, "k0-criterion", "--scenario", str(f))
    assert code == 0 and rep["verdict"] == "no extension exists"


def test_pad_to_c(capsys):
    code, rep = run_json(capsys, "pad-to-c", "--alpha", "1/2", "--beta", "0")
    assert code == 0 and rep["ok"] and rep["padded_slopes"] == {"alpha": "1", "beta": "0"}


def test_pad_to_c_from_profile_file(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"profile": {"core": {"-2": 1}, "right": {"start": 3, "period": 2, "vals": [1, 0]}}}))
    code, rep = run_json(capsys, "pad-to-c", "--scenario", str(f))
    assert code == 0 and rep["input_slopes"]["alpha"] == "-1/2"


def test_negativity_and_construct(tmp_path, capsys):
    f = tmp_path / "gens.json"
    f.write_text(json.dumps({"generators": [{"terms": {"0": 1}}, {"terms": {"-1": 1}}]}))
    code, rep = run_json(capsys, "negativity", "--scenario", str(f))
    assert code == 1 and rep["witness"]["i"] == 1
    code, rep = run_json(capsys, "construct-w", "--scenario", str(f))
    assert code == 1 and rep["negative"] is False
    code, rep = run_json(capsys, "construct-w", "--samples", "3")
    assert code == 0 and rep["negative"] and len(rep["samples"]) == 3


def test_decompose_file(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"complex": {"terms": {"-1": 1, "0": 2}, "diff": {"-1": [[1], [0]]}}}))
    code, rep = run_json(capsys, "decompose", "--scenario", str(f), "--m", "0")
    assert code == 0
    d = rep["decompositions"][0]
    assert d["verification_failures"] == [] and d["X"]["terms"] == {"0": 1} and d["Y"]["terms"] == {}


@pytest.mark.parametrize("cmd", ["heart", "retract-tower", "combine"])
def test_sampled_commands(capsys, cmd):
    code, rep = run_json(capsys, cmd, "--base", "quiver", "--samples", "4")
    assert code == 0


def test_malformed_json_reports_location(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"complex": {"terms": {"0": 1,}}}')
    code, rep = run_json(capsys, "decompose", "--scenario", str(f))
    assert code == 2 and rep["location"].startswith(str(f) + ":1:")


def test_invalid_complex_reports_location(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"complex": {"terms": {"0": 1, "1": 1, "2": 1}, "diff": {"0": [[1]], "1": [[1]]}}}))
    code, rep = run_json(capsys, "decompose", "--scenario", str(f))
    assert code == 2 and "complex" in rep["location"]


def test_missing_file_and_bad_flags(capsys):
    code, rep = run_json(capsys, "decompose", "--scenario", "/nonexistent.json")
    assert code == 2
    code, rep = run_json(capsys, "axioms", "--field", "fp:8")
    assert code == 2 and rep["location"] == "--field"
    code, _ = run(capsys, "frobnicate")
    assert code == 2


def test_reports_are_byte_identical(capsys):
    a = run(capsys, "axioms", "--base", "quiver", "--samples", "15", "--seed", "3")
    b = run(capsys, "axioms", "--base", "quiver", "--samples", "15", "--seed", "3")
    assert a == b


def test_pretty_output(capsys):
    code, out = run(capsys, "k0-criterion", "--scenario", "cprime", "--pretty")
    assert code == 0 and "verdict" in out and "no extension exists" in out
    assert not out.lstrip().startswith("{")


def test_mutation_self_test_reports_failures(capsys):
    code, rep = run_json(capsys, "self-test", "--mutate")
    assert code == 1 and rep["detected"] and rep["triangle_failures"] > 0
    # the convention is restored afterwards
    code, rep = run_json(capsys, "combine", "--samples", "3")
    assert code == 0


def test_empty_environment_gives_identical_output(capsys):
    args = ["counterexample", "--alpha", "1/2"]
    _, here = run(capsys, *args)
    env = {"PATH": os.environ.get("PATH", "/usr/bin")}
    out = subprocess.run([sys.executable, "-m", "weightlab.cli", *args], env=env, capture_output=True, text=True,
                         check=True).stdout
    assert out == here
