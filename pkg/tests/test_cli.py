import json

import pytest

from mvseq.acceptance import data_path
from mvseq.cli import main

GAMMA = str(data_path("ex2.gamma"))
PROOF = str(data_path("ex2_proof.json"))
GODEL = str(data_path("godel3.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_axioms_middle_pair(capsys):
    code, out, _ = run(capsys, "axioms", "--logic", GODEL, "--connective", "imp", "--value", "half")
    assert code == 0
    assert out.splitlines() == [
        "intro imp half: ([1](phi) & [half](psi)) |- [half](imp(phi,psi))",
        "elim imp half: [half](imp(phi,psi)) |- ([1](phi) & [half](psi))",
    ]


def test_axioms_full_listing_is_the_golden_file(capsys):
    code, out, _ = run(capsys, "axioms", "--logic", "godel3")
    assert code == 0 and out == data_path("godel3_axioms.golden").read_text()


def test_entail_bundled_theory(capsys):
    code, out, _ = run(capsys, "entail", "--logic", GODEL, "--gamma", GAMMA, "--sequent", "T |- [half](imp(A,B))")
    assert code == 0 and out.strip() == "entailed"


def test_entail_refuted_and_vacuous(capsys, tmp_path):
    code, out, _ = run(capsys, "entail", "--logic", "godel3", "--sequent", "T |- [1](A)")
    assert code == 1 and "countermodel: A=0" in out
    bad = tmp_path / "bad.gamma"
    bad.write_text("T |- [1](A)\nT |- [0](A)\n")
    code, out, _ = run(capsys, "entail", "--logic", "godel3", "--gamma", str(bad), "--sequent", "T |- F")
    assert code == 2


def test_check_proof_fixture(capsys):
    code, out, _ = run(capsys, "check-proof", "--logic", GODEL, "--gamma", GAMMA, PROOF)
    assert code == 0 and out.strip() == "OK"


def test_check_proof_rejects_without_theory(capsys):
    code, out, _ = run(capsys, "check-proof", "--logic", GODEL, PROOF)
    assert code == 1 and "REJECTED" in out


def test_reduce_and_trace(capsys):
    code, out, _ = run(capsys, "reduce", "--logic", "godel3", "--value", "0", "--formula", "imp(A,B)")
    assert code == 0 and out.strip() == "(([half](A) & [0](B)) | ([1](A) & [0](B)))"
    code, out, _ = run(capsys, "reduce", "--logic", "godel3", "--formula", "[0]([1]([half](A)))", "--trace")
    assert code == 0 and out.splitlines()[-1] == "[0]([1]([half](A)))"


def test_invariance_and_matrix(capsys):
    code, out, _ = run(capsys, "invariance", "--logic", "godel3", "--gamma", GAMMA, "--phi", "imp(A,B)")
    assert code == 0 and out.strip() == "invariant: value half"
    code, out, _ = run(capsys, "invariance", "--logic", "godel3", "--phi", "A")
    assert code == 1
    code, _, _ = run(capsys, "matrix", "--logic", "classical2", "--designated", "1",
                     "--premise", "A", "--premise", "imp(A,B)", "--phi", "B")
    assert code == 0
    code, out, _ = run(capsys, "matrix", "--logic", "classical2", "--designated", "1", "--phi", "A")
    assert code == 1 and "A=0" in out


def test_prove(capsys, tmp_path):
    emitted = tmp_path / "p.json"
    code, out, _ = run(capsys, "prove", "--logic", "godel3", "--gamma", GAMMA,
                       "--sequent", "T |- [half](imp(A,B))", "--emit", str(emitted))
    assert code == 0 and "[rule cut]" in out.splitlines()[0]
    code, _, _ = run(capsys, "check-proof", "--logic", "godel3", "--gamma", GAMMA, str(emitted))
    assert code == 0
    code, _, _ = run(capsys, "prove", "--logic", "godel3", "--sequent", "T |- [1](A)", "--depth", "3")
    assert code == 2


def test_kripke(capsys, tmp_path):
    v = tmp_path / "v.json"
    v.write_text(json.dumps({"A": "half", "B": "0"}))
    code, out, _ = run(capsys, "kripke", "--logic", "godel3", "--valuation", str(v), "--formula", "[0](imp(A,B))")
    assert code == 0
    assert out.splitlines()[:2] == ["extension: {0, half, 1}", "two-valued: yes"]
    code, out, _ = run(capsys, "kripke", "--logic", "godel3", "--valuation", str(v), "--formula", "imp(A,B)")
    assert out.splitlines()[0] == "extension: {0}"
    v.write_text(json.dumps({"A": "2"}))
    code, _, _ = run(capsys, "kripke", "--logic", "godel3", "--valuation", str(v), "--formula", "A")
    assert code == 4


def test_validate(capsys, tmp_path):
    code, _, _ = run(capsys, "validate", "--logic", "belnap4")
    assert code == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "x", "values": ["0", "1"], "bool_false": "0", "bool_true": "1",
                               "connectives": [{"symbol": "neg", "arity": 1, "table": ["1"]}]}))
    code, _, err = run(capsys, "validate", "--logic", str(bad))
    assert code == 4
    assert err.splitlines()[0] == "input error: invalid logic 'x': 1 problem(s)"
    assert len(err.splitlines()) == 2


def test_json_format_fields(capsys):
    code, out, _ = run(capsys, "entail", "--logic", "godel3", "--sequent", "T |- [1](A)", "--format", "json",
                       "--no-timing")
    doc = json.loads(out)
    assert code == 1
    assert {"verdict", "witness", "counts", "elapsed_ms"} <= set(doc)
    assert doc["verdict"] == "refuted" and doc["witness"] == "A=0" and doc["elapsed_ms"] == 0


@pytest.mark.parametrize(
    "argv",
    [["bogus"], [], ["entail", "--logic", "godel3"], ["prove", "--logic", "godel3", "--sequent", "T |- T",
                                                       "--depth", "x"], ["entail", "--sequent", "T |- T"]],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 3


@pytest.mark.parametrize(
    "argv",
    [["entail", "--logic", "godel3", "--sequent", "T |- [zz](A)"],
     ["entail", "--logic", "missing.json", "--sequent", "T |- T"],
     ["entail", "--logic", "godel3", "--gamma", "missing.gamma", "--sequent", "T |- T"],
     ["axioms", "--logic", "godel3", "--connective", "nope"]],
)
def test_input_errors(capsys, argv):
    assert main(argv) == 4


def test_reports_are_deterministic(capsys):
    argv = ["prove", "--logic", "godel3", "--gamma", GAMMA, "--sequent", "T |- [half](imp(A,B))",
            "--format", "json", "--no-timing"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_selftest_with_classical_extra_signature(capsys):
    code, out, _ = run(capsys, "selftest", "--logic", "classical2", "--no-timing", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "passed"
    assert doc["counts"]["suite_8"] == {"passed": True, "premise_classes": 16, "conclusions": 5552,
                                        "pairs": 88832, "vacuous": 5552, "disagreements": 0}
    assert "extra signature: classical2" in doc["output"]
