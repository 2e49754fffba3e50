import json

import pytest

from homhopf.cli import main, parse_input
from homhopf.errors import InverseMismatch
from homhopf.fixtures import kz4_twisted_hopf, abelian_lie, fixture_b_lie_pair
from homhopf.foundation import LinComb

from jsonize import hopf_to_json, lie_to_json, lie_pair_to_json

e = LinComb.basis


def write(tmp_path, doc, name="input.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def kz4_doc():
    return {
        "field": "Q",
        "hopf": {"kz4": hopf_to_json(kz4_twisted_hopf())},
        "pipeline": {"command": "verify-hopf", "target": "kz4"},
    }


def test_verify_hopf_pass(tmp_path, capsys):
    path = write(tmp_path, kz4_doc())
    assert main(["verify-hopf", "--input", path]) == 0
    out = capsys.readouterr().out
    assert "ALL CHECKS PASSED" in out


def test_verify_hopf_violations_exit_one(tmp_path, capsys):
    doc = kz4_doc()
    # break one multiplication entry
    doc["hopf"]["kz4"]["mult"].append([1, 1, 0, "1"])
    path = write(tmp_path, doc)
    assert main(["verify-hopf", "--input", path]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "witness" in out


def test_schema_error_exit_two(tmp_path, capsys):
    path = write(tmp_path, {"field": "R"})
    assert main(["verify-hopf", "--input", path]) == 2
    assert "field" in capsys.readouterr().err

    path = write(tmp_path, {"field": "Q", "hopf": {"h": {"dim": 0}}})
    assert main(["verify-hopf", "--input", path]) == 2

    # dangling reference carries a JSON-pointer-ish location
    doc = {
        "field": "Q",
        "hopf": {},
        "matched_pairs": {"p": {"u": "missing", "v": "missing"}},
    }
    path = write(tmp_path, doc)
    assert main(["matched-pair-check", "--input", path]) == 2
    assert "/matched_pairs/p/u" in capsys.readouterr().err


def test_inverse_mismatch(tmp_path):
    doc = kz4_doc()
    # declare a wrong inverse for alpha
    doc["hopf"]["kz4"]["alpha_inv"] = [
        ["2", "0", "0", "0"],
        ["0", "2", "0", "0"],
        ["0", "0", "2", "0"],
        ["0", "0", "0", "2"],
    ]
    path = write(tmp_path, doc)
    assert main(["verify-hopf", "--input", path]) == 2

    # singular phi with no declared inverse
    doc = {
        "field": "Q",
        "hom_lie": {
            "bad": {"dim": 2, "bracket": [], "phi": [["1", "0"], ["0", "0"]]}
        },
        "pipeline": {"target": "bad"},
    }
    path = write(tmp_path, doc)
    with pytest.raises(InverseMismatch):
        parse_input(path)


def test_json_report_deterministic(tmp_path, capsys):
    path = write(tmp_path, kz4_doc())
    assert main(["verify-hopf", "--input", path, "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["verify-hopf", "--input", path, "--format", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    report = json.loads(first)
    assert report["passed"] is True
    assert report["command"] == "verify-hopf"
    assert "timing_ms" not in report


def test_build_uea_dims_in_report(tmp_path, capsys):
    doc = {
        "field": "Q",
        "hom_lie": {"a2": lie_to_json(abelian_lie(2))},
        "pipeline": {"target": "a2", "degree": 3, "weight_bound": 1},
    }
    path = write(tmp_path, doc)
    assert main(["build-uea", "--input", path, "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["dimensions"]["per_degree"] == [1, 2, 3, 4]


def test_matched_pair_check_and_doublecross(tmp_path, capsys):
    h1, h2 = kz4_twisted_hopf(), kz4_twisted_hopf()
    left, right = [], []
    for i in range(4):
        for j in range(4):
            for k, c in (h2.counit_map(e(i)) * h1.alpha_map(e(j))).items():
                left.append([i, j, k, str(c)])
            for k, c in (h1.counit_map(e(j)) * h2.alpha_map(e(i))).items():
                right.append([i, j, k, str(c)])
    doc = {
        "field": "Q",
        "hopf": {"u": hopf_to_json(h1), "v": hopf_to_json(h2)},
        "matched_pairs": {
            "trivial": {"u": "u", "v": "v", "left": left, "right": right}
        },
        "pipeline": {"target": "trivial"},
    }
    path = write(tmp_path, doc)
    assert main(["matched-pair-check", "--input", path]) == 0
    capsys.readouterr()
    assert main(["doublecross", "--input", path, "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert {b["id"] for b in report["checks"]} == {"matched-pair", "double-cross-suite"}
    capsys.readouterr()
    assert main(["semidualize", "--input", path, "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert {b["id"] for b in report["checks"]} == {"matched-pair", "mutual-pair"}


def test_lie_pipeline_commands(tmp_path, capsys):
    pair = fixture_b_lie_pair()
    doc = {
        "field": "Q",
        "hom_lie": {"g": lie_to_json(pair.g), "h": lie_to_json(pair.h)},
        "lie_matched_pairs": {"b": lie_pair_to_json(pair, "g", "h")},
        "pipeline": {"target": "b", "degree": 2, "weight_bound": 1},
    }
    path = write(tmp_path, doc)
    assert main(["matched-pair-check", "--input", path]) == 0
    capsys.readouterr()
    assert main(["hom-lie-hopf", "--input", path, "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["dimensions"]["u_per_degree"] == [1, 1, 1]
    assert report["passed"] is True
    # degree overridden from the command line
    assert main(["hom-lie-hopf", "--input", path, "--degree", "3"]) == 0


def test_order_constraint_flag(tmp_path, capsys):
    third = {
        "dim": 3,
        "bracket": [],
        "phi": [["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]],
    }
    pair_doc = {
        "field": "Q",
        "hom_lie": {"g3": third, "h1": lie_to_json(abelian_lie(1))},
        "lie_matched_pairs": {
            "p": {"g": "g3", "h": "h1", "h_on_g": [], "g_on_h": []}
        },
        "pipeline": {"target": "p", "degree": 2, "weight_bound": 0},
    }
    path = write(tmp_path, pair_doc)
    # order-3 twist violates the finite-order hypothesis
    assert main(["hom-lie-hopf", "--input", path]) == 1
    out = capsys.readouterr().out
    assert "OrderConstraintViolated" in out
    # the override proceeds (and the trivial actions still pass)
    assert main(["hom-lie-hopf", "--input", path, "--no-order-constraint"]) == 0
