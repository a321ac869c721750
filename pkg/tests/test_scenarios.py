"""Builtin scenarios, scenario files, and report rendering."""

import json
import math

import numpy as np
import pytest

from idqsim import (
    Expectation,
    ScenarioError,
    builtin_names,
    get_builtin,
    load_scenario,
    run_builtin,
    run_file,
    run_spec,
)
from idqsim.scenarios import (
    EIGS_OVERLAP,
    ENTROPY_OVERLAP_BITS,
    PROB_ONE_IN_THREE,
    PURITY_OVERLAP,
    TOL_EIGS,
    TOL_ENTROPY,
    TOL_PROB,
    TOL_PURITY,
)

RT2 = 1.0 / math.sqrt(2.0)


def test_builtin_names_are_stable():
    assert builtin_names() == (
        "separated",
        "induced",
        "ghz",
        "overlap",
        "distinguishable",
        "distinguishable-overlapped",
    )


def test_every_builtin_passes_its_own_expectations():
    for name in builtin_names():
        report = run_builtin(name)
        failed = [c for c in report.checks if not c.passed]
        assert not failed, f"{name}: {[c.expectation.describe() for c in failed]}"


def test_unknown_builtin_is_a_scenario_error():
    with pytest.raises(ScenarioError):
        get_builtin("no-such-thing")


def test_every_builtin_finishes_within_a_second():
    import time

    for name in builtin_names():
        start = time.perf_counter()
        run_builtin(name)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"{name} took {elapsed:.2f}s"


def test_builtin_expectations_carry_the_frozen_reference_values():
    # single source of truth: the numbers the whole suite is anchored to
    assert np.isclose(ENTROPY_OVERLAP_BITS, math.log2(3.0) - 2.0 / 3.0, atol=0)
    assert EIGS_OVERLAP == (2.0 / 3.0, 1.0 / 3.0)
    assert PURITY_OVERLAP == 5.0 / 9.0

    overlap = get_builtin("overlap")
    by_key = {
        (e.quantity, e.stage): e
        for e in overlap.expectations
        if e.quantity != "genuine_multipartite"
    }
    assert by_key[("entropy_two", None)].value == ENTROPY_OVERLAP_BITS
    assert by_key[("entropy_two", None)].tolerance == TOL_ENTROPY == 1e-9
    assert by_key[("eigenvalues", "one")].value == EIGS_OVERLAP
    assert by_key[("eigenvalues", "one")].tolerance == TOL_EIGS == 1e-10
    assert by_key[("purity_one", None)].value == PURITY_OVERLAP
    assert by_key[("purity_one", None)].tolerance == TOL_PURITY == 1e-10

    induced = get_builtin("induced")
    eig = [e for e in induced.expectations if e.quantity == "eigenvalues"][0]
    assert eig.value == (0.5, 0.5)
    assert eig.tolerance == TOL_EIGS
    prob = [e for e in induced.expectations if e.quantity == "probability"][0]
    assert prob.value == PROB_ONE_IN_THREE
    assert prob.tolerance == TOL_PROB == 1e-10

    for name, flag in (("separated", False), ("ghz", True), ("overlap", True),
                       ("distinguishable", False)):
        flags = [
            e.value
            for e in get_builtin(name).expectations
            if e.quantity == "genuine_multipartite"
        ]
        assert flags == [flag]

    ghz = get_builtin("ghz")
    for e in ghz.expectations:
        if e.quantity in ("entropy_one", "entropy_two"):
            assert e.value == 1.0 and e.tolerance == TOL_ENTROPY

    for name in ("separated", "distinguishable", "distinguishable-overlapped"):
        for e in get_builtin(name).expectations:
            if e.quantity.startswith("purity"):
                assert e.value == 1.0 and e.tolerance == TOL_PURITY
            if e.quantity.startswith("entropy"):
                assert e.value == 0.0 and e.tolerance == TOL_ENTROPY


def induced_file_payload():
    return {
        "name": "induced-from-file",
        "title": "file twin of the induced builtin",
        "kind": "identical",
        "statistics": "boson",
        "modes": ["A", "B", "C"],
        "state": [
            {
                "coeff": [1.0, 0.0],
                "kets": [
                    [["A", "down", 1.0, 0.0]],
                    [["B", "down", 1.0, 0.0]],
                    [["C", "up", 1.0, 0.0]],
                ],
            }
        ],
        "plans": [
            {
                "label": "(BC)-delocalized",
                "bipartition": False,
                "two": [
                    [
                        [["B", "down", RT2, 0.0], ["C", "down", RT2, 0.0]],
                        [["B", "up", RT2, 0.0], ["C", "up", RT2, 0.0]],
                    ]
                ],
            }
        ],
        "expectations": [
            {
                "quantity": "probability",
                "label": "(BC)-delocalized",
                "stage": "two",
                "value": 1.0 / 3.0,
                "tolerance": 1e-10,
            },
            {
                "quantity": "entropy_two",
                "label": "(BC)-delocalized",
                "value": 1.0,
                "tolerance": 1e-9,
            },
            {
                "quantity": "eigenvalues",
                "label": "(BC)-delocalized",
                "stage": "two",
                "value": [0.5, 0.5],
                "tolerance": 1e-10,
            },
            {
                "quantity": "purity_two",
                "label": "(BC)-delocalized",
                "value": 0.5,
                "tolerance": 1e-10,
            },
        ],
    }


def test_file_scenario_reproduces_the_induced_builtin(tmp_path):
    path = tmp_path / "induced.json"
    path.write_text(json.dumps(induced_file_payload()))
    from_file = run_file(path)
    assert from_file.passed
    builtin = run_builtin("induced")
    d_file = from_file.to_dict()
    d_builtin = builtin.to_dict()
    # identical physics output, field by field
    assert d_file["bipartitions"] == d_builtin["bipartitions"]
    assert d_file["genuine_multipartite"] == d_builtin["genuine_multipartite"]


def test_distinguishable_file_round_trip(tmp_path):
    payload = {
        "name": "labeled-pair-check",
        "kind": "distinguishable",
        "modes": ["A", "B", "C"],
        "state": [
            {
                "kets": [
                    [["A", "down", 1.0, 0.0]],
                    [["B", "down", 1.0, 0.0]],
                    [["C", "up", 1.0, 0.0]],
                ]
            }
        ],
        "plans": [
            {
                "label": "(12)-3",
                "two": [{"slot": 2, "kets": [[["C", "up", 1.0, 0.0]],
                                             [["C", "down", 1.0, 0.0]]]}],
            }
        ],
        "expectations": [
            {"quantity": "purity_two", "label": "(12)-3", "value": 1.0,
             "tolerance": 1e-10},
            {"quantity": "probability", "label": "(12)-3", "stage": "two",
             "value": 1.0, "tolerance": 1e-10},
        ],
    }
    path = tmp_path / "labeled.json"
    path.write_text(json.dumps(payload))
    report = run_file(path)
    assert report.passed


def test_tolerance_override_only_tightens(tmp_path):
    payload = induced_file_payload()
    # deliberately off in the 4th decimal, hidden by a loose tolerance
    payload["expectations"] = [
        {
            "quantity": "probability",
            "label": "(BC)-delocalized",
            "stage": "two",
            "value": 0.3334,
            "tolerance": 1e-3,
        }
    ]
    path = tmp_path / "loose.json"
    path.write_text(json.dumps(payload))
    assert run_file(path).passed
    assert not run_file(path, tolerance=1e-6).passed
    # an override looser than the stated tolerance must not widen it
    spec = load_scenario(path)
    assert run_spec(spec, tolerance=1.0).checks[0].tolerance == 1e-3


def test_bad_files_fail_with_field_paths(tmp_path):
    base = induced_file_payload()

    cases = []

    missing_name = dict(base)
    del missing_name["name"]
    cases.append((missing_name, "scenario.name"))

    bad_stats = dict(base, statistics="anyon")
    cases.append((bad_stats, "scenario.statistics"))

    bad_mode = json.loads(json.dumps(base))
    bad_mode["state"][0]["kets"][0] = [["Z", "down", 1.0, 0.0]]
    cases.append((bad_mode, "unknown mode"))

    bad_quantity = json.loads(json.dumps(base))
    bad_quantity["expectations"][0]["quantity"] = "negativity"
    cases.append((bad_quantity, "expectations[0]"))

    bad_label = json.loads(json.dumps(base))
    bad_label["expectations"][0]["label"] = "missing-plan"
    cases.append((bad_label, "no plan named"))

    for payload, fragment in cases:
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(ScenarioError, match="(?i)" + fragment.replace("[", r"\[")):
            run_file(path)


def test_non_orthonormal_basis_names_the_offending_pair(tmp_path):
    payload = induced_file_payload()
    payload["plans"][0]["two"] = [
        [
            [["B", "down", 1.0, 0.0]],
            [["B", "down", RT2, 0.0], ["C", "down", RT2, 0.0]],
        ]
    ]
    path = tmp_path / "skew.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ScenarioError, match="not orthonormal"):
        run_file(path)


def test_fermionic_null_state_error_carries_the_scenario_name(tmp_path):
    payload = {
        "name": "pauli-trap",
        "kind": "identical",
        "statistics": "fermion",
        "modes": ["A", "B"],
        "state": [
            {
                "kets": [
                    [["A", "down", 1.0, 0.0]],
                    [["A", "down", 1.0, 0.0]],
                ]
            }
        ],
        "plans": [{"label": "p", "two": [[[["A", "down", 1.0, 0.0]]]]}],
    }
    path = tmp_path / "pauli.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ScenarioError, match="pauli-trap"):
        run_file(path)


def test_missing_file_and_broken_json_are_scenario_errors(tmp_path):
    with pytest.raises(ScenarioError, match="not found"):
        load_scenario(tmp_path / "nope.json")
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    with pytest.raises(ScenarioError, match="JSON"):
        load_scenario(path)


def test_machine_dict_is_rounded_and_ascii_safe():
    report = run_builtin("overlap")
    d = report.to_dict()
    assert d["status"] == "pass"
    assert d["genuine_multipartite"] is True
    side = d["bipartitions"][0]["two"]
    assert side["eigenvalues"][0] == 0.666666666667
    assert side["eigenvalues"][1] == 0.333333333333
    # matrices are [re, im] pairs, row-major, labeled
    assert side["matrix"][0][0] == [0.0, 0.0] or isinstance(side["matrix"][0][0], list)
    assert len(side["matrix"]) == len(side["basis"])
    blob = report.to_json()
    assert blob == report.to_json()  # deterministic
    assert blob.encode("ascii")  # ensure_ascii output
    assert "-0.0" not in blob


def test_expectation_validation():
    with pytest.raises(ScenarioError):
        Expectation("negativity", 1.0, "x")
    with pytest.raises(ScenarioError):
        Expectation("entropy_one", 1.0)  # no label
    with pytest.raises(ScenarioError):
        Expectation("eigenvalues", (0.5, 0.5), "x")  # no stage
    with pytest.raises(ScenarioError):
        Expectation("genuine_multipartite", 1.0)  # not a bool
