"""Entropy diagnostics and the bipartition analyzer."""

import math

import numpy as np
import pytest

from idqsim import (
    CanonicalBasis,
    MeasurementBasis,
    NotPSDError,
    Spin,
    Statistics,
    TracePlan,
    analyze,
    eigenvalues_hermitian,
    elementary,
    normalize,
    partial_trace_one,
    purity,
    von_neumann_entropy,
)
from idqsim.verification import random_unitary

SPACE = CanonicalBasis(("A", "B", "C"))
OVERLAP_ENTROPY = math.log2(3.0) - 2.0 / 3.0


def overlap_state():
    a_dn, a_up = SPACE.ket("A", Spin.DOWN), SPACE.ket("A", Spin.UP)
    return elementary(Statistics.BOSON, (a_dn, a_dn, a_up), 1.0 / math.sqrt(2.0))


def test_eigenvalues_come_out_descending_and_clamped():
    ev = eigenvalues_hermitian(np.diag([0.25, 0.75, -1e-12]))
    assert ev[0] == pytest.approx(0.75)
    assert ev[1] == pytest.approx(0.25)
    assert ev[2] == 0.0


def test_clearly_negative_matrices_are_rejected():
    with pytest.raises(NotPSDError):
        eigenvalues_hermitian(np.diag([1.1, -0.1]))


def test_entropy_of_known_spectra():
    rho = partial_trace_one(overlap_state(), MeasurementBasis.localized(SPACE, "A"))
    assert np.isclose(von_neumann_entropy(rho), OVERLAP_ENTROPY, atol=1e-12)
    assert np.isclose(purity(rho), 5.0 / 9.0, atol=1e-12)


def test_entropy_is_basis_independent():
    rng = np.random.default_rng(21)
    p = np.array([0.5, 0.3, 0.2])
    s_ref = -(p * np.log2(p)).sum()
    u = random_unitary(rng, 3)
    m = (u * p) @ u.conj().T
    ev = eigenvalues_hermitian(m)
    ev = ev[ev > 0]
    assert np.isclose(-(ev * np.log2(ev)).sum(), s_ref)


def test_analyze_runs_every_plan_and_aggregates_the_flag():
    loc_a = MeasurementBasis.localized(SPACE, "A")
    plan = TracePlan("(AA)-A", one_stages=(loc_a, loc_a), two_stages=(loc_a,))
    report = analyze(overlap_state(), (plan,))
    b = report["(AA)-A"]
    assert np.isclose(b.entropy_one, OVERLAP_ENTROPY)
    assert np.isclose(b.entropy_two, OVERLAP_ENTROPY)
    assert np.isclose(b.purity_one, 5.0 / 9.0)
    assert b.mixed
    assert report.genuine_multipartite is True


def test_pure_cuts_unset_the_flag():
    kets = (
        SPACE.ket("A", Spin.DOWN),
        SPACE.ket("B", Spin.DOWN),
        SPACE.ket("C", Spin.UP),
    )
    sep = elementary(Statistics.BOSON, kets)
    plans = tuple(
        TracePlan(f"({m})", two_stages=(MeasurementBasis.localized(SPACE, m),))
        for m in "ABC"
    )
    report = analyze(sep, plans)
    assert all(not b.mixed for b in report.bipartitions)
    assert report.genuine_multipartite is False
    assert all(b.entropy_one is None for b in report.bipartitions)


def test_non_bipartition_plans_do_not_vote():
    loc_a = MeasurementBasis.localized(SPACE, "A")
    plan = TracePlan("probe", two_stages=(loc_a,), bipartition=False)
    report = analyze(overlap_state(), (plan,))
    assert report["probe"].mixed
    assert report.genuine_multipartite is None


def test_ghz_is_genuinely_multipartite():
    dn = tuple(SPACE.ket(m, Spin.DOWN) for m in "ABC")
    up = tuple(SPACE.ket(m, Spin.UP) for m in "ABC")
    ghz = normalize(
        elementary(Statistics.BOSON, dn) + elementary(Statistics.BOSON, up)
    )
    plans = tuple(
        TracePlan(f"cut {m}", two_stages=(MeasurementBasis.localized(SPACE, m),))
        for m in "ABC"
    )
    report = analyze(ghz, plans)
    assert report.genuine_multipartite is True
    for b in report.bipartitions:
        assert np.isclose(b.entropy_two, 1.0)
        assert np.isclose(b.purity_two, 0.5)


def test_plan_labels_must_be_distinct():
    loc_a = MeasurementBasis.localized(SPACE, "A")
    plan = TracePlan("dup", two_stages=(loc_a,))
    with pytest.raises(ValueError):
        analyze(overlap_state(), (plan, plan))


def test_empty_plans_are_rejected():
    with pytest.raises(ValueError):
        TracePlan("nothing")
