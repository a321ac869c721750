"""Partial traces, occupation coordinates, and the probability gauge."""

import math

import numpy as np
import pytest

from idqsim import (
    CanonicalBasis,
    MeasurementBasis,
    OccupationBasis,
    Spin,
    Statistics,
    ZeroProbabilityError,
    coords,
    delocalized_pair,
    elementary,
    inner,
    normalize,
    partial_trace_iterate,
    partial_trace_one,
    probability_of,
    spectrum,
)
from idqsim.verification import random_measurement_basis, random_state

SPACE = CanonicalBasis(("A", "B", "C"))


def overlap_state():
    a_dn, a_up = SPACE.ket("A", Spin.DOWN), SPACE.ket("A", Spin.UP)
    return elementary(Statistics.BOSON, (a_dn, a_dn, a_up), 1.0 / math.sqrt(2.0))


def separated_state():
    kets = (
        SPACE.ket("A", Spin.DOWN),
        SPACE.ket("B", Spin.DOWN),
        SPACE.ket("C", Spin.UP),
    )
    return elementary(Statistics.BOSON, kets)


def ghz_state():
    dn = tuple(SPACE.ket(m, Spin.DOWN) for m in "ABC")
    up = tuple(SPACE.ket(m, Spin.UP) for m in "ABC")
    return normalize(
        elementary(Statistics.BOSON, dn) + elementary(Statistics.BOSON, up)
    )


# --- occupation bases and coordinates --------------------------------------


def test_occupation_basis_sizes():
    assert OccupationBasis(SPACE, 1, Statistics.BOSON).size == 6
    assert OccupationBasis(SPACE, 2, Statistics.BOSON).size == 21
    assert OccupationBasis(SPACE, 2, Statistics.FERMION).size == 15
    assert OccupationBasis(SPACE, 0, Statistics.BOSON).labels == ("vac",)


def test_occupation_labels_name_their_entries():
    occ = OccupationBasis(SPACE, 2, Statistics.BOSON)
    i = occ.index_of([("A", Spin.DOWN), ("C", Spin.UP)])
    assert occ.labels[i] == "A↓,C↑"
    j = occ.index_of([("C", Spin.UP), ("A", Spin.DOWN)])  # order-free lookup
    assert i == j


def test_coords_carry_the_multiplicity_factor():
    # |Adn,Adn> has squared norm 2, so its lone coordinate must be sqrt(2)
    a_dn = SPACE.ket("A", Spin.DOWN)
    s = elementary(Statistics.BOSON, (a_dn, a_dn))
    occ = OccupationBasis(SPACE, 2, Statistics.BOSON)
    v = coords(s, occ)
    i = occ.index_of([("A", Spin.DOWN), ("A", Spin.DOWN)])
    assert np.isclose(v[i], math.sqrt(2.0))
    assert np.isclose(np.vdot(v, v).real, inner(s, s).real)


def test_coords_are_isometric_for_random_states():
    rng = np.random.default_rng(11)
    for stats in (Statistics.BOSON, Statistics.FERMION):
        for n in (1, 2, 3):
            a = random_state(rng, SPACE, n, stats)
            b = random_state(rng, SPACE, n, stats)
            occ = OccupationBasis(SPACE, n, stats)
            assert np.isclose(
                np.vdot(coords(a, occ), coords(b, occ)), inner(a, b), atol=1e-12
            )


def test_fermionic_coords_respect_the_listing_sign():
    a, b = SPACE.ket("A", Spin.DOWN), SPACE.ket("B", Spin.DOWN)
    occ = OccupationBasis(SPACE, 2, Statistics.FERMION)
    forward = coords(elementary(Statistics.FERMION, (a, b)), occ)
    backward = coords(elementary(Statistics.FERMION, (b, a)), occ)
    assert np.allclose(forward, -backward)


# --- single traces -----------------------------------------------------------


def test_overlap_state_trace_spectrum_is_two_thirds_one_third():
    rho = partial_trace_one(overlap_state(), MeasurementBasis.localized(SPACE, "A"))
    assert np.isclose(rho.prob, 1.0)
    ev = spectrum(rho)
    assert np.allclose(ev[:2], [2.0 / 3.0, 1.0 / 3.0])
    assert np.allclose(ev[2:], 0.0)


def test_overlap_state_branch_content():
    # the 2/3 branch holds |Adn,Aup>, the 1/3 branch |Adn,Adn>
    rho = partial_trace_one(overlap_state(), MeasurementBasis.localized(SPACE, "A"))
    occ = rho.basis
    mixed_pair = occ.unit_vector([("A", Spin.DOWN), ("A", Spin.UP)])
    same_pair = occ.unit_vector([("A", Spin.DOWN), ("A", Spin.DOWN)])
    assert np.isclose(mixed_pair @ rho.mat @ mixed_pair, 2.0 / 3.0)
    assert np.isclose(same_pair @ rho.mat @ same_pair, 1.0 / 3.0)
    assert np.isclose(mixed_pair @ rho.mat @ same_pair, 0.0)


def test_delocalized_trace_leaves_an_even_two_branch_mixture():
    mb = delocalized_pair(SPACE, "B", "C")
    rho = partial_trace_one(separated_state(), mb)
    assert np.isclose(rho.prob, 1.0 / 3.0)
    ev = spectrum(rho)
    assert np.allclose(ev[:2], [0.5, 0.5])
    occ = rho.basis
    for pair in ([("A", Spin.DOWN), ("C", Spin.UP)], [("A", Spin.DOWN), ("B", Spin.DOWN)]):
        v = occ.unit_vector(pair)
        assert np.isclose(np.linalg.norm(rho.mat @ v - 0.5 * v), 0.0, atol=1e-12)


def test_separated_state_localized_traces_are_pure():
    for mode in "ABC":
        rho = partial_trace_one(separated_state(), MeasurementBasis.localized(SPACE, mode))
        assert np.isclose(rho.prob, 1.0 / 3.0)
        assert np.isclose(spectrum(rho)[0], 1.0)


def test_ghz_localized_trace_is_maximally_mixed_on_two_entries():
    rho = partial_trace_one(ghz_state(), MeasurementBasis.localized(SPACE, "C"))
    assert np.isclose(rho.prob, 1.0 / 3.0)
    ev = spectrum(rho)
    assert np.allclose(ev[:2], [0.5, 0.5])
    assert np.allclose(ev[2:], 0.0)


# --- iterated traces ---------------------------------------------------------


def test_iterated_trace_multiplies_stage_probabilities():
    loc_c = MeasurementBasis.localized(SPACE, "C")
    loc_a = MeasurementBasis.localized(SPACE, "A")
    rho = partial_trace_iterate(ghz_state(), (loc_c, loc_a))
    assert np.isclose(rho.prob, 1.0 / 6.0)
    ev = spectrum(rho)
    assert np.allclose(ev[:2], [0.5, 0.5])


def test_iterated_trace_of_overlap_state_keeps_the_spectrum():
    loc_a = MeasurementBasis.localized(SPACE, "A")
    rho = partial_trace_iterate(overlap_state(), (loc_a, loc_a))
    assert np.isclose(rho.prob, 1.0)
    assert np.allclose(spectrum(rho)[:2], [2.0 / 3.0, 1.0 / 3.0])


def test_zero_stage_trace_is_the_pure_projector():
    rho = partial_trace_iterate(overlap_state(), ())
    assert rho.prob == 1.0
    assert np.isclose(spectrum(rho)[0], 1.0)
    assert rho.basis.sector == 3


def test_trace_that_never_fires_is_an_error():
    with pytest.raises(ZeroProbabilityError):
        partial_trace_one(overlap_state(), MeasurementBasis.localized(SPACE, "B"))


def test_trace_needs_a_normalized_state():
    a = SPACE.ket("A", Spin.DOWN)
    with pytest.raises(ValueError):
        partial_trace_one(
            elementary(Statistics.BOSON, (a, a)), MeasurementBasis.localized(SPACE, "A")
        )


# --- probabilities -----------------------------------------------------------


def test_localized_probability_is_one_third_on_the_separated_state():
    assert np.isclose(
        probability_of(separated_state(), MeasurementBasis.localized(SPACE, "C")),
        1.0 / 3.0,
    )


def test_complete_basis_probability_is_one():
    rng = np.random.default_rng(5)
    for stats in (Statistics.BOSON, Statistics.FERMION):
        phi = random_state(rng, SPACE, 3, stats)
        assert np.isclose(probability_of(phi, MeasurementBasis.full(SPACE)), 1.0)
        assert np.isclose(
            probability_of(phi, random_measurement_basis(rng, SPACE)), 1.0
        )


def test_probability_is_additive_over_basis_splits():
    rng = np.random.default_rng(6)
    phi = random_state(rng, SPACE, 2, Statistics.BOSON)
    mb = random_measurement_basis(rng, SPACE)
    parts = (
        MeasurementBasis(mb.kets[:2]),
        MeasurementBasis(mb.kets[2:4]),
        MeasurementBasis(mb.kets[4:]),
    )
    assert np.isclose(
        sum(probability_of(phi, p) for p in parts), probability_of(phi, mb)
    )


def test_trace_is_invariant_under_a_unitary_remix_of_a_complete_basis():
    rng = np.random.default_rng(8)
    phi = random_state(rng, SPACE, 3, Statistics.BOSON)
    base = MeasurementBasis.full(SPACE)
    remixed = random_measurement_basis(rng, SPACE)
    r1 = partial_trace_one(phi, base)
    r2 = partial_trace_one(phi, remixed)
    assert np.allclose(r1.mat, r2.mat, atol=1e-12)
    assert np.isclose(r1.prob, r2.prob)


# --- density matrix contracts ------------------------------------------------


def test_reduced_matrices_are_hermitian_psd_unit_trace():
    rng = np.random.default_rng(9)
    for stats in (Statistics.BOSON, Statistics.FERMION):
        phi = random_state(rng, SPACE, 3, stats)
        mb = random_measurement_basis(rng, SPACE, 3)
        rho = partial_trace_one(phi, mb)
        m = rho.mat
        assert np.allclose(m, m.conj().T, atol=1e-12)
        assert np.linalg.eigvalsh(m).min() > -1e-12
        assert np.isclose(m.trace(), 1.0)
        assert 0.0 <= rho.prob <= 1.0


def test_measurement_basis_rejects_non_orthonormal_kets():
    a = SPACE.ket("A", Spin.DOWN)
    b = SPACE.ket("B", Spin.DOWN)
    with pytest.raises(ValueError):
        MeasurementBasis((a, (a + b) * (1.0 / math.sqrt(2.0))))


def test_measurement_basis_completeness_flag():
    assert MeasurementBasis.full(SPACE).complete
    assert not MeasurementBasis.localized(SPACE, "A").complete
