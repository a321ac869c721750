"""Brute-force labeled-particle oracle for cross-checking the state algebra.

Everything here works in the explicit tensor-product space of labeled slots,
with (anti)symmetrized vectors built by summing over all slot permutations.
It is exponentially sized on purpose: results are trusted because the
construction is obvious, not because it is fast. Scale is capped accordingly.

The load-bearing identities, verified in the property suite:

* ``oracle_inner(a, b) == factorial(n) * inner(a, b)``
* one-particle traces of the symmetrized vector agree entry-by-entry with the
  occupation-basis density matrices from the main algebra, and the slot used
  for the projection does not matter.

The module also hosts the distinguishable-particle comparator: plain labeled
product states with per-slot post-selected traces, no symmetrization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import permutations
from typing import Sequence

import numpy as np

from .errors import OracleScaleError, ZeroProbabilityError
from .hilbert import CanonicalBasis, Ket
from .permanents import permutation_parity
from .reduction import (
    DensityMatrix,
    MeasurementBasis,
    OccupationBasis,
    ZERO_PROB_TOL,
)
from .states import ElementaryState, ParticleState, Statistics

MAX_PARTICLES = 5
MAX_DIM = 8


def _check_scale(n: int, dim: int) -> None:
    if n > MAX_PARTICLES or dim > MAX_DIM:
        raise OracleScaleError(
            f"labeled oracle is capped at {MAX_PARTICLES} particles over "
            f"dimension {MAX_DIM} (asked for {n} over {dim})"
        )


def _kron_chain(vectors: Sequence[np.ndarray]) -> np.ndarray:
    if not vectors:
        return np.ones(1, dtype=complex)
    return reduce(np.kron, [np.asarray(v, dtype=complex) for v in vectors])


def symmetrize(term: ElementaryState, statistics: Statistics) -> np.ndarray:
    """Sum of signed slot permutations of the term's product vector."""
    n = term.n
    if n == 0:
        return term.coeff * np.ones(1, dtype=complex)
    dim = term.kets[0].basis.dim
    _check_scale(n, dim)
    amps = [k.amps for k in term.kets]
    out = np.zeros(dim**n, dtype=complex)
    for perm in permutations(range(n)):
        sign = 1 if statistics is Statistics.BOSON else permutation_parity(perm)
        out += sign * _kron_chain([amps[p] for p in perm])
    return term.coeff * out


def symmetrize_state(phi: ParticleState) -> np.ndarray:
    vecs = [symmetrize(t, phi.statistics) for t in phi.terms]
    return np.sum(vecs, axis=0)


def oracle_inner(bra: ParticleState, ket: ParticleState) -> complex:
    """Labeled inner product; equals factorial(n) times the state algebra's."""
    if bra.statistics is not ket.statistics or bra.n != ket.n:
        raise ValueError("oracle_inner needs states of equal kind and size")
    return complex(np.vdot(symmetrize_state(bra), symmetrize_state(ket)))


def occupation_isometry(occ: OccupationBasis) -> np.ndarray:
    """Columns: normalized symmetrized vectors of each occupation entry.

    Satisfies T^dagger T = identity; maps labeled symmetric-sector vectors to
    occupation coordinates.
    """
    space = occ.space
    _check_scale(occ.sector, space.dim)
    cols = np.zeros((space.dim**occ.sector, occ.size), dtype=complex)
    kets = space.kets()
    for i, entry in enumerate(occ.occupations):
        term = ElementaryState(1.0, tuple(kets[j] for j in entry))
        v = symmetrize(term, occ.statistics)
        cols[:, i] = v / (math.sqrt(math.factorial(occ.sector)) * occ.norm_factors[i])
    return cols


def _labeled_normalized(phi: ParticleState) -> np.ndarray:
    vec = symmetrize_state(phi)
    nrm = np.linalg.norm(vec)
    if nrm < 1e-12:
        raise ValueError("state symmetrizes to zero")
    return vec / nrm


def oracle_trace(phi: ParticleState, basis: MeasurementBasis) -> DensityMatrix:
    return oracle_trace_iterate(phi, (basis,))


def oracle_trace_iterate(
    phi: ParticleState, bases: Sequence[MeasurementBasis]
) -> DensityMatrix:
    """One-particle traces computed entirely in the labeled space."""
    n = phi.n
    dim = phi.basis.dim
    _check_scale(n, dim)
    if len(bases) > n:
        raise ValueError(f"cannot trace {len(bases)} particles out of {n}")
    vec = _labeled_normalized(phi)
    rho = np.outer(vec, vec.conj())
    prob = 1.0
    m = n
    for mb in bases:
        if mb.space != phi.basis:
            raise ValueError("measurement basis lives in a different space")
        size = dim ** (m - 1)
        r = rho.reshape(dim, size, dim, size)
        nxt = np.zeros((size, size), dtype=complex)
        for psi in mb.kets:
            nxt += np.einsum("a,abcd,c->bd", psi.amps.conj(), r, psi.amps)
        stage = nxt.trace().real
        if stage <= ZERO_PROB_TOL:
            raise ZeroProbabilityError("basis never fires (labeled route)")
        rho = nxt / stage
        prob *= stage
        m -= 1
    occ = OccupationBasis(phi.basis, m, phi.statistics)
    t = occupation_isometry(occ)
    mat = t.conj().T @ rho @ t
    compressed = mat.trace().real
    if abs(compressed - 1.0) > 1e-9:
        raise ArithmeticError(
            f"labeled trace leaks outside the symmetric sector ({compressed:.12g})"
        )
    return DensityMatrix(occ, mat / compressed, prob)


# --- distinguishable-particle comparator ---------------------------------


@dataclass(frozen=True)
class LabeledState:
    """Superposition of labeled product terms; no exchange symmetry."""

    terms: tuple[tuple[complex, tuple[Ket, ...]], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("labeled state needs at least one term")
        n = len(self.terms[0][1])
        space = self.terms[0][1][0].basis
        for _, kets in self.terms:
            if len(kets) != n:
                raise ValueError("terms differ in slot count")
            for k in kets:
                if k.basis != space:
                    raise ValueError("kets live in different bases")
        _check_scale(n, space.dim)

    @property
    def n(self) -> int:
        return len(self.terms[0][1])

    @property
    def space(self) -> CanonicalBasis:
        return self.terms[0][1][0].basis

    def vector(self) -> np.ndarray:
        return np.sum(
            [c * _kron_chain([k.amps for k in kets]) for c, kets in self.terms],
            axis=0,
        )


def product_state(kets: Sequence[Ket], coeff: complex = 1.0) -> LabeledState:
    return LabeledState(((complex(coeff), tuple(kets)),))


class LabeledProductBasis:
    """Product basis of the remaining labeled slots (duck-typed for
    DensityMatrix: .size, .labels, .sector)."""

    def __init__(self, space: CanonicalBasis, slots: tuple[int, ...]):
        self.space = space
        self.slots = slots
        self.sector = len(slots)
        self.size = space.dim ** len(slots)
        sp = space.labels
        labels = []
        for flat in range(self.size):
            # decode mixed-radix, most significant slot first
            digits = []
            rem = flat
            for _ in slots:
                digits.append(rem % space.dim)
                rem //= space.dim
            digits.reverse()
            labels.append("⊗".join(sp[d] for d in digits) or "vac")
        self.labels = tuple(labels)

    def index_of(self, entries: Sequence[tuple[str, object]]) -> int:
        if len(entries) != self.sector:
            raise ValueError(f"need {self.sector} entries")
        flat = 0
        for mode, spin in entries:
            flat = flat * self.space.dim + self.space.index_of(mode, spin)
        return flat

    def unit_vector(self, entries: Sequence[tuple[str, object]]) -> np.ndarray:
        v = np.zeros(self.size, dtype=complex)
        v[self.index_of(entries)] = 1.0
        return v


@dataclass(frozen=True)
class SlotTrace:
    """Post-selected one-slot measurement: project slot ``slot`` (0-based,
    in the original labeling) onto each ket of ``basis``."""

    slot: int
    basis: MeasurementBasis


def distinguishable_trace(state: LabeledState, step: SlotTrace) -> DensityMatrix:
    return distinguishable_trace_iterate(state, (step,))


def distinguishable_trace_iterate(
    state: LabeledState, steps: Sequence[SlotTrace]
) -> DensityMatrix:
    """Iterated slot measurements on a labeled (distinguishable) state.

    Slot indices always refer to the original state; each measured slot is
    consumed. The result is a density matrix over the product basis of the
    remaining slots, with ``prob`` the product of stage probabilities.
    """
    space = state.space
    dim = space.dim
    vec = state.vector()
    nrm = np.linalg.norm(vec)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"state must be normalized (norm {nrm:.6g})")
    remaining = list(range(state.n))
    ensemble = [(1.0, (vec / nrm).reshape((dim,) * state.n))]
    prob = 1.0
    for step in steps:
        if step.slot not in remaining:
            raise ValueError(f"slot {step.slot} already consumed or out of range")
        if step.basis.space != space:
            raise ValueError("measurement basis lives in a different space")
        axis = remaining.index(step.slot)
        nxt = []
        stage = 0.0
        for w, tensor in ensemble:
            for psi in step.basis.kets:
                branch = np.tensordot(psi.amps.conj(), tensor, axes=([0], [axis]))
                bn = float(np.vdot(branch, branch).real)
                weight = w * bn
                if weight <= 1e-30:
                    continue
                nxt.append((weight, branch / math.sqrt(bn)))
                stage += weight
        if stage <= ZERO_PROB_TOL:
            raise ZeroProbabilityError(
                f"slot {step.slot} measurement never fires "
                f"(total probability {stage:.3g})"
            )
        ensemble = [(w / stage, t) for w, t in nxt]
        prob *= stage
        remaining.remove(step.slot)
    basis = LabeledProductBasis(space, tuple(remaining))
    mat = np.zeros((basis.size, basis.size), dtype=complex)
    for w, tensor in ensemble:
        v = tensor.reshape(basis.size)
        mat += w * np.outer(v, v.conj())
    return DensityMatrix(basis, mat / mat.trace().real, prob)
