"""Label-free many-particle state algebra.

An N-particle state is a linear combination of *elementary states*: unordered
lists of single-particle kets written as ``c|chi_1, ..., chi_N>``. There is no
tensor-product structure and no particle labels; the list order is presentation
only. Overlaps between elementary states are computed from the single-particle
Gram matrix ``M_ij = <bra_i|ket_j>`` as ``per(M)`` for bosons and ``det(M)``
for fermions, which equals 1/N! times the inner product of the corresponding
label-symmetrized tensors (see ``idqsim.comparator`` for that cross-check).

Removing one particle against a measurement ket ``psi`` maps
``|chi_1,...,chi_N>`` to ``sum_i eta^(i-1) <psi|chi_i> |...without chi_i...>``,
which is the projection underlying all partial traces in ``idqsim.reduction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import (
    EmptyStateError,
    IncompatibleStatesError,
    NullStateError,
)
from .hilbert import CanonicalBasis, Ket, sp_inner
from .permanents import determinant, permanent, permutation_parity

# States with squared norm at or below this are treated as the null vector.
NULL_NORM_SQ = 1e-24

# Relative tolerance for detecting proportional single-particle kets; a
# fermionic elementary state containing such a pair is exactly null, and the
# structural test keeps that exact instead of leaving determinant round-off.
_PROPORTIONAL_RTOL = 1e-12


class Statistics(Enum):
    """Exchange statistics: bosonic (+1) or fermionic (-1) transposition sign."""

    BOSON = "boson"
    FERMION = "fermion"

    @property
    def eta(self) -> int:
        return 1 if self is Statistics.BOSON else -1


@dataclass(frozen=True, eq=False)
class ElementaryState:
    """One term ``coeff * |kets[0], ..., kets[N-1]>`` over a shared basis."""

    coeff: complex
    kets: tuple[Ket, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "kets", tuple(self.kets))
        if not np.isfinite(self.coeff.real) or not np.isfinite(self.coeff.imag):
            raise ValueError("coefficient must be finite")
        bases = {k.basis for k in self.kets}
        if len(bases) > 1:
            raise IncompatibleStatesError("all kets of a term must share one basis")

    @property
    def n(self) -> int:
        return len(self.kets)


@dataclass(frozen=True, eq=False)
class ParticleState:
    """Linear combination of elementary states sharing particle number and statistics."""

    statistics: Statistics
    terms: tuple[ElementaryState, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("state needs at least one term")
        ns = {t.n for t in self.terms}
        if len(ns) > 1:
            raise IncompatibleStatesError(f"terms mix particle numbers {sorted(ns)}")
        bases = {t.kets[0].basis for t in self.terms if t.kets}
        if len(bases) > 1:
            raise IncompatibleStatesError("terms live in different bases")

    @property
    def n(self) -> int:
        return self.terms[0].n

    @property
    def basis(self) -> CanonicalBasis:
        for t in self.terms:
            if t.kets:
                return t.kets[0].basis
        raise EmptyStateError("zero-particle state carries no basis")

    # -- convenience algebra ------------------------------------------------

    def __add__(self, other: "ParticleState") -> "ParticleState":
        _require_compatible(self, other)
        return ParticleState(self.statistics, self.terms + other.terms)

    def __sub__(self, other: "ParticleState") -> "ParticleState":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "ParticleState":
        c = complex(scalar)
        return ParticleState(
            self.statistics,
            tuple(ElementaryState(t.coeff * c, t.kets) for t in self.terms),
        )

    __rmul__ = __mul__

    def __neg__(self) -> "ParticleState":
        return (-1.0) * self

    def inner(self, other: "ParticleState") -> complex:
        return inner(self, other)

    def norm(self) -> float:
        return norm(self)

    def normalized(self) -> "ParticleState":
        return normalize(self)

    def project(self, meas: Ket) -> "ParticleState":
        return project_single(meas, self)

    def __repr__(self) -> str:
        def term_repr(t: ElementaryState) -> str:
            body = ", ".join(repr(k).strip("|>") for k in t.kets)
            return f"({t.coeff:.6g})|{body}>"

        kind = self.statistics.value
        return " + ".join(term_repr(t) for t in self.terms) + f"  [{kind}s]"


def elementary(
    statistics: Statistics, kets: Sequence[Ket], coeff: complex = 1.0
) -> ParticleState:
    """Single-term state ``coeff |kets...>``."""
    return ParticleState(statistics, (ElementaryState(coeff, tuple(kets)),))


def _require_compatible(a: ParticleState, b: ParticleState) -> None:
    if a.statistics is not b.statistics:
        raise IncompatibleStatesError(
            f"statistics differ: {a.statistics.value} vs {b.statistics.value}"
        )
    if a.n != b.n:
        raise IncompatibleStatesError(f"particle numbers differ: {a.n} vs {b.n}")
    if a.n > 0 and a.basis != b.basis:
        raise IncompatibleStatesError("states live in different bases")


def _has_proportional_pair(kets: Sequence[Ket]) -> bool:
    # Cauchy-Schwarz saturation <=> proportionality.
    for i in range(len(kets)):
        ni = float(np.vdot(kets[i].amps, kets[i].amps).real)
        for j in range(i + 1, len(kets)):
            nj = float(np.vdot(kets[j].amps, kets[j].amps).real)
            ov = abs(np.vdot(kets[i].amps, kets[j].amps)) ** 2
            if abs(ov - ni * nj) <= _PROPORTIONAL_RTOL * max(ni * nj, 1e-300):
                return True
    return False


def overlap_elementary(
    bra: ElementaryState, ket: ElementaryState, statistics: Statistics
) -> complex:
    """Overlap of two elementary states: conj(c_bra) c_ket per/det of the Gram matrix."""
    if bra.n != ket.n:
        raise IncompatibleStatesError(f"particle numbers differ: {bra.n} vs {ket.n}")
    n = bra.n
    if n == 0:
        return np.conj(bra.coeff) * ket.coeff
    if statistics is Statistics.FERMION and (
        _has_proportional_pair(bra.kets) or _has_proportional_pair(ket.kets)
    ):
        return 0.0 + 0.0j  # Pauli exclusion, kept exact
    gram = np.empty((n, n), dtype=complex)
    for i, b in enumerate(bra.kets):
        for j, k in enumerate(ket.kets):
            gram[i, j] = sp_inner(b, k)
    kernel = permanent(gram) if statistics is Statistics.BOSON else determinant(gram)
    return complex(np.conj(bra.coeff) * ket.coeff * kernel)


def inner(psi: ParticleState, phi: ParticleState) -> complex:
    """Sesquilinear inner product, extended term-by-term."""
    _require_compatible(psi, phi)
    total = 0.0 + 0.0j
    for tb in psi.terms:
        for tk in phi.terms:
            total += overlap_elementary(tb, tk, psi.statistics)
    return complex(total)


def norm(psi: ParticleState) -> float:
    """Norm induced by ``inner``; tiny negative round-off is clamped to zero."""
    return float(np.sqrt(max(inner(psi, psi).real, 0.0)))


def normalize(psi: ParticleState) -> ParticleState:
    n2 = max(inner(psi, psi).real, 0.0)
    if n2 <= NULL_NORM_SQ:
        raise NullStateError("state has zero norm and cannot be normalized")
    return psi * (1.0 / np.sqrt(n2))


def project_single(meas: Ket, phi: ParticleState) -> ParticleState:
    """Remove one particle against the normalized measurement ket ``meas``.

    The squared norm of the result is the unnormalized weight of the outcome;
    see ``idqsim.reduction`` for the probability gauge.
    """
    if phi.n == 0:
        raise EmptyStateError("cannot project a zero-particle state")
    if abs(meas.norm() - 1.0) > 1e-8:
        raise ValueError("measurement ket must be normalized")
    if meas.basis != phi.basis:
        raise IncompatibleStatesError("measurement ket and state bases differ")
    out: list[ElementaryState] = []
    for term in phi.terms:
        for i, chi in enumerate(term.kets):
            amp = sp_inner(meas, chi)
            if amp == 0:
                continue
            phase = _removal_phase(phi.statistics, i)
            out.append(
                ElementaryState(
                    term.coeff * phase * amp, term.kets[:i] + term.kets[i + 1 :]
                )
            )
    merged = _merge_terms(phi.statistics, out)
    if not merged:
        # nothing fired: the null state of the (N-1)-particle sector
        filler = phi.basis.kets()[0]
        merged = (ElementaryState(0.0, (filler,) * (phi.n - 1)),)
    return ParticleState(phi.statistics, merged)


def _removal_phase(statistics: Statistics, i: int) -> int:
    """Exchange sign picked up by pulling entry ``i`` (0-based) to the front."""
    return 1 if (statistics.eta == 1 or i % 2 == 0) else -1


def _merge_terms(
    statistics: Statistics, terms: Sequence[ElementaryState]
) -> tuple[ElementaryState, ...]:
    """Combine terms whose ket lists are equal up to permutation (and sign)."""
    acc: dict[tuple[bytes, ...], list] = {}
    for t in terms:
        raw = [k.amps.tobytes() for k in t.kets]
        order = sorted(range(len(raw)), key=raw.__getitem__)
        if statistics is Statistics.FERMION:
            if len(set(raw)) < len(raw):
                continue  # two identical kets: exactly null
            sign = permutation_parity(order)
        else:
            sign = 1
        key = tuple(raw[i] for i in order)
        coeff = sign * t.coeff
        if key in acc:
            acc[key][0] += coeff
        else:
            acc[key] = [coeff, tuple(t.kets[i] for i in order)]
    return tuple(ElementaryState(c, kets) for c, kets in acc.values() if c != 0)


def states_close(a: ParticleState, b: ParticleState, tol: float = 1e-10) -> bool:
    """Equality as states: the norm of the difference is below tol."""
    try:
        _require_compatible(a, b)
    except IncompatibleStatesError:
        return False
    d2 = inner(a, a).real + inner(b, b).real - 2.0 * inner(a, b).real
    return float(np.sqrt(max(d2, 0.0))) < tol
