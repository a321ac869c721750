"""Entropy and mixedness diagnostics on reduced density matrices.

Entanglement between identical particles is operational here: a bipartition is
a plan of one-particle traces, and the entanglement monotone is the von
Neumann entropy (in bits) of what remains. A state is genuinely multipartite
entangled when every planned bipartition leaves a mixed remainder.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NotPSDError
from .reduction import DensityMatrix, MeasurementBasis, partial_trace_iterate
from .states import ParticleState

EIGEN_CLAMP = 1e-10
RECONSTRUCTION_TOL = 1e-9
MIXED_THRESHOLD_BITS = 1e-6


def eigenvalues_hermitian(mat: np.ndarray) -> np.ndarray:
    """Descending real eigenvalues of a Hermitian matrix.

    Tiny negative values (>= -1e-10) are clamped to zero; anything lower
    raises NotPSDError. The eigendecomposition is checked by reconstruction.
    """
    m = np.asarray(mat, dtype=complex)
    evals, evecs = np.linalg.eigh(m)
    resid = np.linalg.norm(m - (evecs * evals) @ evecs.conj().T)
    if resid > RECONSTRUCTION_TOL * max(1.0, np.linalg.norm(m)):
        raise ArithmeticError(f"eigendecomposition residual {resid:.3g}")
    lo = evals.min()
    if lo < -EIGEN_CLAMP:
        raise NotPSDError(f"eigenvalue {lo:.3g} below -{EIGEN_CLAMP}")
    return np.clip(evals, 0.0, None)[::-1]


def spectrum(rho: DensityMatrix) -> np.ndarray:
    return eigenvalues_hermitian(rho.mat)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -sum p log2 p, with 0 log 0 = 0. In bits."""
    p = spectrum(rho)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum()) + 0.0  # flatten -0.0 for pure states


def purity(rho: DensityMatrix) -> float:
    """Tr rho^2; equals 1 exactly for pure states, 1/d for maximal mixing."""
    return float(np.vdot(rho.mat, rho.mat).real)


@dataclass(frozen=True)
class TracePlan:
    """One bipartition to probe: which bases to trace toward each remainder.

    ``one_stages`` leaves a one-particle remainder, ``two_stages`` a
    two-particle one; either may be None to skip that side. Plans that do not
    split the state into complementary parts (e.g. a conditional two-step
    measurement) should set ``bipartition=False`` so they do not vote on the
    genuine-multipartite flag.
    """

    label: str
    one_stages: Optional[tuple[MeasurementBasis, ...]] = None
    two_stages: Optional[tuple[MeasurementBasis, ...]] = None
    bipartition: bool = True

    def __post_init__(self):
        if self.one_stages is None and self.two_stages is None:
            raise ValueError(f"plan {self.label!r} traces nothing")
        for name, stages in (("one", self.one_stages), ("two", self.two_stages)):
            if stages is not None:
                object.__setattr__(self, f"{name}_stages", tuple(stages))


@dataclass(frozen=True)
class BipartitionReport:
    label: str
    mixed: bool
    entropy_one: Optional[float] = None
    entropy_two: Optional[float] = None
    purity_one: Optional[float] = None
    purity_two: Optional[float] = None
    rho_one: Optional[DensityMatrix] = None
    rho_two: Optional[DensityMatrix] = None
    bipartition: bool = True


@dataclass(frozen=True)
class EntanglementReport:
    bipartitions: tuple[BipartitionReport, ...]
    genuine_multipartite: Optional[bool]

    def __getitem__(self, label: str) -> BipartitionReport:
        for b in self.bipartitions:
            if b.label == label:
                return b
        raise KeyError(label)


def analyze(
    phi: ParticleState,
    plans: Sequence[TracePlan],
    mixed_threshold: float = MIXED_THRESHOLD_BITS,
) -> EntanglementReport:
    """Run every trace plan and aggregate the mixedness verdicts.

    A bipartition counts as mixed when every entropy it produced exceeds
    ``mixed_threshold`` bits. The genuine-multipartite flag is the AND over
    bipartition plans, or None when no plan is a bipartition.
    """
    labels = [p.label for p in plans]
    if len(set(labels)) != len(labels):
        raise ValueError("trace plan labels must be distinct")
    reports = []
    for plan in plans:
        entries: dict[str, object] = {}
        entropies = []
        for side, stages in (("one", plan.one_stages), ("two", plan.two_stages)):
            if stages is None:
                continue
            rho = partial_trace_iterate(phi, stages)
            s = von_neumann_entropy(rho)
            entropies.append(s)
            entries[f"rho_{side}"] = rho
            entries[f"entropy_{side}"] = s
            entries[f"purity_{side}"] = purity(rho)
        mixed = bool(entropies) and all(s > mixed_threshold for s in entropies)
        reports.append(
            BipartitionReport(
                label=plan.label,
                mixed=mixed,
                bipartition=plan.bipartition,
                **entries,
            )
        )
    votes = [r.mixed for r in reports if r.bipartition]
    genuine = all(votes) if votes else None
    return EntanglementReport(tuple(reports), genuine)
