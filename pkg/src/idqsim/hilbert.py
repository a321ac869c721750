"""Single-particle Hilbert space: spatial modes carrying a two-level pseudospin.

Spatial regions are abstract orthonormal labels (overlaps between distinct
modes are exactly zero), so a single-particle state is just a complex
coordinate vector over the canonical (mode, spin) frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import BasisMismatchError, DegenerateKetError

# Canonical bases are exact; this slack only absorbs rounding in
# user-supplied superpositions.
ORTHONORMALITY_TOL = 1e-10


class Spin(Enum):
    UP = "up"
    DOWN = "down"

    @property
    def arrow(self) -> str:
        return "↑" if self is Spin.UP else "↓"


@dataclass(frozen=True)
class Mode:
    """A named spatial mode with its position in the canonical ordering."""

    name: str
    index: int


class CanonicalBasis:
    """Orthonormal (mode, spin) frame, ordered mode-major with spin up before down."""

    def __init__(self, mode_names: Sequence[str]):
        names = tuple(mode_names)
        if not names:
            raise ValueError("need at least one mode")
        if len(set(names)) != len(names):
            raise ValueError(f"mode names must be unique, got {names!r}")
        self.modes: tuple[Mode, ...] = tuple(Mode(nm, i) for i, nm in enumerate(names))
        self.entries: tuple[tuple[Mode, Spin], ...] = tuple(
            (m, s) for m in self.modes for s in (Spin.UP, Spin.DOWN)
        )
        self.dim: int = len(self.entries)
        self._index = {(m.name, s): j for j, (m, s) in enumerate(self.entries)}

    @property
    def mode_names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.modes)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(m.name + s.arrow for m, s in self.entries)

    def index_of(self, mode: str, spin: Spin) -> int:
        try:
            return self._index[(mode, spin)]
        except KeyError:
            raise KeyError(f"no basis entry ({mode!r}, {spin})") from None

    def ket(self, mode: str, spin: Spin) -> "Ket":
        """Canonical basis ket for one (mode, spin) entry."""
        amps = np.zeros(self.dim, dtype=complex)
        amps[self.index_of(mode, spin)] = 1.0
        return Ket(self, amps)

    def kets(self) -> tuple["Ket", ...]:
        """The full canonical basis as kets, in canonical order."""
        return tuple(self.ket(m.name, s) for m, s in self.entries)

    def superposition(self, components: Iterable[tuple[str, Spin, complex]]) -> "Ket":
        """Build an (unnormalized) ket from (mode, spin, amplitude) triples."""
        amps = np.zeros(self.dim, dtype=complex)
        for mode, spin, amp in components:
            amps[self.index_of(mode, spin)] += amp
        return Ket(self, amps)

    def __eq__(self, other) -> bool:
        return isinstance(other, CanonicalBasis) and self.mode_names == other.mode_names

    def __hash__(self) -> int:
        return hash(self.mode_names)

    def __repr__(self) -> str:
        return f"CanonicalBasis(modes={self.mode_names!r})"


@dataclass(frozen=True, eq=False)
class Ket:
    """A single-particle state: a complex amplitude vector over a canonical basis."""

    basis: CanonicalBasis
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).copy()
        if amps.shape != (self.basis.dim,):
            raise BasisMismatchError(
                f"amplitude vector has shape {amps.shape}, basis dim is {self.basis.dim}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "Ket":
        """Unit-norm copy; direction and phase preserved."""
        n = self.norm()
        if n < 1e-12:
            raise DegenerateKetError("cannot normalize a zero ket")
        return Ket(self.basis, self.amps / n)

    def __add__(self, other: "Ket") -> "Ket":
        _require_same_basis(self, other)
        return Ket(self.basis, self.amps + other.amps)

    def __sub__(self, other: "Ket") -> "Ket":
        _require_same_basis(self, other)
        return Ket(self.basis, self.amps - other.amps)

    def __mul__(self, scalar) -> "Ket":
        return Ket(self.basis, self.amps * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Ket":
        return Ket(self.basis, self.amps / complex(scalar))

    def __neg__(self) -> "Ket":
        return Ket(self.basis, -self.amps)

    def __repr__(self) -> str:
        parts = []
        for j, a in enumerate(self.amps):
            if abs(a) > 1e-12:
                coeff = "" if a == 1 else f"({a:.4g})"
                parts.append(f"{coeff}{self.basis.labels[j]}"
                             if coeff else self.basis.labels[j])
        body = " + ".join(parts) if parts else "0"
        return f"|{body}>"


def _require_same_basis(a: Ket, b: Ket) -> None:
    if a.basis != b.basis:
        raise BasisMismatchError(
            f"kets live in different bases: {a.basis!r} vs {b.basis!r}"
        )


def sp_inner(bra: Ket, ket: Ket) -> complex:
    """Sesquilinear inner product <bra|ket>, antilinear in the bra."""
    _require_same_basis(bra, ket)
    return complex(np.vdot(bra.amps, ket.amps))


def orthonormality_defect(kets: Sequence[Ket]) -> tuple[float, tuple[int, int]]:
    """Worst deviation |<i|j> - delta_ij| over all pairs, with the offending pair."""
    if not kets:
        raise ValueError("need at least one ket")
    worst, pair = 0.0, (0, 0)
    for i, ki in enumerate(kets):
        for j, kj in enumerate(kets):
            dev = abs(sp_inner(ki, kj) - (1.0 if i == j else 0.0))
            if dev > worst:
                worst, pair = dev, (i, j)
    return worst, pair


def is_orthonormal_set(kets: Sequence[Ket], tol: float = ORTHONORMALITY_TOL) -> bool:
    """True iff all pairwise inner products match the identity within tol."""
    defect, _ = orthonormality_defect(kets)
    return defect <= tol
