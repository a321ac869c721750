"""Executable invariants of the whole stack, with seeded randomness.

Each property draws its own `numpy` generator from ``default_rng([seed, k])``
(k = its position in the fixed run order), so a given seed always replays the
exact same states and bases. ``run_all`` never raises: a property that throws
is reported as failed with the exception text.

The random builders at the bottom are public on purpose — the test suite
reuses them so that "the tests" and "the verifier" disagree only if the
library itself is inconsistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .comparator import (
    LabeledState,
    SlotTrace,
    distinguishable_trace_iterate,
    occupation_isometry,
    oracle_inner,
    oracle_trace,
    oracle_trace_iterate,
    product_state,
)
from .entanglement import eigenvalues_hermitian, purity, spectrum, von_neumann_entropy
from .hilbert import CanonicalBasis, Ket, Spin, orthonormality_defect, sp_inner
from .permanents import permanent, permanent_naive, permanent_ryser
from .reduction import (
    MeasurementBasis,
    OccupationBasis,
    coords,
    partial_trace_iterate,
    partial_trace_one,
    probability_of,
)
from .states import (
    ElementaryState,
    ParticleState,
    Statistics,
    elementary,
    inner,
    normalize,
    project_single,
)

BOTH = (Statistics.BOSON, Statistics.FERMION)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str


def _ensure(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


def _space() -> CanonicalBasis:
    return CanonicalBasis(("A", "B", "C"))


# --- random builders (public; reused by the test suite) -------------------


def random_ket(rng: np.random.Generator, space: CanonicalBasis) -> Ket:
    v = rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)
    return Ket(space, v / np.linalg.norm(v))


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    return q * ph.conj()


def random_state(
    rng: np.random.Generator,
    space: CanonicalBasis,
    n: int,
    statistics: Statistics,
    n_terms: int = 2,
) -> ParticleState:
    """Normalized random combination of elementary states."""
    while True:
        terms = []
        for _ in range(n_terms):
            kets = tuple(random_ket(rng, space) for _ in range(n))
            c = complex(rng.normal(), rng.normal())
            terms.append(ElementaryState(c, kets))
        psi = ParticleState(statistics, tuple(terms))
        if inner(psi, psi).real > 1e-6:
            return normalize(psi)


def random_measurement_basis(
    rng: np.random.Generator, space: CanonicalBasis, size: Optional[int] = None
) -> MeasurementBasis:
    """Orthonormal measurement set from a Haar-ish unitary; complete if
    ``size`` is None."""
    u = random_unitary(rng, space.dim)
    k = space.dim if size is None else size
    return MeasurementBasis(tuple(Ket(space, u[:, j]) for j in range(k)))


def random_product_labeled(
    rng: np.random.Generator, space: CanonicalBasis, n: int
) -> LabeledState:
    return product_state([random_ket(rng, space) for _ in range(n)])


# --- named benchmark states ------------------------------------------------


def _overlap_state(space: CanonicalBasis) -> ParticleState:
    a_dn = space.ket("A", Spin.DOWN)
    a_up = space.ket("A", Spin.UP)
    return elementary(Statistics.BOSON, (a_dn, a_dn, a_up), 1 / math.sqrt(2))


def _ghz_state(space: CanonicalBasis) -> ParticleState:
    dn = [space.ket(m, Spin.DOWN) for m in "ABC"]
    up = [space.ket(m, Spin.UP) for m in "ABC"]
    s = elementary(Statistics.BOSON, dn) + elementary(Statistics.BOSON, up)
    return normalize(s)


def _separated_state(space: CanonicalBasis) -> ParticleState:
    kets = (
        space.ket("A", Spin.DOWN),
        space.ket("B", Spin.DOWN),
        space.ket("C", Spin.UP),
    )
    return elementary(Statistics.BOSON, kets)


# --- properties -------------------------------------------------------------


def _prop_single_particle_inner(rng) -> str:
    space = _space()
    worst = 0.0
    for _ in range(20):
        a, b, c = (random_ket(rng, space) for _ in range(3))
        x, y = complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal())
        lhs = sp_inner(a, Ket(space, x * b.amps + y * c.amps))
        rhs = x * sp_inner(a, b) + y * sp_inner(a, c)
        worst = max(worst, abs(lhs - rhs))
        worst = max(worst, abs(sp_inner(a, b) - np.conj(sp_inner(b, a))))
    _ensure(worst < 1e-12, f"sesquilinearity violated by {worst:.3g}")
    return f"20 random triples, worst deviation {worst:.3g}"


def _prop_canonical_orthonormality(rng) -> str:
    space = _space()
    defect, pair = orthonormality_defect(space.kets())
    _ensure(defect == 0.0, f"canonical defect {defect:.3g} at {pair}")
    worst = 0.0
    for _ in range(5):
        mb = random_measurement_basis(rng, space)
        d, _ = orthonormality_defect(mb.kets)
        worst = max(worst, d)
    _ensure(worst <= 1e-10, f"remixed basis defect {worst:.3g}")
    return f"canonical defect 0, remixed worst {worst:.3g}"


def _prop_exchange_symmetry(rng) -> str:
    space = _space()
    worst = 0.0
    for stats in BOTH:
        for _ in range(15):
            n = int(rng.integers(2, 4))
            kets = [random_ket(rng, space) for _ in range(n)]
            i, j = sorted(rng.choice(n, size=2, replace=False))
            swapped = list(kets)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            bra = ParticleState(
                stats, (ElementaryState(1.0, tuple(random_ket(rng, space) for _ in range(n))),)
            )
            lhs = inner(bra, elementary(stats, swapped))
            rhs = stats.eta * inner(bra, elementary(stats, kets))
            worst = max(worst, abs(lhs - rhs))
    _ensure(worst < 1e-10, f"exchange sign violated by {worst:.3g}")
    return f"30 random transpositions, worst deviation {worst:.3g}"


def _prop_pauli_exclusion(rng) -> str:
    space = _space()
    for _ in range(10):
        k = random_ket(rng, space)
        other = random_ket(rng, space)
        phase = np.exp(2j * np.pi * rng.random())
        doubled = elementary(Statistics.FERMION, (k, other, k * phase))
        _ensure(doubled.norm() == 0.0, "repeated fermion ket has nonzero norm")
        _ensure(
            inner(doubled, random_state(rng, space, 3, Statistics.FERMION)) == 0.0,
            "repeated fermion ket has nonzero overlap",
        )
    return "10 proportional-pair states, norm and overlaps exactly 0"


def _prop_permanent_consistency(rng) -> str:
    worst = 0.0
    for n in range(1, 7):
        for _ in range(4):
            m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            a, b = permanent_ryser(m), permanent_naive(m)
            worst = max(worst, abs(a - b) / max(abs(b), 1.0))
    for n in range(1, 6):
        _ensure(
            abs(permanent(np.eye(n)) - 1.0) < 1e-12, f"per(I_{n}) != 1"
        )
        _ensure(
            abs(permanent(np.ones((n, n))) - math.factorial(n)) < 1e-9,
            f"per(ones_{n}) != {n}!",
        )
    _ensure(worst < 1e-10, f"Ryser disagrees with the definition by {worst:.3g}")
    return f"n=1..6 random matrices, worst relative deviation {worst:.3g}"


def _prop_oracle_inner_factorial(rng) -> str:
    space = _space()
    checked, worst = 0, 0.0
    for stats in BOTH:
        for _ in range(30):
            n = int(rng.integers(2, 4))
            a = random_state(rng, space, n, stats)
            b = random_state(rng, space, n, stats)
            lhs = oracle_inner(a, b)
            rhs = math.factorial(n) * inner(a, b)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1.0))
            checked += 1
    # elementary pairs too, unnormalized on purpose
    for stats in BOTH:
        for _ in range(25):
            n = int(rng.integers(1, 4))
            a = elementary(stats, [random_ket(rng, space) for _ in range(n)], 1.3 - 0.4j)
            b = elementary(stats, [random_ket(rng, space) for _ in range(n)], -0.7 + 2.1j)
            lhs = oracle_inner(a, b)
            rhs = math.factorial(n) * inner(a, b)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1.0))
            checked += 1
    _ensure(worst < 1e-10, f"labeled/label-free ratio off by {worst:.3g}")
    return f"{checked} state pairs, worst relative deviation {worst:.3g}"


def _prop_oracle_trace_agreement(rng) -> str:
    space = _space()
    checked, worst = 0, 0.0
    for stats in BOTH:
        for _ in range(12):
            n = int(rng.integers(2, 4))
            phi = random_state(rng, space, n, stats)
            size = None if rng.random() < 0.5 else int(rng.integers(1, space.dim))
            mb = random_measurement_basis(rng, space, size)
            try:
                ours = partial_trace_one(phi, mb)
            except Exception:
                continue  # zero-probability draws are legitimate skips
            ref = oracle_trace(phi, mb)
            worst = max(worst, float(np.abs(ours.mat - ref.mat).max()))
            worst = max(worst, abs(ours.prob - ref.prob))
            checked += 1
    # iterated traces
    for stats in BOTH:
        for _ in range(6):
            phi = random_state(rng, space, 3, stats)
            stages = tuple(
                random_measurement_basis(rng, space, int(rng.integers(2, space.dim)))
                for _ in range(2)
            )
            try:
                ours = partial_trace_iterate(phi, stages)
            except Exception:
                continue
            ref = oracle_trace_iterate(phi, stages)
            worst = max(worst, float(np.abs(ours.mat - ref.mat).max()))
            worst = max(worst, abs(ours.prob - ref.prob))
            checked += 1
    _ensure(checked >= 20, f"only {checked} comparable draws")
    _ensure(worst < 1e-10, f"labeled and label-free traces differ by {worst:.3g}")
    return f"{checked} reductions compared, worst entry deviation {worst:.3g}"


def _prop_projection_completeness(rng) -> str:
    space = _space()
    worst = 0.0
    for stats in BOTH:
        for _ in range(8):
            n = int(rng.integers(1, 4))
            phi = random_state(rng, space, n, stats)
            for mb in (MeasurementBasis.full(space), random_measurement_basis(rng, space)):
                total = sum(
                    inner(p, p).real
                    for p in (project_single(k, phi) for k in mb.kets)
                )
                worst = max(worst, abs(total - n * inner(phi, phi).real))
    _ensure(worst < 1e-10, f"projection completeness violated by {worst:.3g}")
    return f"complete bases reproduce N times the squared norm, worst {worst:.3g}"


def _prop_probability_complete(rng) -> str:
    space = _space()
    worst = 0.0
    for stats in BOTH:
        for _ in range(8):
            n = int(rng.integers(1, 4))
            phi = random_state(rng, space, n, stats)
            for mb in (MeasurementBasis.full(space), random_measurement_basis(rng, space)):
                worst = max(worst, abs(probability_of(phi, mb) - 1.0))
    _ensure(worst < 1e-10, f"complete-basis probability off by {worst:.3g}")
    return f"32 complete-basis probabilities equal 1, worst deviation {worst:.3g}"


def _prop_probability_additivity(rng) -> str:
    space = _space()
    worst = 0.0
    for stats in BOTH:
        for _ in range(8):
            phi = random_state(rng, space, int(rng.integers(1, 4)), stats)
            mb = random_measurement_basis(rng, space)
            cut = int(rng.integers(1, space.dim))
            left = MeasurementBasis(mb.kets[:cut])
            right = MeasurementBasis(mb.kets[cut:])
            split = probability_of(phi, left) + probability_of(phi, right)
            worst = max(worst, abs(split - probability_of(phi, mb)))
    _ensure(worst < 1e-10, f"additivity violated by {worst:.3g}")
    return f"16 random partitions, worst deviation {worst:.3g}"


def _prop_trace_unitary_invariance(rng) -> str:
    space = _space()
    worst = 0.0
    for stats in BOTH:
        for _ in range(6):
            phi = random_state(rng, space, int(rng.integers(2, 4)), stats)
            base = random_measurement_basis(rng, space)
            u = random_unitary(rng, space.dim)
            mixed_kets = tuple(
                Ket(space, np.sum([u[j, i] * base.kets[j].amps for j in range(space.dim)], axis=0))
                for i in range(space.dim)
            )
            remixed = MeasurementBasis(mixed_kets)
            r1 = partial_trace_one(phi, base)
            r2 = partial_trace_one(phi, remixed)
            worst = max(worst, float(np.abs(r1.mat - r2.mat).max()))
            worst = max(worst, abs(r1.prob - r2.prob))
    _ensure(worst < 1e-10, f"complete-basis trace moved under remix by {worst:.3g}")
    return f"12 unitary remixes leave the reduced state fixed, worst {worst:.3g}"


def _prop_density_matrix_contracts(rng) -> str:
    space = _space()
    worst_h, worst_t, lowest = 0.0, 0.0, 0.0
    for stats in BOTH:
        for _ in range(6):
            phi = random_state(rng, space, 3, stats)
            mb = random_measurement_basis(rng, space, int(rng.integers(2, space.dim + 1)))
            try:
                rho = partial_trace_one(phi, mb)
            except Exception:
                continue
            worst_h = max(worst_h, float(np.abs(rho.mat - rho.mat.conj().T).max()))
            worst_t = max(worst_t, abs(complex(rho.mat.trace()) - 1.0))
            lowest = min(lowest, float(np.linalg.eigvalsh(rho.mat).min()))
    _ensure(worst_h < 1e-10, f"Hermiticity violated by {worst_h:.3g}")
    _ensure(worst_t < 1e-10, f"trace off by {worst_t:.3g}")
    _ensure(lowest > -1e-10, f"negative eigenvalue {lowest:.3g}")
    return (
        f"hermiticity {worst_h:.3g}, trace {worst_t:.3g}, lowest eigenvalue {lowest:.3g}"
    )


def _prop_localized_product_purity(rng) -> str:
    space = _space()
    worst = 0.0
    for stats in BOTH:
        for _ in range(8):
            spins = [Spin.UP if rng.random() < 0.5 else Spin.DOWN for _ in range(3)]
            kets = tuple(space.ket(m, s) for m, s in zip("ABC", spins))
            phi = normalize(elementary(stats, kets))
            mode = "ABC"[int(rng.integers(3))]
            rho = partial_trace_one(phi, MeasurementBasis.localized(space, mode))
            worst = max(worst, abs(purity(rho) - 1.0))
            worst = max(worst, von_neumann_entropy(rho))
    _ensure(worst < 1e-9, f"localized remainder mixed by {worst:.3g}")
    return f"16 spatially separated products stay pure, worst deviation {worst:.3g}"


def _prop_distinguishable_purity(rng) -> str:
    space = _space()
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(2, 4))
        state = random_product_labeled(rng, space, n)
        slots = list(rng.permutation(n))[: int(rng.integers(1, n))]
        steps = []
        for s in slots:
            size = None if rng.random() < 0.5 else int(rng.integers(1, space.dim))
            steps.append(SlotTrace(int(s), random_measurement_basis(rng, space, size)))
        try:
            rho = distinguishable_trace_iterate(state, steps)
        except Exception:
            continue
        worst = max(worst, abs(purity(rho) - 1.0))
    _ensure(worst < 1e-9, f"labeled product left mixed by {worst:.3g}")
    return f"product states stay pure under slot traces, worst deviation {worst:.3g}"


def _prop_entropy_unitary_invariance(rng) -> str:
    worst = 0.0
    for d in (2, 3, 6):
        for _ in range(5):
            evals = rng.random(d)
            evals /= evals.sum()
            u = random_unitary(rng, d)
            m = (u * evals) @ u.conj().T
            s_direct = -(evals * np.log2(evals)).sum()
            p = eigenvalues_hermitian(m)
            p = p[p > 0]
            s_via = -(p * np.log2(p)).sum()
            worst = max(worst, abs(s_direct - s_via))
    _ensure(worst < 1e-9, f"entropy moved under conjugation by {worst:.3g}")
    return f"15 spectra survive unitary conjugation, worst deviation {worst:.3g}"


def _prop_entropy_purity_consistency(rng) -> str:
    space = _space()
    for stats in BOTH:
        for _ in range(6):
            phi = random_state(rng, space, 3, stats)
            mb = random_measurement_basis(rng, space)
            rho = partial_trace_one(phi, mb)
            s, p = von_neumann_entropy(rho), purity(rho)
            d = rho.basis.size
            _ensure(1.0 / d - 1e-9 <= p <= 1.0 + 1e-9, f"purity {p} out of range")
            if abs(p - 1.0) < 1e-12:
                _ensure(s < 1e-9, f"pure state with entropy {s:.3g}")
            if s < 1e-12:
                _ensure(abs(p - 1.0) < 1e-9, f"zero entropy but purity {p}")
    return "purity in [1/d, 1]; purity 1 and entropy 0 coincide"


def _prop_entropy_concavity(rng) -> str:
    worst = 0.0
    for d in (2, 4):
        for _ in range(8):
            def rand_rho():
                u = random_unitary(rng, d)
                ev = rng.random(d)
                ev /= ev.sum()
                return (u * ev) @ u.conj().T

            r1, r2 = rand_rho(), rand_rho()
            lam = float(rng.random())
            mix = lam * r1 + (1 - lam) * r2

            def ent(m):
                p = eigenvalues_hermitian(m)
                p = p[p > 0]
                return -(p * np.log2(p)).sum()

            gap = ent(mix) - lam * ent(r1) - (1 - lam) * ent(r2)
            worst = min(worst, gap)
    _ensure(worst > -1e-9, f"concavity violated by {worst:.3g}")
    return f"16 random mixtures, smallest concavity gap {worst:.3g}"


def _prop_coords_isometry(rng) -> str:
    space = _space()
    worst = 0.0
    for stats in BOTH:
        for _ in range(10):
            n = int(rng.integers(1, 4))
            a = random_state(rng, space, n, stats)
            b = random_state(rng, space, n, stats)
            occ = OccupationBasis(space, n, stats)
            lhs = np.vdot(coords(a, occ), coords(b, occ))
            worst = max(worst, abs(lhs - inner(a, b)))
        for sector in (1, 2, 3):
            occ = OccupationBasis(space, sector, stats)
            t = occupation_isometry(occ)
            worst = max(
                worst,
                float(np.abs(t.conj().T @ t - np.eye(occ.size)).max()),
            )
    _ensure(worst < 1e-10, f"occupation coordinates distort overlaps by {worst:.3g}")
    return f"coordinate map preserves inner products, worst deviation {worst:.3g}"


def _prop_benchmark_reductions(rng) -> str:
    space = _space()
    target = math.log2(3) - 2.0 / 3.0
    checks = []

    phi = _overlap_state(space)
    loc = MeasurementBasis.localized(space, "A")
    rho2 = partial_trace_one(phi, loc)
    rho1 = partial_trace_iterate(phi, (loc, loc))
    for rho in (rho2, rho1):
        checks.append(abs(von_neumann_entropy(rho) - target))
        ev = spectrum(rho)
        checks.append(float(np.abs(ev[:2] - np.array([2 / 3, 1 / 3])).max()))
        checks.append(float(np.abs(ev[2:]).max()) if ev.size > 2 else 0.0)

    ghz = _ghz_state(space)
    for mode in "ABC":
        rho = partial_trace_one(ghz, MeasurementBasis.localized(space, mode))
        checks.append(abs(von_neumann_entropy(rho) - 1.0))

    sep = _separated_state(space)
    rho = partial_trace_one(sep, MeasurementBasis.localized(space, "C"))
    checks.append(abs(purity(rho) - 1.0))

    worst = max(checks)
    _ensure(worst < 1e-9, f"benchmark numbers off by {worst:.3g}")
    return f"benchmark entropies and spectra reproduced, worst deviation {worst:.3g}"


_PROPERTIES: tuple[tuple[str, Callable], ...] = (
    ("single-particle-inner-product", _prop_single_particle_inner),
    ("canonical-orthonormality", _prop_canonical_orthonormality),
    ("exchange-symmetry", _prop_exchange_symmetry),
    ("pauli-exclusion", _prop_pauli_exclusion),
    ("permanent-consistency", _prop_permanent_consistency),
    ("oracle-inner-factorial", _prop_oracle_inner_factorial),
    ("oracle-trace-agreement", _prop_oracle_trace_agreement),
    ("projection-completeness", _prop_projection_completeness),
    ("probability-complete-basis", _prop_probability_complete),
    ("probability-additivity", _prop_probability_additivity),
    ("trace-unitary-invariance", _prop_trace_unitary_invariance),
    ("density-matrix-contracts", _prop_density_matrix_contracts),
    ("localized-product-purity", _prop_localized_product_purity),
    ("distinguishable-product-purity", _prop_distinguishable_purity),
    ("entropy-unitary-invariance", _prop_entropy_unitary_invariance),
    ("entropy-purity-consistency", _prop_entropy_purity_consistency),
    ("entropy-concavity", _prop_entropy_concavity),
    ("coords-isometry", _prop_coords_isometry),
    ("benchmark-reductions", _prop_benchmark_reductions),
)

PROPERTY_NAMES = tuple(name for name, _ in _PROPERTIES)


def run_all(seed: int = 0) -> list[PropertyResult]:
    """Run every property with its own child stream of ``seed``."""
    results = []
    for k, (name, fn) in enumerate(_PROPERTIES):
        rng = np.random.default_rng([seed, k])
        try:
            detail = fn(rng)
            results.append(PropertyResult(name, True, detail))
        except AssertionError as exc:
            results.append(PropertyResult(name, False, str(exc)))
        except Exception as exc:  # noqa: BLE001 - verifier must not crash
            results.append(PropertyResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
