"""Named measurement scenarios with frozen expected outcomes.

A scenario bundles a state, a set of trace plans, and a list of numeric
expectations. Running one produces a :class:`ScenarioReport` that can render
itself as a human table or as deterministic machine JSON (stable key order,
floats rounded to 12 significant digits, ``ensure_ascii``), so repeated runs
are byte-identical.

The builtin scenarios freeze the reference numbers for three qubits in three
sites: a fully separated product, the delocalized-measurement reduction that
leaves an entangled pair, a GHZ-type superposition, the full-overlap state
with both particles-in-one-site reductions, and the two distinguishable
comparators that show none of this happens for labeled particles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .comparator import (
    LabeledState,
    SlotTrace,
    distinguishable_trace_iterate,
    product_state,
)
from .entanglement import (
    BipartitionReport,
    EntanglementReport,
    MIXED_THRESHOLD_BITS,
    TracePlan,
    analyze,
    purity,
    spectrum,
    von_neumann_entropy,
)
from .errors import (
    NullStateError,
    ScenarioError,
    SimulationError,
)
from .hilbert import CanonicalBasis, Ket, Spin
from .reduction import MeasurementBasis
from .states import ElementaryState, ParticleState, Statistics, normalize

# Frozen reference values for the builtin scenarios.
ENTROPY_OVERLAP_BITS = math.log2(3.0) - 2.0 / 3.0  # 0.9182958340544896
EIGS_OVERLAP = (2.0 / 3.0, 1.0 / 3.0)
PURITY_OVERLAP = 5.0 / 9.0
PROB_ONE_IN_THREE = 1.0 / 3.0

TOL_ENTROPY = 1e-9
TOL_EIGS = 1e-10
TOL_PURITY = 1e-10
TOL_PROB = 1e-10

QUANTITIES = (
    "entropy_one",
    "entropy_two",
    "purity_one",
    "purity_two",
    "eigenvalues",
    "probability",
    "genuine_multipartite",
)


@dataclass(frozen=True)
class Expectation:
    """One frozen number (or flag) a scenario run must reproduce.

    ``label`` names the trace plan; ``stage`` ("one"/"two") picks the
    remainder for quantities that need it (eigenvalues, probability).
    """

    quantity: str
    value: Union[float, tuple, bool]
    label: Optional[str] = None
    stage: Optional[str] = None
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ScenarioError(
                f"unknown quantity {self.quantity!r}; choose from {QUANTITIES}"
            )
        if self.quantity == "genuine_multipartite":
            if not isinstance(self.value, bool):
                raise ScenarioError("genuine_multipartite expects true/false")
        elif self.label is None:
            raise ScenarioError(f"{self.quantity} needs a plan label")
        if self.quantity in ("eigenvalues", "probability") and self.stage not in (
            "one",
            "two",
        ):
            raise ScenarioError(f"{self.quantity} needs stage 'one' or 'two'")
        if self.quantity == "eigenvalues":
            vals = tuple(float(v) for v in np.atleast_1d(np.asarray(self.value, float)))
            object.__setattr__(self, "value", tuple(sorted(vals, reverse=True)))
        if self.tolerance < 0:
            raise ScenarioError("tolerance must be nonnegative")

    def describe(self) -> str:
        where = ""
        if self.label is not None:
            inside = self.label if self.stage is None else f"{self.label}, {self.stage}"
            where = f"[{inside}]"
        return f"{self.quantity}{where}"


@dataclass(frozen=True)
class SlotPlan:
    """Distinguishable-particle counterpart of a trace plan: ordered
    post-selected slot measurements toward each remainder."""

    label: str
    one_steps: Optional[tuple[SlotTrace, ...]] = None
    two_steps: Optional[tuple[SlotTrace, ...]] = None
    bipartition: bool = True

    def __post_init__(self):
        if self.one_steps is None and self.two_steps is None:
            raise ValueError(f"plan {self.label!r} measures nothing")


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    title: str
    state: Union[ParticleState, LabeledState]
    plans: tuple
    expectations: tuple[Expectation, ...] = ()

    def __post_init__(self):
        labeled = isinstance(self.state, LabeledState)
        for p in self.plans:
            if labeled and not isinstance(p, SlotPlan):
                raise ScenarioError("labeled states take SlotPlan entries")
            if not labeled and not isinstance(p, TracePlan):
                raise ScenarioError("identical-particle states take TracePlan entries")


@dataclass(frozen=True)
class ExpectationResult:
    expectation: Expectation
    tolerance: float  # effective tolerance used for the comparison
    actual: object
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class ScenarioReport:
    name: str
    title: str
    report: EntanglementReport
    checks: tuple[ExpectationResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    # -- rendering ---------------------------------------------------------

    def to_dict(self) -> dict:
        bips = []
        for b in self.report.bipartitions:
            entry: dict = {"label": b.label, "bipartition": b.bipartition,
                           "mixed": b.mixed}
            for side in ("two", "one"):
                rho = getattr(b, f"rho_{side}")
                if rho is None:
                    continue
                entry[side] = {
                    "probability": _round_float(rho.prob),
                    "entropy_bits": _round_float(getattr(b, f"entropy_{side}")),
                    "purity": _round_float(getattr(b, f"purity_{side}")),
                    "eigenvalues": [_round_float(v) for v in spectrum(rho)],
                    "basis": list(rho.basis.labels),
                    "matrix": [
                        [_round_complex(z) for z in row] for row in rho.mat
                    ],
                }
            bips.append(entry)
        genuine = self.report.genuine_multipartite
        return {
            "scenario": self.name,
            "title": self.title,
            "status": "pass" if self.passed else "fail",
            "genuine_multipartite": genuine,
            "bipartitions": bips,
            "checks": [
                {
                    "quantity": c.expectation.quantity,
                    "label": c.expectation.label,
                    "stage": c.expectation.stage,
                    "expected": _jsonable(c.expectation.value),
                    "actual": _jsonable(c.actual),
                    "tolerance": _round_float(c.tolerance),
                    "passed": c.passed,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=True)

    def to_table(self) -> str:
        lines = [f"scenario: {self.name} — {self.title}"]
        n_pass = sum(c.passed for c in self.checks)
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"status: {verdict} ({n_pass}/{len(self.checks)} checks)")
        genuine = self.report.genuine_multipartite
        lines.append(
            "genuine multipartite: "
            + ("n/a" if genuine is None else ("yes" if genuine else "no"))
        )
        for b in self.report.bipartitions:
            lines.append("")
            kind = "" if b.bipartition else "  (not a bipartition)"
            lines.append(f"plan {b.label}{kind}")
            for side, word in (("two", "two-particle"), ("one", "one-particle")):
                rho = getattr(b, f"rho_{side}")
                if rho is None:
                    continue
                s = getattr(b, f"entropy_{side}")
                p = getattr(b, f"purity_{side}")
                lines.append(
                    f"  {word} side: probability {_fmt(rho.prob)}, "
                    f"entropy {_fmt(s)} bits, purity {_fmt(p)}"
                )
                ev = spectrum(rho)
                main = [v for v in ev if v > 5e-13]
                tail = len(ev) - len(main)
                shown = " ".join(_fmt(v) for v in main) or "0"
                suffix = f"  (+{tail} zeros)" if tail else ""
                lines.append(f"    eigenvalues: {shown}{suffix}")
        if self.checks:
            lines.append("")
            lines.append("checks")
            for c in self.checks:
                mark = "pass" if c.passed else "FAIL"
                tol = (
                    ""
                    if isinstance(c.expectation.value, bool)
                    else f" ± {c.tolerance:g}"
                )
                lines.append(
                    f"  [{mark}] {c.expectation.describe()}: {_fmt_actual(c.actual)}"
                    f" (expected {_fmt_actual(c.expectation.value)}{tol})"
                    + (f"  {c.note}" if c.note else "")
                )
        return "\n".join(lines)


# --- number formatting -------------------------------------------------------


def _round_float(x: float) -> float:
    """12 significant digits, with negative zero flattened."""
    v = float(f"{float(x):.12g}")
    return 0.0 if v == 0 else v


def _round_complex(z: complex) -> list[float]:
    return [_round_float(z.real), _round_float(z.imag)]


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, float, np.floating)):
        return _round_float(float(v))
    if isinstance(v, (tuple, list, np.ndarray)):
        return [_jsonable(x) for x in v]
    return str(v)


def _fmt(x: float) -> str:
    return f"{_round_float(x):.12g}"


def _fmt_actual(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "n/a"
    if isinstance(v, (tuple, list, np.ndarray)):
        vals = [float(x) for x in v]
        main = [x for x in vals if abs(x) > 5e-13]
        tail = len(vals) - len(main)
        body = " ".join(_fmt(x) for x in main) or "0"
        return body + (f" (+{tail} zeros)" if tail else "")
    return _fmt(float(v))


# --- running ----------------------------------------------------------------


def run_spec(spec: ScenarioSpec, tolerance: Optional[float] = None) -> ScenarioReport:
    """Run every plan and evaluate the expectations.

    ``tolerance`` can only tighten: the effective tolerance of each check is
    the minimum of its own and the override.
    """
    if isinstance(spec.state, LabeledState):
        report = _analyze_labeled(spec.state, spec.plans)
    else:
        report = analyze(spec.state, spec.plans)
    checks = tuple(_evaluate(e, report, tolerance) for e in spec.expectations)
    return ScenarioReport(spec.name, spec.title, report, checks)


def _analyze_labeled(state: LabeledState, plans: Sequence[SlotPlan]) -> EntanglementReport:
    labels = [p.label for p in plans]
    if len(set(labels)) != len(labels):
        raise ValueError("plan labels must be distinct")
    reports = []
    for plan in plans:
        entries: dict = {}
        entropies = []
        for side, steps in (("one", plan.one_steps), ("two", plan.two_steps)):
            if steps is None:
                continue
            rho = distinguishable_trace_iterate(state, steps)
            s = von_neumann_entropy(rho)
            entropies.append(s)
            entries[f"rho_{side}"] = rho
            entries[f"entropy_{side}"] = s
            entries[f"purity_{side}"] = purity(rho)
        mixed = bool(entropies) and all(s > MIXED_THRESHOLD_BITS for s in entropies)
        reports.append(
            BipartitionReport(
                label=plan.label, mixed=mixed, bipartition=plan.bipartition, **entries
            )
        )
    votes = [r.mixed for r in reports if r.bipartition]
    genuine = all(votes) if votes else None
    return EntanglementReport(tuple(reports), genuine)


def _evaluate(
    e: Expectation, report: EntanglementReport, override: Optional[float]
) -> ExpectationResult:
    tol = e.tolerance if override is None else min(e.tolerance, override)
    if e.quantity == "genuine_multipartite":
        actual = report.genuine_multipartite
        return ExpectationResult(e, tol, actual, actual is e.value)
    try:
        b = report[e.label]
    except KeyError:
        return ExpectationResult(e, tol, None, False, note="no such plan")
    if e.quantity in ("entropy_one", "entropy_two", "purity_one", "purity_two"):
        actual = getattr(b, e.quantity)
        if actual is None:
            return ExpectationResult(e, tol, None, False, note="side not traced")
        return ExpectationResult(e, tol, actual, abs(actual - e.value) <= tol)
    rho = getattr(b, f"rho_{e.stage}")
    if rho is None:
        return ExpectationResult(e, tol, None, False, note="side not traced")
    if e.quantity == "probability":
        return ExpectationResult(e, tol, rho.prob, abs(rho.prob - e.value) <= tol)
    # eigenvalues, padded with zeros to a common length
    ev = spectrum(rho)
    want = np.zeros(max(ev.size, len(e.value)))
    want[: len(e.value)] = e.value
    have = np.zeros_like(want)
    have[: ev.size] = ev
    return ExpectationResult(
        e, tol, tuple(float(v) for v in ev), float(np.abs(have - want).max()) <= tol
    )


# --- builtin scenarios -------------------------------------------------------


def standard_space() -> CanonicalBasis:
    """Three spatial modes A, B, C with spin up/down: the reference frame."""
    return CanonicalBasis(("A", "B", "C"))


def delocalized_pair(space: CanonicalBasis, left: str, right: str) -> MeasurementBasis:
    """Spin kets of the balanced superposition of two sites,
    {(left+right) down, (left+right) up} each over sqrt(2)."""
    r = 1.0 / math.sqrt(2.0)
    mk = lambda s: space.superposition([(left, s, r), (right, s, r)])
    return MeasurementBasis((mk(Spin.DOWN), mk(Spin.UP)))


def _loc(space: CanonicalBasis, mode: str) -> MeasurementBasis:
    return MeasurementBasis.localized(space, mode)


def _separated_spec() -> ScenarioSpec:
    space = standard_space()
    kets = (
        space.ket("A", Spin.DOWN),
        space.ket("B", Spin.DOWN),
        space.ket("C", Spin.UP),
    )
    state = ParticleState(Statistics.BOSON, (ElementaryState(1.0, kets),))
    plans = (
        TracePlan("(AB)-C", one_stages=(_loc(space, "A"), _loc(space, "B")),
                  two_stages=(_loc(space, "C"),)),
        TracePlan("(CA)-B", one_stages=(_loc(space, "C"), _loc(space, "A")),
                  two_stages=(_loc(space, "B"),)),
        TracePlan("(BC)-A", one_stages=(_loc(space, "B"), _loc(space, "C")),
                  two_stages=(_loc(space, "A"),)),
    )
    expectations = []
    for label in ("(AB)-C", "(CA)-B", "(BC)-A"):
        expectations += [
            Expectation("entropy_two", 0.0, label, tolerance=TOL_ENTROPY),
            Expectation("entropy_one", 0.0, label, tolerance=TOL_ENTROPY),
            Expectation("purity_two", 1.0, label, tolerance=TOL_PURITY),
            Expectation("purity_one", 1.0, label, tolerance=TOL_PURITY),
            Expectation("probability", PROB_ONE_IN_THREE, label, "two",
                        tolerance=TOL_PROB),
        ]
    expectations.append(Expectation("genuine_multipartite", False))
    return ScenarioSpec(
        "separated",
        "one qubit per site: every cut leaves a pure remainder",
        state,
        plans,
        tuple(expectations),
    )


def _induced_spec() -> ScenarioSpec:
    space = standard_space()
    kets = (
        space.ket("A", Spin.DOWN),
        space.ket("B", Spin.DOWN),
        space.ket("C", Spin.UP),
    )
    state = ParticleState(Statistics.BOSON, (ElementaryState(1.0, kets),))
    plan = TracePlan(
        "(BC)-delocalized",
        two_stages=(delocalized_pair(space, "B", "C"),),
        bipartition=False,
    )
    expectations = (
        Expectation("probability", PROB_ONE_IN_THREE, "(BC)-delocalized", "two",
                    tolerance=TOL_PROB),
        Expectation("entropy_two", 1.0, "(BC)-delocalized", tolerance=TOL_ENTROPY),
        Expectation("purity_two", 0.5, "(BC)-delocalized", tolerance=TOL_PURITY),
        Expectation("eigenvalues", (0.5, 0.5), "(BC)-delocalized", "two",
                    tolerance=TOL_EIGS),
    )
    return ScenarioSpec(
        "induced",
        "a delocalized detection entangles the two leftover qubits",
        state,
        (plan,),
        expectations,
    )


def _ghz_spec() -> ScenarioSpec:
    space = standard_space()
    dn = tuple(space.ket(m, Spin.DOWN) for m in "ABC")
    up = tuple(space.ket(m, Spin.UP) for m in "ABC")
    state = normalize(
        ParticleState(
            Statistics.BOSON,
            (ElementaryState(1.0, dn), ElementaryState(1.0, up)),
        )
    )
    plans = (
        TracePlan("(AB)-C", one_stages=(_loc(space, "A"), _loc(space, "B")),
                  two_stages=(_loc(space, "C"),)),
        TracePlan("(CA)-B", one_stages=(_loc(space, "C"), _loc(space, "A")),
                  two_stages=(_loc(space, "B"),)),
        TracePlan("(BC)-A", one_stages=(_loc(space, "B"), _loc(space, "C")),
                  two_stages=(_loc(space, "A"),)),
    )
    expectations = []
    for label in ("(AB)-C", "(CA)-B", "(BC)-A"):
        expectations += [
            Expectation("entropy_two", 1.0, label, tolerance=TOL_ENTROPY),
            Expectation("entropy_one", 1.0, label, tolerance=TOL_ENTROPY),
            Expectation("purity_two", 0.5, label, tolerance=TOL_PURITY),
            Expectation("purity_one", 0.5, label, tolerance=TOL_PURITY),
            Expectation("eigenvalues", (0.5, 0.5), label, "two", tolerance=TOL_EIGS),
            Expectation("eigenvalues", (0.5, 0.5), label, "one", tolerance=TOL_EIGS),
            Expectation("probability", PROB_ONE_IN_THREE, label, "two",
                        tolerance=TOL_PROB),
        ]
    expectations.append(Expectation("genuine_multipartite", True))
    return ScenarioSpec(
        "ghz",
        "GHZ-type superposition: every cut is maximally mixed",
        state,
        plans,
        tuple(expectations),
    )


def _overlap_spec() -> ScenarioSpec:
    space = standard_space()
    a_dn = space.ket("A", Spin.DOWN)
    a_up = space.ket("A", Spin.UP)
    state = ParticleState(
        Statistics.BOSON,
        (ElementaryState(1.0 / math.sqrt(2.0), (a_dn, a_dn, a_up)),),
    )
    loc_a = _loc(space, "A")
    plan = TracePlan("(AA)-A", one_stages=(loc_a, loc_a), two_stages=(loc_a,))
    expectations = (
        Expectation("probability", 1.0, "(AA)-A", "two", tolerance=TOL_PROB),
        Expectation("probability", 1.0, "(AA)-A", "one", tolerance=TOL_PROB),
        Expectation("entropy_two", ENTROPY_OVERLAP_BITS, "(AA)-A",
                    tolerance=TOL_ENTROPY),
        Expectation("entropy_one", ENTROPY_OVERLAP_BITS, "(AA)-A",
                    tolerance=TOL_ENTROPY),
        Expectation("purity_two", PURITY_OVERLAP, "(AA)-A", tolerance=TOL_PURITY),
        Expectation("purity_one", PURITY_OVERLAP, "(AA)-A", tolerance=TOL_PURITY),
        Expectation("eigenvalues", EIGS_OVERLAP, "(AA)-A", "two", tolerance=TOL_EIGS),
        Expectation("eigenvalues", EIGS_OVERLAP, "(AA)-A", "one", tolerance=TOL_EIGS),
        Expectation("genuine_multipartite", True),
    )
    return ScenarioSpec(
        "overlap",
        "three bosonic qubits piled in one site are pairwise entangled",
        state,
        (plan,),
        expectations,
    )


def _distinguishable_spec() -> ScenarioSpec:
    space = standard_space()
    state = product_state(
        (
            space.ket("A", Spin.DOWN),
            space.ket("B", Spin.DOWN),
            space.ket("C", Spin.UP),
        )
    )
    loc = {m: _loc(space, m) for m in "ABC"}
    nonlocal_ab = delocalized_pair(space, "A", "B")
    plans = (
        SlotPlan("(12)-3", one_steps=(SlotTrace(0, loc["A"]), SlotTrace(1, loc["B"])),
                 two_steps=(SlotTrace(2, loc["C"]),)),
        SlotPlan("(31)-2", one_steps=(SlotTrace(2, loc["C"]), SlotTrace(0, loc["A"])),
                 two_steps=(SlotTrace(1, loc["B"]),)),
        SlotPlan("(23)-1", one_steps=(SlotTrace(1, loc["B"]), SlotTrace(2, loc["C"])),
                 two_steps=(SlotTrace(0, loc["A"]),)),
        SlotPlan("(23)-1 nonlocal", two_steps=(SlotTrace(0, nonlocal_ab),),
                 bipartition=False),
        SlotPlan("(31)-2 nonlocal", two_steps=(SlotTrace(1, nonlocal_ab),),
                 bipartition=False),
    )
    expectations = []
    for label in ("(12)-3", "(31)-2", "(23)-1"):
        expectations += [
            Expectation("entropy_two", 0.0, label, tolerance=TOL_ENTROPY),
            Expectation("entropy_one", 0.0, label, tolerance=TOL_ENTROPY),
            Expectation("purity_two", 1.0, label, tolerance=TOL_PURITY),
            Expectation("purity_one", 1.0, label, tolerance=TOL_PURITY),
            Expectation("probability", 1.0, label, "two", tolerance=TOL_PROB),
        ]
    for label in ("(23)-1 nonlocal", "(31)-2 nonlocal"):
        expectations += [
            Expectation("entropy_two", 0.0, label, tolerance=TOL_ENTROPY),
            Expectation("purity_two", 1.0, label, tolerance=TOL_PURITY),
            Expectation("probability", 0.5, label, "two", tolerance=TOL_PROB),
        ]
    expectations.append(Expectation("genuine_multipartite", False))
    return ScenarioSpec(
        "distinguishable",
        "labeled qubits in separate sites: no cut ever mixes",
        state,
        plans,
        tuple(expectations),
    )


def _distinguishable_overlapped_spec() -> ScenarioSpec:
    space = standard_space()
    state = product_state(
        (
            space.ket("A", Spin.DOWN),
            space.ket("A", Spin.DOWN),
            space.ket("A", Spin.UP),
        )
    )
    loc_a = _loc(space, "A")
    plans = (
        SlotPlan("(12)-3", one_steps=(SlotTrace(0, loc_a), SlotTrace(1, loc_a)),
                 two_steps=(SlotTrace(2, loc_a),)),
        SlotPlan("(31)-2", one_steps=(SlotTrace(2, loc_a), SlotTrace(0, loc_a)),
                 two_steps=(SlotTrace(1, loc_a),)),
        SlotPlan("(23)-1", one_steps=(SlotTrace(1, loc_a), SlotTrace(2, loc_a)),
                 two_steps=(SlotTrace(0, loc_a),)),
    )
    expectations = []
    for label in ("(12)-3", "(31)-2", "(23)-1"):
        expectations += [
            Expectation("entropy_two", 0.0, label, tolerance=TOL_ENTROPY),
            Expectation("entropy_one", 0.0, label, tolerance=TOL_ENTROPY),
            Expectation("purity_two", 1.0, label, tolerance=TOL_PURITY),
            Expectation("purity_one", 1.0, label, tolerance=TOL_PURITY),
            Expectation("probability", 1.0, label, "two", tolerance=TOL_PROB),
        ]
    expectations.append(Expectation("genuine_multipartite", False))
    return ScenarioSpec(
        "distinguishable-overlapped",
        "labeled qubits piled in one site still never mix",
        state,
        plans,
        tuple(expectations),
    )


_BUILTIN_BUILDERS = {
    "separated": _separated_spec,
    "induced": _induced_spec,
    "ghz": _ghz_spec,
    "overlap": _overlap_spec,
    "distinguishable": _distinguishable_spec,
    "distinguishable-overlapped": _distinguishable_overlapped_spec,
}


def builtin_names() -> tuple[str, ...]:
    return tuple(_BUILTIN_BUILDERS)


def get_builtin(name: str) -> ScenarioSpec:
    try:
        return _BUILTIN_BUILDERS[name]()
    except KeyError:
        raise ScenarioError(
            f"no builtin scenario {name!r}; available: {', '.join(_BUILTIN_BUILDERS)}"
        ) from None


def run_builtin(name: str, tolerance: Optional[float] = None) -> ScenarioReport:
    return run_spec(get_builtin(name), tolerance)


# --- scenario files ----------------------------------------------------------


def load_scenario(path: Union[str, Path]) -> ScenarioSpec:
    """Parse a scenario JSON file; errors carry the offending field path."""
    p = Path(path)
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ScenarioError(f"scenario file not found: {p}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{p}: not valid JSON ({exc})") from None
    return parse_scenario(raw)


def parse_scenario(raw: dict) -> ScenarioSpec:
    if not isinstance(raw, dict):
        raise ScenarioError("scenario: expected a JSON object")
    name = _need_str(raw, "name", "scenario")
    title = raw.get("title", name)
    if not isinstance(title, str):
        raise ScenarioError("scenario.title: expected a string")
    kind = raw.get("kind", "identical")
    if kind not in ("identical", "distinguishable"):
        raise ScenarioError(
            f"scenario.kind: {kind!r} is not 'identical' or 'distinguishable'"
        )
    modes = raw.get("modes")
    if (
        not isinstance(modes, list)
        or not modes
        or not all(isinstance(m, str) for m in modes)
    ):
        raise ScenarioError("scenario.modes: expected a nonempty list of strings")
    try:
        space = CanonicalBasis(modes)
    except ValueError as exc:
        raise ScenarioError(f"scenario.modes: {exc}") from None

    if kind == "identical":
        stats_name = _need_str(raw, "statistics", "scenario")
        try:
            statistics = Statistics(stats_name)
        except ValueError:
            raise ScenarioError(
                f"scenario.statistics: {stats_name!r} is not 'boson' or 'fermion'"
            ) from None
        state = _parse_identical_state(raw, space, statistics, name)
        plans = _parse_trace_plans(raw, space)
    else:
        state = _parse_labeled_state(raw, space, name)
        plans = _parse_slot_plans(raw, space, state.n)

    expectations = _parse_expectations(raw, [p.label for p in plans])
    return ScenarioSpec(name, title, state, plans, expectations)


def _need_str(obj: dict, key: str, where: str) -> str:
    v = obj.get(key)
    if not isinstance(v, str) or not v:
        raise ScenarioError(f"{where}.{key}: expected a nonempty string")
    return v


def _parse_complex(v, where: str) -> complex:
    if (
        not isinstance(v, list)
        or len(v) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
    ):
        raise ScenarioError(f"{where}: expected [re, im]")
    if not all(math.isfinite(x) for x in v):
        raise ScenarioError(f"{where}: numbers must be finite")
    return complex(v[0], v[1])


def _parse_ket(v, space: CanonicalBasis, where: str) -> Ket:
    if not isinstance(v, list) or not v:
        raise ScenarioError(f"{where}: expected a nonempty list of components")
    comps = []
    for j, rec in enumerate(v):
        here = f"{where}[{j}]"
        if not isinstance(rec, list) or len(rec) != 4:
            raise ScenarioError(f"{here}: expected [mode, spin, re, im]")
        mode, spin_name, re, im = rec
        if not isinstance(mode, str):
            raise ScenarioError(f"{here}: mode must be a string")
        if spin_name not in ("up", "down"):
            raise ScenarioError(f"{here}: spin must be 'up' or 'down'")
        if not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)
        ):
            raise ScenarioError(f"{here}: amplitude must be two numbers")
        if mode not in space.mode_names:
            raise ScenarioError(f"{here}: unknown mode {mode!r}")
        comps.append((mode, Spin(spin_name), complex(re, im)))
    try:
        return space.superposition(comps)
    except ValueError as exc:  # non-finite amplitudes sneak through JSON
        raise ScenarioError(f"{where}: {exc}") from None


def _parse_terms(raw: dict, space: CanonicalBasis):
    terms_raw = raw.get("state")
    if not isinstance(terms_raw, list) or not terms_raw:
        raise ScenarioError("scenario.state: expected a nonempty list of terms")
    parsed = []
    for i, t in enumerate(terms_raw):
        where = f"scenario.state[{i}]"
        if not isinstance(t, dict):
            raise ScenarioError(f"{where}: expected an object")
        coeff = (
            _parse_complex(t["coeff"], f"{where}.coeff") if "coeff" in t else 1.0 + 0j
        )
        kets_raw = t.get("kets")
        if not isinstance(kets_raw, list) or not kets_raw:
            raise ScenarioError(f"{where}.kets: expected a nonempty list")
        kets = tuple(
            _parse_ket(k, space, f"{where}.kets[{j}]") for j, k in enumerate(kets_raw)
        )
        parsed.append((coeff, kets))
    return parsed


def _parse_identical_state(
    raw: dict, space: CanonicalBasis, statistics: Statistics, name: str
) -> ParticleState:
    terms = _parse_terms(raw, space)
    try:
        state = ParticleState(
            statistics, tuple(ElementaryState(c, kets) for c, kets in terms)
        )
        return normalize(state)
    except NullStateError:
        raise ScenarioError(
            f"scenario {name!r}: the state has zero norm "
            "(for fermions, check for repeated kets)"
        ) from None
    except (SimulationError, ValueError) as exc:
        raise ScenarioError(f"scenario.state: {exc}") from None


def _parse_labeled_state(raw: dict, space: CanonicalBasis, name: str) -> LabeledState:
    terms = _parse_terms(raw, space)
    try:
        state = LabeledState(tuple((c, kets) for c, kets in terms))
    except ValueError as exc:
        raise ScenarioError(f"scenario.state: {exc}") from None
    nrm = float(np.linalg.norm(state.vector()))
    if nrm < 1e-12:
        raise ScenarioError(f"scenario {name!r}: the state has zero norm")
    return LabeledState(tuple((c / nrm, kets) for c, kets in state.terms))


def _parse_basis(v, space: CanonicalBasis, where: str) -> MeasurementBasis:
    if not isinstance(v, list) or not v:
        raise ScenarioError(f"{where}: expected a nonempty list of kets")
    kets = tuple(_parse_ket(k, space, f"{where}[{j}]") for j, k in enumerate(v))
    try:
        return MeasurementBasis(kets)
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _parse_trace_plans(raw: dict, space: CanonicalBasis) -> tuple[TracePlan, ...]:
    plans_raw = raw.get("plans")
    if not isinstance(plans_raw, list) or not plans_raw:
        raise ScenarioError("scenario.plans: expected a nonempty list")
    plans = []
    for i, p in enumerate(plans_raw):
        where = f"scenario.plans[{i}]"
        if not isinstance(p, dict):
            raise ScenarioError(f"{where}: expected an object")
        label = _need_str(p, "label", where)
        sides: dict = {}
        for side in ("one", "two"):
            if side not in p:
                continue
            stages_raw = p[side]
            if not isinstance(stages_raw, list) or not stages_raw:
                raise ScenarioError(f"{where}.{side}: expected a nonempty list")
            sides[f"{side}_stages"] = tuple(
                _parse_basis(s, space, f"{where}.{side}[{j}]")
                for j, s in enumerate(stages_raw)
            )
        if not sides:
            raise ScenarioError(f"{where}: needs a 'one' or 'two' side")
        bip = p.get("bipartition", True)
        if not isinstance(bip, bool):
            raise ScenarioError(f"{where}.bipartition: expected true/false")
        plans.append(TracePlan(label, bipartition=bip, **sides))
    labels = [p.label for p in plans]
    if len(set(labels)) != len(labels):
        raise ScenarioError("scenario.plans: labels must be distinct")
    return tuple(plans)


def _parse_slot_plans(
    raw: dict, space: CanonicalBasis, n: int
) -> tuple[SlotPlan, ...]:
    plans_raw = raw.get("plans")
    if not isinstance(plans_raw, list) or not plans_raw:
        raise ScenarioError("scenario.plans: expected a nonempty list")
    plans = []
    for i, p in enumerate(plans_raw):
        where = f"scenario.plans[{i}]"
        if not isinstance(p, dict):
            raise ScenarioError(f"{where}: expected an object")
        label = _need_str(p, "label", where)
        sides: dict = {}
        for side in ("one", "two"):
            if side not in p:
                continue
            steps_raw = p[side]
            if not isinstance(steps_raw, list) or not steps_raw:
                raise ScenarioError(f"{where}.{side}: expected a nonempty list")
            steps = []
            for j, s in enumerate(steps_raw):
                here = f"{where}.{side}[{j}]"
                if not isinstance(s, dict):
                    raise ScenarioError(f"{here}: expected an object")
                slot = s.get("slot")
                if not isinstance(slot, int) or isinstance(slot, bool):
                    raise ScenarioError(f"{here}.slot: expected an integer")
                if not 0 <= slot < n:
                    raise ScenarioError(f"{here}.slot: {slot} outside 0..{n - 1}")
                steps.append(SlotTrace(slot, _parse_basis(s.get("kets"), space,
                                                          f"{here}.kets")))
            sides[f"{side}_steps"] = tuple(steps)
        if not sides:
            raise ScenarioError(f"{where}: needs a 'one' or 'two' side")
        bip = p.get("bipartition", True)
        if not isinstance(bip, bool):
            raise ScenarioError(f"{where}.bipartition: expected true/false")
        plans.append(SlotPlan(label, bipartition=bip, **sides))
    labels = [p.label for p in plans]
    if len(set(labels)) != len(labels):
        raise ScenarioError("scenario.plans: labels must be distinct")
    return tuple(plans)


def _parse_expectations(raw: dict, labels: Sequence[str]) -> tuple[Expectation, ...]:
    exp_raw = raw.get("expectations", [])
    if not isinstance(exp_raw, list):
        raise ScenarioError("scenario.expectations: expected a list")
    out = []
    for i, e in enumerate(exp_raw):
        where = f"scenario.expectations[{i}]"
        if not isinstance(e, dict):
            raise ScenarioError(f"{where}: expected an object")
        quantity = _need_str(e, "quantity", where)
        value = e.get("value")
        if quantity == "genuine_multipartite":
            if not isinstance(value, bool):
                raise ScenarioError(f"{where}.value: expected true/false")
        elif quantity == "eigenvalues":
            if not isinstance(value, list) or not value or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
            ):
                raise ScenarioError(f"{where}.value: expected a list of numbers")
            value = tuple(float(x) for x in value)
        else:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ScenarioError(f"{where}.value: expected a number")
            value = float(value)
        label = e.get("label")
        if label is not None and label not in labels:
            raise ScenarioError(f"{where}.label: no plan named {label!r}")
        stage = e.get("stage")
        if stage is not None and stage not in ("one", "two"):
            raise ScenarioError(f"{where}.stage: expected 'one' or 'two'")
        tol = e.get("tolerance", 1e-10)
        if not isinstance(tol, (int, float)) or isinstance(tol, bool) or tol < 0:
            raise ScenarioError(f"{where}.tolerance: expected a nonnegative number")
        try:
            out.append(Expectation(quantity, value, label, stage, float(tol)))
        except ScenarioError as exc:
            raise ScenarioError(f"{where}: {exc}") from None
    return tuple(out)


def run_file(path: Union[str, Path], tolerance: Optional[float] = None) -> ScenarioReport:
    return run_spec(load_scenario(path), tolerance)
