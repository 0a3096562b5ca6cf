"""Canned example tables, exhaustive and seeded-random table streams, and the
theorem registry that drives the sweeps."""

from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .axioms import (
    Axiom,
    check,
    check_c1,
    check_c3,
    check_c22,
    check_consistency,
    check_locality,
    check_monotonicity,
    classify,
    is_closure_space,
    is_convex_space,
    is_violator_space,
)
from .core import GroundSet, Kind, OperatorTable, Witness, supersets
from .duality import tau_from_violator, violator_from_tau
from .generators import (
    ExtremeDef,
    TheoremWitness,
    check_add_lemma,
    check_basis_inside,
    check_closure_of_extremes,
    check_expoint,
    check_extreme_in_generators,
    check_krein_milman,
    check_u1,
    check_uq_intersection,
    find_two_bases,
)
from .hypercube import (
    IntervalPartition,
    check_class_lattice_closure,
    check_interval_classes,
    check_partition_theorem,
    check_union,
    enumerate_interval_partitions,
    find_union_failure,
    has_max_generators,
    operator_from_partition,
)

MAX_EXHAUSTIVE = 3


# --------------------------------------------------------------------------
# canned examples

_EXAMPLES: dict[str, tuple[int, Kind, dict]] = {
    # V({3}) = {2} added so that τ({1}) = τ({3}) = {1,3}, as the later text uses it
    "ex1": (3, Kind.VIOLATOR, {("1",): ("2",), ("3",): ("2",)}),
    "ex1_literal": (3, Kind.VIOLATOR, {("1",): ("2",)}),
    "ex2_2": (3, Kind.TAU, {("1",): ("1", "2"), ("1", "2"): ("1", "2", "3")}),
    "exms": (4, Kind.TAU, {
        ("1", "2"): ("1", "2", "3"),
        ("1", "3"): ("1", "2", "3", "4"),
        ("1", "2", "3"): ("1", "2", "3", "4"),
        ("1", "3", "4"): ("1", "2", "3", "4"),
        ("1", "2", "3", "4"): ("1", "2", "3", "4"),
    }),
    "ex5_1": (4, Kind.TAU, {
        ("1",): ("1", "2", "3"),
        ("1", "2"): ("1", "2", "3"),
        ("1", "3"): ("1", "2", "3"),
        ("1", "2", "3"): ("1", "2", "3", "4"),
    }),
}

EXAMPLE_IDS = tuple(_EXAMPLES)


def paper_example(example_id: str) -> OperatorTable:
    try:
        n, kind, overrides = _EXAMPLES[example_id]
    except KeyError:
        raise ValueError(f"unknown example {example_id!r}; choose from {', '.join(EXAMPLE_IDS)}") from None
    return OperatorTable.with_overrides(GroundSet.range(n), kind, overrides)


def signature(op: OperatorTable) -> dict[str, bool]:
    """Class flags plus unique generation and anti-exchange, for golden checks."""
    report = classify(op)
    out = dict(report.classes)
    out["uniquely_generated"] = find_two_bases(_tau(op)) is None
    out["anti_exchange"] = report.flags[Axiom.ANTI_EXCHANGE]
    return out


EXAMPLE_SIGNATURES: dict[str, dict[str, bool]] = {
    "ex1": dict(closure_space=False, violator_space=True, convex_space=True,
                convex_geometry=False, uniquely_generated=False, anti_exchange=False),
    "ex1_literal": dict(closure_space=False, violator_space=True, convex_space=True,
                        convex_geometry=False, uniquely_generated=True, anti_exchange=True),
    "ex2_2": dict(closure_space=False, violator_space=False, convex_space=True,
                  convex_geometry=False, uniquely_generated=True, anti_exchange=True),
    "exms": dict(closure_space=False, violator_space=False, convex_space=True,
                 convex_geometry=False, uniquely_generated=True, anti_exchange=False),
    "ex5_1": dict(closure_space=False, violator_space=False, convex_space=True,
                  convex_geometry=False, uniquely_generated=True, anti_exchange=True),
}


def _tau(op: OperatorTable) -> OperatorTable:
    return op if op.kind is Kind.TAU else tau_from_violator(op)


# --------------------------------------------------------------------------
# exhaustive streams


def _check_exhaustive(ground: GroundSet) -> None:
    if ground.n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE}; "
                         f"use random_tables for larger ground sets")


def enumerate_c1_tables(ground: GroundSet) -> Iterator[OperatorTable]:
    """Every tau table with ``X ⊆ τ(X)``; ``2^(Σ_X (n-|X|))`` of them."""
    _check_exhaustive(ground)
    choices = [supersets(x, ground.n) for x in range(1 << ground.n)]
    for images in itertools.product(*choices):
        yield OperatorTable(ground, Kind.TAU, images)


@lru_cache(maxsize=None)
def _c1_tables(n: int) -> tuple[OperatorTable, ...]:
    return tuple(enumerate_c1_tables(GroundSet.range(n)))


def _filtered(n: int, keep: Callable[[OperatorTable], bool]) -> tuple[OperatorTable, ...]:
    return tuple(op for op in _c1_tables(n) if keep(op))


@lru_cache(maxsize=None)
def _universe(name: str, n: int) -> tuple:
    if name == "c1":
        return _c1_tables(n)
    if name == "closure":
        return _filtered(n, is_closure_space)
    if name == "violator":
        return _filtered(n, is_violator_space)
    if name == "convex":
        return _filtered(n, is_convex_space)
    if name == "ug-violator":
        return tuple(op for op in _universe("violator", n) if find_two_bases(op) is None)
    if name == "ug-convex":
        return tuple(op for op in _universe("convex", n) if find_two_bases(op) is None)
    if name == "ug-convex-max":
        return tuple(op for op in _universe("ug-convex", n) if has_max_generators(op))
    if name == "consistent":
        # violator-form tables passing consistency: the duals of the C1 tables
        return tuple(violator_from_tau(op) for op in _c1_tables(n))
    if name == "partitions":
        return tuple(enumerate_interval_partitions(GroundSet.range(n)))
    raise ValueError(f"unknown universe {name!r}")


UNIVERSES = ("c1", "closure", "violator", "convex", "ug-violator", "ug-convex",
             "ug-convex-max", "consistent", "partitions")


def universe(name: str, ground: GroundSet) -> tuple:
    _check_exhaustive(ground)
    if ground != GroundSet.range(ground.n):
        items = _universe(name, ground.n)
        if name == "partitions":
            return tuple(IntervalPartition(ground, p.intervals) for p in items)
        return tuple(OperatorTable(ground, op.kind, op.images) for op in items)
    return _universe(name, ground.n)


# --------------------------------------------------------------------------
# theorem registry


@dataclass(frozen=True)
class ImplicationWitness(Witness):
    """A table satisfying the premises of an implication but not its conclusion."""

    theorem: str
    images: tuple[int, ...]
    failed: str
    name = "implication"

    def reproduces(self, op):
        return op.images == self.images and _THEOREMS[self.theorem].check(op) is not None

    def describe(self, g):
        table = OperatorTable(g, Kind.TAU, self.images)
        return f"{self.theorem}: table fails {self.failed}\n" + table.describe()

    def to_dict(self, g):
        return {"type": self.name, "theorem": self.theorem, "failed": self.failed,
                "table": {g.fmt(x): g.fmt(v) for x, v in enumerate(self.images)}}


def _implication(theorem: str, premises, conclusion):
    def run(op: OperatorTable) -> Witness | None:
        if all(check(op, a) is None for a in premises):
            w = check(op, conclusion)
            if w is not None:
                return ImplicationWitness(theorem, op.images, conclusion.value)
        return None
    return run


def _cltov(op: OperatorTable) -> Witness | None:
    if not is_closure_space(op):
        return None
    v = violator_from_tau(op)
    return check_consistency(v) or check_locality(v)


def _vtocl(op: OperatorTable) -> Witness | None:
    if check_consistency(op) is not None or check_locality(op) is not None:
        return None
    t = tau_from_violator(op)
    return check_c1(t) or check_c3(t) or check_c22(t)


def _forms_agree(op: OperatorTable) -> Witness | None:
    v = violator_from_tau(op)
    v_form = check_consistency(v) is None and check_locality(v) is None
    t_form = check_c1(op) is None and check_c22(op) is None
    if v_form != t_form:
        return ImplicationWitness("violator-forms-agree", op.images, "consistency+locality ⇔ c1+c22")
    return None


def _closure_is_violator(op: OperatorTable) -> Witness | None:
    if is_closure_space(op) and not is_violator_space(op):
        return ImplicationWitness("closure-implies-violator", op.images, "c22")
    return None


def _ug_iff_antiexchange(op: OperatorTable) -> Witness | None:
    ug = find_two_bases(op) is None
    ae = check(op, Axiom.ANTI_EXCHANGE)
    if ug and ae is not None:
        return ae
    if not ug and ae is None:
        return find_two_bases(op)
    return None


def _antiexchange_on_ug(op: OperatorTable) -> Witness | None:
    # convex-space universe: expected to fail somewhere
    if find_two_bases(op) is None:
        return check(op, Axiom.ANTI_EXCHANGE)
    return None


def _union_on_convex(op: OperatorTable) -> Witness | None:
    pair = find_union_failure(op)
    return TheoremWitness("union", pair) if pair else None


def _monotonicity(op: OperatorTable) -> Witness | None:
    return check_monotonicity(violator_from_tau(op))


@dataclass(frozen=True)
class Theorem:
    id: str
    universe: str
    statement: str
    check: Callable
    holds: bool = True


_THEOREMS: dict[str, Theorem] = {}


def _register(*theorems: Theorem) -> None:
    for t in theorems:
        _THEOREMS[t.id] = t


_register(
    Theorem("c2c3-implies-c22", "c1", "C2 and C3 imply C22",
            _implication("c2c3-implies-c22", (Axiom.C2, Axiom.C3), Axiom.C22)),
    Theorem("c1c22-implies-c3", "c1", "C1 and C22 imply C3",
            _implication("c1c22-implies-c3", (Axiom.C1, Axiom.C22), Axiom.C3)),
    Theorem("convexity-c3-implies-c22", "c1", "convexity and C3 imply C22",
            _implication("convexity-c3-implies-c22", (Axiom.CONVEXITY, Axiom.C3), Axiom.C22)),
    Theorem("c1c22-implies-convexity", "c1", "C1 and C22 imply convexity",
            _implication("c1c22-implies-convexity", (Axiom.C1, Axiom.C22), Axiom.CONVEXITY)),
    Theorem("c1-convexity-implies-c22", "c1", "C1 and convexity do not imply C22",
            _implication("c1-convexity-implies-c22", (Axiom.C1, Axiom.CONVEXITY), Axiom.C22),
            holds=False),
    Theorem("closure-implies-violator", "c1", "every closure space is a violator space",
            _closure_is_violator),
    Theorem("cltov", "c1", "V = E - τ of a closure space satisfies consistency and locality",
            _cltov),
    Theorem("vtocl", "consistent", "τ = H - V of a violator space satisfies C1, C3 and C22",
            _vtocl),
    Theorem("violator-forms-agree", "c1", "consistency+locality of V iff C1+C22 of τ",
            _forms_agree),
    Theorem("monotonicity", "violator", "violator spaces satisfy monotonicity",
            _monotonicity),
    Theorem("uniquegen-iff-antiexchange", "violator",
            "a violator space is uniquely generated iff it is anti-exchange", _ug_iff_antiexchange),
    Theorem("uniquegen-not-antiexchange-convex", "convex",
            "unique generation does not imply anti-exchange for convex spaces",
            _antiexchange_on_ug, holds=False),
    Theorem("u1", "c1", "uniquely generated iff every basis lies in every generator", check_u1),
    Theorem("uq-intersection", "convex",
            "for convex spaces: uniquely generated iff classes are intersection-closed "
            "iff each basis is the meet of its generators", check_uq_intersection),
    Theorem("add-lemma", "violator", "x ∉ τ(A) iff τ(A) ≠ τ(A ∪ x)", check_add_lemma),
    Theorem("expoint", "convex", "ex = EX on violator spaces, ex ⊆ EX on convex spaces",
            check_expoint),
    Theorem("expoint-violator", "violator", "ex = EX on violator spaces", check_expoint),
    Theorem("expb", "violator", "ex(X) is the meet of the generators of X inside X",
            check_extreme_in_generators),
    Theorem("expc", "convex", "ex(X) lies in the meet of the generators of X inside X",
            check_extreme_in_generators),
    Theorem("krein-milman-ex", "violator",
            "a violator space is uniquely generated iff τ(X) = τ(ex(X)) for all X",
            lambda op: check_krein_milman(op, ExtremeDef.ex)),
    Theorem("krein-milman-EX-forward", "convex",
            "a uniquely generated convex space has τ(X) = τ(EX(X)) for all X",
            lambda op: check_krein_milman(op, ExtremeDef.EX, converse=False)),
    # the converse fails on n=3: τ({2}) = τ({3}) = {2,3} with every set generated by its EX
    Theorem("krein-milman-EX", "convex",
            "a convex space is uniquely generated iff τ(X) = τ(EX(X)) for all X "
            "(the converse direction fails; counterexamples expected)",
            lambda op: check_krein_milman(op, ExtremeDef.EX), holds=False),
    Theorem("basis-inside", "ug-convex", "the unique basis of X lies in X", check_basis_inside),
    Theorem("ex-of-closure", "ug-violator", "ex(τ(X)) = ex(X) ⊆ X", check_closure_of_extremes),
    Theorem("union", "violator", "τ(X)=τ(Y) implies τ(X∪Y)=τ(X)", check_union),
    Theorem("union-fails-convex", "convex", "the union property can fail for convex spaces",
            _union_on_convex, holds=False),
    Theorem("class-lattice-closure", "ug-violator",
            "classes of a uniquely generated violator space are closed under ∩ and ∪",
            check_class_lattice_closure),
    Theorem("hp", "ug-violator", "classes are the intervals [B_A, τ(A)]", check_interval_classes),
    Theorem("hp-convex", "ug-convex-max",
            "classes of a uniquely generated convex space with unique maximal generators "
            "are the intervals [B_A, G_Max(A)]", check_interval_classes),
    Theorem("partition", "partitions",
            "every interval partition is the class partition of a uniquely generated violator space",
            check_partition_theorem),
)

THEOREM_IDS = tuple(_THEOREMS)


def theorem(theorem_id: str) -> Theorem:
    try:
        return _THEOREMS[theorem_id]
    except KeyError:
        raise ValueError(f"unknown theorem id {theorem_id!r}") from None


# --------------------------------------------------------------------------
# sweeps


@dataclass
class SweepReport:
    ground_size: int
    theorem: str
    universe: str
    expected_to_hold: bool
    total: int = 0
    counts: Counter = field(default_factory=Counter)
    violations: list[tuple[str, Witness]] = field(default_factory=list)
    ground: GroundSet | None = None

    @property
    def ok(self) -> bool:
        """Whether the sweep outcome matches the registered expectation."""
        return (not self.violations) if self.expected_to_hold else bool(self.violations)

    def merge(self, other: SweepReport) -> SweepReport:
        self.total += other.total
        self.counts.update(other.counts)
        self.violations.extend(other.violations)
        return self

    def to_dict(self) -> dict:
        g = self.ground or GroundSet.range(self.ground_size)
        return {
            "ground_size": self.ground_size,
            "theorem": self.theorem,
            "statement": _THEOREMS[self.theorem].statement,
            "universe": self.universe,
            "expected_to_hold": self.expected_to_hold,
            "total": self.total,
            "counts": dict(sorted(self.counts.items())),
            "violation_count": len(self.violations),
            "violations": [{"theorem": tid, "witness": w.to_dict(g)} for tid, w in self.violations[:10]],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def summary(self) -> str:
        noun = {
            "partitions": "interval partitions",
            "c1": "C1 tables",
            "consistent": "consistent tables",
        }.get(self.universe, f"{self.universe} spaces")
        return f"{len(self.violations)} violations / {self.total} {noun}"


def _class_signature(op: OperatorTable) -> str:
    return classify(op).signature()


def run_theorem_sweep(ground: GroundSet | int, theorem_id: str, limit_violations: int | None = None) -> SweepReport:
    """Check one registered statement on every member of its universe."""
    if isinstance(ground, int):
        ground = GroundSet.range(ground)
    thm = theorem(theorem_id)
    items = universe(thm.universe, ground)
    report = SweepReport(ground.n, thm.id, thm.universe, thm.holds, ground=ground)
    for item in items:
        report.total += 1
        op = item if isinstance(item, OperatorTable) else operator_from_partition(item)
        report.counts[_class_signature(op)] += 1
        w = thm.check(item)
        if w is not None and (limit_violations is None or len(report.violations) < limit_violations):
            report.violations.append((thm.id, w))
    return report


def census(n: int) -> dict[str, int]:
    """Sizes of the swept universes on ``{1..n}``."""
    ground = GroundSet.range(n)
    _check_exhaustive(ground)
    out = {name: len(_universe(name, n)) for name in UNIVERSES if name != "consistent"}
    out["convex_geometry"] = sum(
        1 for op in _universe("closure", n) if check(op, Axiom.ANTI_EXCHANGE) is None
    )
    return out


# --------------------------------------------------------------------------
# random tables


def random_tables(
    ground: GroundSet | int,
    seed: int,
    count: int,
    constraint: Iterable[Axiom | str] = (),
    kind: Kind = Kind.TAU,
    max_attempts: int | None = None,
) -> Iterator[OperatorTable]:
    """Seeded pseudorandom tables satisfying every axiom in ``constraint``.

    C1 (equivalently consistency) is built in directly; other axioms are met
    by rejection, giving up after ``max_attempts`` draws.
    """
    if isinstance(ground, int):
        ground = GroundSet.range(ground)
    wanted = {Axiom(a) for a in constraint}
    reflexive = Axiom.C1 in wanted or Axiom.CONSISTENCY in wanted
    rest = wanted - {Axiom.C1, Axiom.CONSISTENCY}
    rng = random.Random(seed)
    full = ground.full
    size = 1 << ground.n
    budget = max_attempts if max_attempts is not None else 1000 * max(count, 1)
    produced = attempts = 0
    while produced < count:
        if attempts >= budget:
            raise RuntimeError(f"rejection budget of {budget} draws exhausted after {produced} tables")
        attempts += 1
        draws = [rng.getrandbits(ground.n) & full if ground.n else 0 for _ in range(size)]
        tau = OperatorTable(ground, Kind.TAU, tuple((x | d) if reflexive else d for x, d in enumerate(draws)))
        if any(check(tau, a) is not None for a in rest):
            continue
        produced += 1
        yield tau if kind is Kind.TAU else violator_from_tau(tau)
