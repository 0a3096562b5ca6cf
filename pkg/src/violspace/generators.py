"""Generators, bases, unique generation and extreme points.

The theorem checks here return ``None`` when the stated implication or
equivalence holds on the given table and a :class:`TheoremWitness` otherwise.
For a genuine theorem, a witness means a bug in this package.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable

from .axioms import check_c1, check_c22, check_convexity
from .core import (
    GroundSet,
    Kind,
    KindError,
    OperatorTable,
    PreconditionError,
    Witness,
    bits,
    canonical_key,
    is_subset,
    subsets,
)
from .duality import as_tau


def _tau(op: OperatorTable) -> tuple[int, ...]:
    if op.kind is not Kind.TAU:
        raise KindError(f"expected a tau table, got {op.kind.value}")
    return op.images


def _require_convex(op: OperatorTable) -> bool:
    """Raise unless ``op`` is a convex space; return whether it is a violator space."""
    _tau(op)
    if check_c1(op) is not None or check_convexity(op) is not None:
        raise PreconditionError("table is not a convex space (C1 and convexity)")
    return check_c22(op) is None


def _require_violator(op: OperatorTable) -> None:
    _tau(op)
    if check_c1(op) is not None or check_c22(op) is not None:
        raise PreconditionError("table is not a violator space (C1 and C22)")


def minimal_members(family) -> list[int]:
    """Inclusion-minimal members of a family of masks, canonical order."""
    family = sorted(set(family), key=canonical_key)
    return [m for m in family if not any(o != m and is_subset(o, m) for o in family)]


def maximal_members(family) -> list[int]:
    family = sorted(set(family), key=canonical_key)
    return [m for m in family if not any(o != m and is_subset(m, o) for o in family)]


def classes(op: OperatorTable) -> dict[int, list[int]]:
    """Map each image value to its members, both in canonical order."""
    out: dict[int, list[int]] = defaultdict(list)
    for x in subsets(op.ground.n):
        out[op.images[x]].append(x)
    return dict(out)


def intersect_all(masks, start: int) -> int:
    out = start
    for m in masks:
        out &= m
    return out


# --------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class TwoBasesWitness(Witness):
    X: int
    B1: int
    B2: int
    name = "two-bases"

    def reproduces(self, op):
        t = as_tau(op).images
        target = t[self.X]
        if self.B1 == self.B2 or t[self.B1] != target or t[self.B2] != target:
            return False
        gens = [y for y in range(len(t)) if t[y] == target]
        return all(not (y != b and is_subset(y, b)) for b in (self.B1, self.B2) for y in gens)

    def describe(self, g):
        return f"X={g.fmt(self.X)} has two bases {g.fmt(self.B1)} and {g.fmt(self.B2)}"


_REPLAY: dict[str, Callable[[OperatorTable, "TheoremWitness"], bool]] = {}


def replay(theorem: str):
    def register(fn):
        _REPLAY[theorem] = fn
        return fn
    return register


@dataclass(frozen=True)
class TheoremWitness(Witness):
    """A set (or pair, or set and element) where a checked statement fails."""

    theorem: str
    sets: tuple[int, ...]
    element: int | None = None
    note: str = ""
    name = "theorem"

    def reproduces(self, op):
        return _REPLAY[self.theorem](as_tau(op), self)

    def describe(self, g):
        parts = ", ".join(g.fmt(s) for s in self.sets)
        if self.element is not None:
            parts += f", x={g.labels[self.element]}"
        text = f"{self.theorem} fails at {parts}"
        return f"{text} ({self.note})" if self.note else text


# --------------------------------------------------------------------------
# generators and bases


@dataclass(frozen=True)
class BasisFamily:
    target: int
    closure_value: int
    generators: tuple[int, ...]
    bases: tuple[int, ...]

    def to_dict(self, ground: GroundSet) -> dict:
        return {
            "set": ground.labels_of(self.target),
            "closure": ground.labels_of(self.closure_value),
            "generators": [ground.labels_of(y) for y in self.generators],
            "bases": [ground.labels_of(b) for b in self.bases],
        }


def generators_of(op: OperatorTable, X: int, within: bool = False) -> BasisFamily:
    """All ``Y`` with ``τ(Y) = τ(X)``; with ``within`` only those ``Y ⊆ X``."""
    t = _tau(op)
    value = t[X]
    gens = tuple(
        y for y in subsets(op.ground.n)
        if t[y] == value and (not within or is_subset(y, X))
    )
    return BasisFamily(X, value, gens, tuple(minimal_members(gens)))


def find_two_bases(op: OperatorTable) -> TwoBasesWitness | None:
    _tau(op)
    for members in classes(op).values():
        mins = minimal_members(members)
        if len(mins) > 1:
            return TwoBasesWitness(members[-1], mins[0], mins[1])
    return None


def is_uniquely_generated(op: OperatorTable) -> TwoBasesWitness | None:
    """``None`` iff every set has exactly one basis."""
    return find_two_bases(op)


def unique_basis(op: OperatorTable, X: int) -> int | None:
    bases = generators_of(op, X).bases
    return bases[0] if len(bases) == 1 else None


# --------------------------------------------------------------------------
# biconditionals against unique generation


def _biconditional(op, theorem, local_failure, note_lhs, note_rhs, converse=True):
    # local_failure(X) -> True where the right-hand side fails at X
    two = find_two_bases(op)
    rhs_fail = next((x for x in subsets(op.ground.n) if local_failure(x)), None)
    if two is None and rhs_fail is not None:
        return TheoremWitness(theorem, (rhs_fail,), note=note_rhs)
    if converse and two is not None and rhs_fail is None:
        return TheoremWitness(theorem, (two.X, two.B1, two.B2), note=note_lhs)
    return None


def _rerun(check):
    def replayer(op, w):
        try:
            return check(op) == w
        except PreconditionError:
            return False
    return replayer


def _u1_local(op: OperatorTable):
    t = op.images
    groups = classes(op)

    def fails(x: int) -> bool:
        members = groups[t[x]]
        return any(not is_subset(b, y) for b in minimal_members(members) for y in members)
    return fails


def check_u1(op: OperatorTable) -> TheoremWitness | None:
    """Unique generation iff every basis of X lies inside every generator of X."""
    _tau(op)
    return _biconditional(
        op, "u1", _u1_local(op),
        "two bases, yet every basis lies in every generator",
        "uniquely generated, yet a basis escapes a generator",
    )


replay("u1")(_rerun(check_u1))


def find_intersection_failure(op: OperatorTable) -> tuple[int, int] | None:
    """First ``(X, Y)`` with ``τ(X)=τ(Y)`` but ``τ(X∩Y) ≠ τ(X)``."""
    t = _tau(op)
    for members in classes(op).values():
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                if t[x & y] != t[x]:
                    return x, y
    return None


def basis_is_generator_intersection(op: OperatorTable) -> int | None:
    """First ``X`` where some basis differs from the intersection of all generators."""
    t = _tau(op)
    groups = classes(op)
    for x in subsets(op.ground.n):
        members = groups[t[x]]
        meet = intersect_all(members, op.ground.full)
        if any(b != meet for b in minimal_members(members)):
            return x
    return None


def check_uq_intersection(op: OperatorTable) -> TheoremWitness | None:
    """On a convex space: unique generation, intersection-closed classes, and
    basis = intersection of generators are mutually equivalent."""
    _require_convex(op)
    ug = find_two_bases(op) is None
    eq3 = find_intersection_failure(op)
    eq4 = basis_is_generator_intersection(op)
    if ug == (eq3 is None) == (eq4 is None):
        return None
    sets: tuple[int, ...] = eq3 if eq3 is not None else ((eq4,) if eq4 is not None else ())
    return TheoremWitness(
        "uq-intersection", sets,
        note=f"uniquely generated={ug}, intersection-closed={eq3 is None}, "
             f"basis is generator meet={eq4 is None}",
    )


replay("uq-intersection")(_rerun(check_uq_intersection))


# --------------------------------------------------------------------------
# the adding lemma


def check_add_lemma(op: OperatorTable) -> TheoremWitness | None:
    """On a violator space: ``x ∉ τ(A)`` iff ``τ(A) ≠ τ(A ∪ x)``."""
    _require_violator(op)
    t = op.images
    for a in subsets(op.ground.n):
        for x in range(op.ground.n):
            if _add_lemma_fails(t, a, x):
                return TheoremWitness("add-lemma", (a,), element=x)
    return None


def _add_lemma_fails(t, a: int, x: int) -> bool:
    outside = not t[a] >> x & 1
    return outside != (t[a] != t[a | 1 << x])


@replay("add-lemma")
def _(op, w):
    return _add_lemma_fails(op.images, w.sets[0], w.element)


# --------------------------------------------------------------------------
# extreme points


class ExtremeDef(enum.Enum):
    EX = "EX"  # τ(A) ≠ τ(A − x)
    ex = "ex"  # x ∉ τ(A − x)


@dataclass(frozen=True)
class ExtremeSets:
    ex: int
    EX: int

    def get(self, definition: ExtremeDef) -> int:
        return self.ex if definition is ExtremeDef.ex else self.EX


def extreme_points(op: OperatorTable, A: int) -> ExtremeSets:
    t = _tau(op)
    ex = EX = 0
    for i in bits(A):
        rest = A & ~(1 << i)
        if not t[rest] >> i & 1:
            ex |= 1 << i
        if t[rest] != t[A]:
            EX |= 1 << i
    return ExtremeSets(ex, EX)


def _expoint_fails(op, a: int, equality: bool) -> bool:
    e = extreme_points(op, a)
    return e.ex != e.EX if equality else not is_subset(e.ex, e.EX)


def check_expoint(op: OperatorTable) -> TheoremWitness | None:
    """ex = EX on violator spaces; ex ⊆ EX on convex spaces."""
    equality = _require_convex(op)
    for a in subsets(op.ground.n):
        if _expoint_fails(op, a, equality):
            return TheoremWitness("expoint", (a,), note="equality" if equality else "inclusion")
    return None


@replay("expoint")
def _(op, w):
    return _expoint_fails(op, w.sets[0], w.note == "equality")


def within_generator_meet(op: OperatorTable, X: int) -> int:
    """Intersection of all generators of X contained in X (X itself if none)."""
    return intersect_all(generators_of(op, X, within=True).generators, X)


def _extreme_gen_fails(op, x: int, equality: bool) -> bool:
    ex = extreme_points(op, x).ex
    meet = within_generator_meet(op, x)
    return ex != meet if equality else not is_subset(ex, meet)


def check_extreme_in_generators(op: OperatorTable) -> TheoremWitness | None:
    """ex(X) is the intersection of the generators of X inside X (violator
    spaces), or is contained in it (convex spaces)."""
    equality = _require_convex(op)
    for x in subsets(op.ground.n):
        if _extreme_gen_fails(op, x, equality):
            return TheoremWitness("extreme-in-generators", (x,),
                                  note="equality" if equality else "inclusion")
    return None


@replay("extreme-in-generators")
def _(op, w):
    return _extreme_gen_fails(op, w.sets[0], w.note == "equality")


def krein_milman_failure(op: OperatorTable, definition: ExtremeDef) -> int | None:
    """First ``X`` with ``τ(X) ≠ τ(ext(X))``; no hypotheses required."""
    t = _tau(op)
    for x in subsets(op.ground.n):
        if t[extreme_points(op, x).get(definition)] != t[x]:
            return x
    return None


def check_krein_milman(
    op: OperatorTable, definition: ExtremeDef | str = ExtremeDef.ex, converse: bool = True,
) -> TheoremWitness | None:
    """Unique generation iff every set is generated by its extreme points.

    The ``ex`` form is checked on violator spaces, the ``EX`` form on convex
    spaces.  With ``converse=False`` only "uniquely generated implies
    τ(X) = τ(ext(X))" is checked; on convex spaces the converse can fail
    (two singleton bases of one class, each its own ``EX``).
    """
    definition = ExtremeDef(definition)
    if definition is ExtremeDef.ex:
        _require_violator(op)
    else:
        _require_convex(op)
    t = op.images

    def fails(x: int) -> bool:
        return t[extreme_points(op, x).get(definition)] != t[x]

    return _biconditional(
        op, f"krein-milman-{definition.value}", fails,
        "two bases, yet every set is generated by its extreme points",
        "uniquely generated, yet τ(X) ≠ τ(ext(X))",
        converse=converse,
    )


@replay("krein-milman-ex")
def _(op, w):
    return _rerun(lambda o: check_krein_milman(o, ExtremeDef.ex))(op, w)


@replay("krein-milman-EX")
def _(op, w):
    converse = w.note.startswith("two bases")
    return _rerun(lambda o: check_krein_milman(o, ExtremeDef.EX, converse))(op, w)


def check_closure_of_extremes(op: OperatorTable) -> TheoremWitness | None:
    """On a uniquely generated violator space: ex(τ(X)) = ex(X) ⊆ X."""
    _require_violator(op)
    if find_two_bases(op) is not None:
        raise PreconditionError("table is not uniquely generated")
    for x in subsets(op.ground.n):
        if _closure_extremes_fail(op, x):
            return TheoremWitness("ex-of-closure", (x,))
    return None


def _closure_extremes_fail(op, x: int) -> bool:
    ex_x = extreme_points(op, x).ex
    ex_cl = extreme_points(op, op.images[x]).ex
    return ex_cl != ex_x or not is_subset(ex_cl, x)


@replay("ex-of-closure")
def _(op, w):
    return _closure_extremes_fail(op, w.sets[0])


def check_basis_inside(op: OperatorTable) -> TheoremWitness | None:
    """On a uniquely generated table: the basis of every X is a subset of X."""
    _tau(op)
    if find_two_bases(op) is not None:
        raise PreconditionError("table is not uniquely generated")
    for x in subsets(op.ground.n):
        b = unique_basis(op, x)
        if b is None or not is_subset(b, x):
            return TheoremWitness("basis-inside", (x,))
    return None


@replay("basis-inside")
def _(op, w):
    b = unique_basis(op, w.sets[0])
    return b is None or not is_subset(b, w.sets[0])
