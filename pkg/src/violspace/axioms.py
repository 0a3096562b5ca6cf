"""Exhaustive axiom checks with replayable witnesses, and the space classifier.

Every ``check_*`` function returns ``None`` when the axiom holds and otherwise
the first violation in canonical subset order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core import (
    GroundSet,
    Kind,
    KindError,
    OperatorTable,
    Witness,
    between,
    bits,
    is_subset,
    subsets,
    supersets,
)
from .duality import as_tau, as_violator


class Axiom(enum.Enum):
    C1 = "c1"
    C2 = "c2"
    C3 = "c3"
    C22 = "c22"
    CONVEXITY = "convexity"
    ANTI_EXCHANGE = "anti-exchange"
    CONSISTENCY = "consistency"
    LOCALITY = "locality"
    MONOTONICITY = "monotonicity"

    @property
    def kind(self) -> Kind:
        return Kind.VIOLATOR if self in _V_AXIOMS else Kind.TAU


_V_AXIOMS = {Axiom.CONSISTENCY, Axiom.LOCALITY, Axiom.MONOTONICITY}


def _require(op: OperatorTable, kind: Kind) -> tuple[int, ...]:
    if op.kind is not kind:
        raise KindError(f"expected a {kind.value} table, got {op.kind.value}")
    return op.images


# --------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class C1Witness(Witness):
    X: int
    name = "c1"

    def reproduces(self, op):
        t = as_tau(op).images
        return not is_subset(self.X, t[self.X])

    def describe(self, g):
        return f"X={g.fmt(self.X)} ⊄ τ(X)"


@dataclass(frozen=True)
class C2Witness(Witness):
    X: int
    Y: int
    name = "c2"

    def reproduces(self, op):
        t = as_tau(op).images
        return is_subset(self.X, self.Y) and not is_subset(t[self.X], t[self.Y])

    def describe(self, g):
        return f"X={g.fmt(self.X)} ⊆ Y={g.fmt(self.Y)} but τ(X) ⊄ τ(Y)"


@dataclass(frozen=True)
class C3Witness(Witness):
    X: int
    name = "c3"

    def reproduces(self, op):
        t = as_tau(op).images
        return t[t[self.X]] != t[self.X]

    def describe(self, g):
        return f"X={g.fmt(self.X)}: τ(τ(X)) ≠ τ(X)"


@dataclass(frozen=True)
class C22Witness(Witness):
    F: int
    G: int
    name = "c22"

    def reproduces(self, op):
        t = as_tau(op).images
        return is_subset(self.F, self.G) and is_subset(self.G, t[self.F]) and t[self.G] != t[self.F]

    def describe(self, g):
        return f"F={g.fmt(self.F)} ⊆ G={g.fmt(self.G)} ⊆ τ(F) but τ(G)≠τ(F)"


@dataclass(frozen=True)
class ConvexityWitness(Witness):
    X: int
    Y: int
    Z: int
    name = "convexity"

    def reproduces(self, op):
        t = as_tau(op).images
        chain = is_subset(self.X, self.Y) and is_subset(self.Y, self.Z)
        return chain and t[self.X] == t[self.Z] and t[self.Y] != t[self.X]

    def describe(self, g):
        return (f"X={g.fmt(self.X)} ⊆ Y={g.fmt(self.Y)} ⊆ Z={g.fmt(self.Z)} "
                f"with τ(X)=τ(Z) but τ(Y)≠τ(X)")


@dataclass(frozen=True)
class AntiExchangeWitness(Witness):
    X: int
    p: int
    q: int
    name = "anti-exchange"

    def reproduces(self, op):
        t = as_tau(op).images
        p, q = 1 << self.p, 1 << self.q
        outside = not (t[self.X] & (p | q))
        return p != q and outside and bool(t[self.X | q] & p) and bool(t[self.X | p] & q)

    def describe(self, g):
        p, q = g.labels[self.p], g.labels[self.q]
        return (f"X={g.fmt(self.X)}, p={p}, q={q} ∉ τ(X) "
                f"but p ∈ τ(X∪q) and q ∈ τ(X∪p)")


@dataclass(frozen=True)
class ConsistencyWitness(Witness):
    G: int
    name = "consistency"

    def reproduces(self, op):
        v = as_violator(op).images
        return bool(self.G & v[self.G])

    def describe(self, g):
        return f"G={g.fmt(self.G)}: G ∩ V(G) ≠ ∅"


@dataclass(frozen=True)
class LocalityWitness(Witness):
    F: int
    G: int
    name = "locality"

    def reproduces(self, op):
        v = as_violator(op).images
        return is_subset(self.F, self.G) and not (self.G & v[self.F]) and v[self.G] != v[self.F]

    def describe(self, g):
        return f"F={g.fmt(self.F)} ⊆ G={g.fmt(self.G)}, G ∩ V(F) = ∅ but V(G)≠V(F)"


@dataclass(frozen=True)
class MonotonicityWitness(Witness):
    F: int
    E: int
    G: int
    name = "monotonicity"

    def reproduces(self, op):
        v = as_violator(op).images
        chain = is_subset(self.F, self.E) and is_subset(self.E, self.G)
        return chain and v[self.F] == v[self.G] and v[self.E] != v[self.F]

    def describe(self, g):
        return (f"F={g.fmt(self.F)} ⊆ E={g.fmt(self.E)} ⊆ G={g.fmt(self.G)} "
                f"with V(F)=V(G) but V(E)≠V(F)")


# --------------------------------------------------------------------------
# closure-style axioms


def check_c1(op: OperatorTable) -> C1Witness | None:
    t = _require(op, Kind.TAU)
    for x in subsets(op.ground.n):
        if x & ~t[x]:
            return C1Witness(x)
    return None


def check_c2(op: OperatorTable) -> C2Witness | None:
    t = _require(op, Kind.TAU)
    n = op.ground.n
    for x in subsets(n):
        for y in supersets(x, n):
            if t[x] & ~t[y]:
                return C2Witness(x, y)
    return None


def check_c3(op: OperatorTable) -> C3Witness | None:
    t = _require(op, Kind.TAU)
    for x in subsets(op.ground.n):
        if t[t[x]] != t[x]:
            return C3Witness(x)
    return None


def check_c22(op: OperatorTable) -> C22Witness | None:
    t = _require(op, Kind.TAU)
    for f in subsets(op.ground.n):
        for g in between(f, t[f]):
            if t[g] != t[f]:
                return C22Witness(f, g)
    return None


def _sandwich(images: tuple[int, ...], n: int) -> tuple[int, int, int] | None:
    # pairwise form: every Y between two equal-image sets shares the image
    for x in subsets(n):
        for z in supersets(x, n):
            if images[z] != images[x]:
                continue
            for y in between(x, z):
                if images[y] != images[x]:
                    return x, y, z
    return None


def check_convexity(op: OperatorTable) -> ConvexityWitness | None:
    t = _require(op, Kind.TAU)
    found = _sandwich(t, op.ground.n)
    return ConvexityWitness(*found) if found else None


def check_anti_exchange(op: OperatorTable) -> AntiExchangeWitness | None:
    t = _require(op, Kind.TAU)
    for x in subsets(op.ground.n):
        outside = list(bits(op.ground.full & ~t[x]))
        for i, p in enumerate(outside):
            for q in outside[i + 1:]:
                if t[x | 1 << q] >> p & 1 and t[x | 1 << p] >> q & 1:
                    return AntiExchangeWitness(x, p, q)
    return None


# --------------------------------------------------------------------------
# violator-style axioms


def check_consistency(op: OperatorTable) -> ConsistencyWitness | None:
    v = _require(op, Kind.VIOLATOR)
    for g in subsets(op.ground.n):
        if g & v[g]:
            return ConsistencyWitness(g)
    return None


def check_locality(op: OperatorTable) -> LocalityWitness | None:
    v = _require(op, Kind.VIOLATOR)
    n = op.ground.n
    for f in subsets(n):
        for g in supersets(f, n):
            if not g & v[f] and v[g] != v[f]:
                return LocalityWitness(f, g)
    return None


def check_monotonicity(op: OperatorTable) -> MonotonicityWitness | None:
    v = _require(op, Kind.VIOLATOR)
    found = _sandwich(v, op.ground.n)
    return MonotonicityWitness(*found) if found else None


CHECKS = {
    Axiom.C1: check_c1,
    Axiom.C2: check_c2,
    Axiom.C3: check_c3,
    Axiom.C22: check_c22,
    Axiom.CONVEXITY: check_convexity,
    Axiom.ANTI_EXCHANGE: check_anti_exchange,
    Axiom.CONSISTENCY: check_consistency,
    Axiom.LOCALITY: check_locality,
    Axiom.MONOTONICITY: check_monotonicity,
}


def check(op: OperatorTable, axiom: Axiom) -> Witness | None:
    """Run one axiom on whichever presentation it is stated for."""
    target = as_violator(op) if axiom.kind is Kind.VIOLATOR else as_tau(op)
    return CHECKS[axiom](target)


def is_violator_space(op: OperatorTable) -> bool:
    t = as_tau(op)
    return check_c1(t) is None and check_c22(t) is None


def is_convex_space(op: OperatorTable) -> bool:
    t = as_tau(op)
    return check_c1(t) is None and check_convexity(t) is None


def is_closure_space(op: OperatorTable) -> bool:
    t = as_tau(op)
    return check_c1(t) is None and check_c2(t) is None and check_c3(t) is None


# --------------------------------------------------------------------------
# classification


@dataclass
class AxiomReport:
    ground: GroundSet
    source_kind: Kind
    flags: dict[Axiom, bool]
    witnesses: dict[Axiom, Witness] = field(default_factory=dict)

    @property
    def closure_space(self) -> bool:
        return self.flags[Axiom.C1] and self.flags[Axiom.C2] and self.flags[Axiom.C3]

    @property
    def violator_space(self) -> bool:
        if self.source_kind is Kind.VIOLATOR:
            return self.flags[Axiom.CONSISTENCY] and self.flags[Axiom.LOCALITY]
        return self.flags[Axiom.C1] and self.flags[Axiom.C22]

    @property
    def convex_space(self) -> bool:
        return self.flags[Axiom.C1] and self.flags[Axiom.CONVEXITY]

    @property
    def convex_geometry(self) -> bool:
        return self.closure_space and self.flags[Axiom.ANTI_EXCHANGE]

    @property
    def classes(self) -> dict[str, bool]:
        return {
            "closure_space": self.closure_space,
            "violator_space": self.violator_space,
            "convex_space": self.convex_space,
            "convex_geometry": self.convex_geometry,
        }

    def signature(self) -> str:
        names = [name.removesuffix("_space") for name, on in self.classes.items() if on]
        return "+".join(names) or "none"

    def to_dict(self) -> dict:
        return {
            "ground": list(self.ground.labels),
            "kind": self.source_kind.value,
            "axioms": {a.value: self.flags[a] for a in Axiom},
            "classes": self.classes,
            "witnesses": {a.value: w.to_dict(self.ground) for a, w in self.witnesses.items()},
        }


def classify(op: OperatorTable) -> AxiomReport:
    """Check every axiom on the presentation it is stated for.

    Closure-style axioms run on the tau form and violator-style axioms on the
    violator form, converting ``op`` pointwise where needed.
    """
    flags: dict[Axiom, bool] = {}
    witnesses: dict[Axiom, Witness] = {}
    for axiom in Axiom:
        w = check(op, axiom)
        flags[axiom] = w is None
        if w is not None:
            witnesses[axiom] = w
    return AxiomReport(op.ground, op.kind, flags, witnesses)
