"""Equivalence classes of an operator, interval partitions of the subset lattice,
and the two-way correspondence between them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

from .axioms import check_c1, check_c22
from .core import (
    GroundSet,
    Kind,
    KindError,
    OperatorFormatError,
    OperatorTable,
    PreconditionError,
    Source,
    Witness,
    _label_list,
    _read_json,
    between,
    canonical_key,
    is_subset,
    read_ground,
    subsets,
    supersets,
)
from .duality import as_tau
from .generators import (
    TheoremWitness,
    classes,
    find_two_bases,
    maximal_members,
    replay,
    unique_basis,
)

MAX_PARTITION_GROUND = 3


class InvalidPartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Interval:
    lower: int
    upper: int

    def __post_init__(self) -> None:
        if not is_subset(self.lower, self.upper):
            raise ValueError("interval lower endpoint is not a subset of the upper")

    def __contains__(self, c: int) -> bool:
        return is_subset(self.lower, c) and is_subset(c, self.upper)

    @property
    def size(self) -> int:
        return 1 << (self.upper & ~self.lower).bit_count()

    def members(self) -> tuple[int, ...]:
        return between(self.lower, self.upper)


@dataclass(frozen=True)
class IntervalPartition:
    """Intervals kept sorted by their lower endpoint in canonical order."""

    ground: GroundSet
    intervals: tuple[Interval, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.intervals, key=lambda iv: (canonical_key(iv.lower), canonical_key(iv.upper))))
        object.__setattr__(self, "intervals", ordered)

    def problems(self) -> list[str]:
        """Overlaps and coverage gaps, empty for a valid partition."""
        g = self.ground
        owner: dict[int, Interval] = {}
        out = []
        for iv in self.intervals:
            if iv.upper & ~g.full:
                out.append(f"interval upper {iv.upper:#b} leaves the ground set")
                continue
            for c in iv.members():
                if c in owner:
                    out.append(
                        f"overlap: {g.fmt(c)} lies in [{g.fmt(owner[c].lower)},{g.fmt(owner[c].upper)}] "
                        f"and [{g.fmt(iv.lower)},{g.fmt(iv.upper)}]"
                    )
                else:
                    owner[c] = iv
        for c in subsets(g.n):
            if c not in owner:
                out.append(f"gap: {g.fmt(c)} is in no interval")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def to_dict(self) -> dict:
        g = self.ground
        return {
            "ground": list(g.labels),
            "intervals": [{"lower": g.labels_of(iv.lower), "upper": g.labels_of(iv.upper)}
                          for iv in self.intervals],
        }


def load_partition(source: Source) -> IntervalPartition:
    data = _read_json(source)
    ground = read_ground(data)
    raw = data.get("intervals")
    if not isinstance(raw, list):
        raise OperatorFormatError("malformed syntax: 'intervals' must be a list")
    intervals = []
    for entry in raw:
        if not isinstance(entry, dict) or set(entry) != {"lower", "upper"}:
            raise OperatorFormatError("malformed syntax: intervals need exactly 'lower' and 'upper'")
        lower = ground.mask(_label_list(entry["lower"], "'lower'"))
        upper = ground.mask(_label_list(entry["upper"], "'upper'"))
        try:
            intervals.append(Interval(lower, upper))
        except ValueError as exc:
            raise OperatorFormatError(str(exc)) from None
    return IntervalPartition(ground, tuple(intervals))


def save_partition(p: IntervalPartition) -> bytes:
    return (json.dumps(p.to_dict(), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# classes


def equivalence_classes(op: OperatorTable) -> list[tuple[int, tuple[int, ...]]]:
    """``(value, members)`` pairs ordered by each class's first member."""
    if op.kind is not Kind.TAU:
        raise KindError("equivalence_classes expects a tau table")
    return [(value, tuple(members)) for value, members in classes(op).items()]


@dataclass(frozen=True)
class NonIntervalWitness(Witness):
    value: int
    name = "non-interval"

    def reproduces(self, op):
        t = as_tau(op)
        members = classes(t).get(self.value, [])
        return bool(members) and not _as_interval(members)

    def describe(self, g):
        return f"the class with value {g.fmt(self.value)} is not an interval"


def _as_interval(members) -> Interval | None:
    lower = upper = members[0]
    for m in members:
        lower &= m
        upper |= m
    iv = Interval(lower, upper)
    return iv if iv.size == len(members) else None


def classes_as_intervals(op: OperatorTable) -> IntervalPartition | NonIntervalWitness:
    intervals = []
    for value, members in equivalence_classes(op):
        iv = _as_interval(members)
        if iv is None:
            return NonIntervalWitness(value)
        intervals.append(iv)
    return IntervalPartition(op.ground, tuple(intervals))


def max_generator(op: OperatorTable, X: int) -> int | None:
    """The unique inclusion-maximal member of X's class, or ``None``."""
    if op.kind is not Kind.TAU:
        raise KindError("max_generator expects a tau table")
    tops = maximal_members(classes(op)[op.images[X]])
    return tops[0] if len(tops) == 1 else None


def has_max_generators(op: OperatorTable) -> bool:
    return all(len(maximal_members(m)) == 1 for m in classes(op).values())


def find_union_failure(op: OperatorTable) -> tuple[int, int] | None:
    """First ``(X, Y)`` with ``τ(X)=τ(Y)`` but ``τ(X∪Y) ≠ τ(X)``."""
    t = op.images
    for members in classes(op).values():
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                if t[x | y] != t[x]:
                    return x, y
    return None


def find_class_closure_failure(op: OperatorTable) -> tuple[int, int] | None:
    """First pair in one class whose meet or join leaves the class."""
    t = op.images
    for members in classes(op).values():
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                if t[x & y] != t[x] or t[x | y] != t[x]:
                    return x, y
    return None


def _require_violator(op):
    if op.kind is not Kind.TAU:
        raise KindError("expected a tau table")
    if check_c1(op) is not None or check_c22(op) is not None:
        raise PreconditionError("table is not a violator space (C1 and C22)")


def check_union(op: OperatorTable) -> TheoremWitness | None:
    """On a violator space: equal images survive unions."""
    _require_violator(op)
    pair = find_union_failure(op)
    return TheoremWitness("union", pair) if pair else None


@replay("union")
def _(op, w):
    x, y = w.sets
    t = op.images
    return t[x] == t[y] and t[x | y] != t[x]


def check_class_lattice_closure(op: OperatorTable) -> TheoremWitness | None:
    """On a uniquely generated violator space: classes are closed under ∩ and ∪."""
    _require_violator(op)
    if find_two_bases(op) is not None:
        raise PreconditionError("table is not uniquely generated")
    pair = find_class_closure_failure(op)
    return TheoremWitness("class-closure", pair) if pair else None


@replay("class-closure")
def _(op, w):
    x, y = w.sets
    t = op.images
    return t[x] == t[y] and (t[x & y] != t[x] or t[x | y] != t[x])


def check_interval_classes(op: OperatorTable) -> TheoremWitness | None:
    """Classes are the intervals ``[basis, top]`` where top is ``τ(A)`` on a
    uniquely generated violator space and the maximal generator on a uniquely
    generated convex space with maximal generators."""
    if op.kind is not Kind.TAU:
        raise KindError("expected a tau table")
    if find_two_bases(op) is not None:
        raise PreconditionError("table is not uniquely generated")
    violator = check_c1(op) is None and check_c22(op) is None
    if not violator and not has_max_generators(op):
        raise PreconditionError("needs a violator space or unique maximal generators")
    for value, members in equivalence_classes(op):
        if _interval_class_fails(op, members[0], violator):
            return TheoremWitness("interval-classes", (members[0],),
                                  note="violator" if violator else "convex")
    return None


def _interval_class_fails(op, a: int, violator: bool) -> bool:
    basis = unique_basis(op, a)
    top = op.images[a] if violator else max_generator(op, a)
    if basis is None or top is None or not is_subset(basis, top):
        return True
    members = classes(op)[op.images[a]]
    return tuple(members) != between(basis, top)


@replay("interval-classes")
def _(op, w):
    return _interval_class_fails(op, w.sets[0], w.note == "violator")


# --------------------------------------------------------------------------
# partitions -> operators


def operator_from_partition(p: IntervalPartition) -> OperatorTable:
    """``τ(X)`` = upper endpoint of the interval holding ``X``."""
    problems = p.problems()
    if problems:
        raise InvalidPartitionError("; ".join(problems))
    images = [0] * (1 << p.ground.n)
    for iv in p.intervals:
        for c in iv.members():
            images[c] = iv.upper
    return OperatorTable(p.ground, Kind.TAU, tuple(images))


def enumerate_interval_partitions(ground: GroundSet) -> Iterator[IntervalPartition]:
    """Every interval partition of ``2^E`` once, by backtracking on the
    canonically least uncovered subset, which must be a lower endpoint."""
    n = ground.n
    if n > MAX_PARTITION_GROUND:
        raise ValueError(f"interval partitions are enumerated only for n <= {MAX_PARTITION_GROUND}")
    order = subsets(n)
    covered = [False] * (1 << n)
    chosen: list[Interval] = []

    def place(start: int) -> Iterator[IntervalPartition]:
        while start < len(order) and covered[order[start]]:
            start += 1
        if start == len(order):
            yield IntervalPartition(ground, tuple(chosen))
            return
        low = order[start]
        for up in supersets(low, n):
            members = between(low, up)
            if any(covered[c] for c in members):
                continue
            for c in members:
                covered[c] = True
            chosen.append(Interval(low, up))
            yield from place(start + 1)
            chosen.pop()
            for c in members:
                covered[c] = False

    yield from place(0)


def check_partition_theorem(p: IntervalPartition) -> TheoremWitness | None:
    """The operator built from ``p`` is a uniquely generated violator space
    whose classes are exactly ``p``."""
    op = operator_from_partition(p)
    if check_c1(op) is not None or check_c22(op) is not None:
        return TheoremWitness("partition", (), note="not a violator space")
    two = find_two_bases(op)
    if two is not None:
        return TheoremWitness("partition", (two.X, two.B1, two.B2), note="not uniquely generated")
    if classes_as_intervals(op) != p:
        return TheoremWitness("partition", (), note="classes differ from the partition")
    return None


@replay("partition")
def _(op, w):
    # replayed on the operator built from the partition
    violator = check_c1(op) is None and check_c22(op) is None
    return not violator or find_two_bases(op) is not None
