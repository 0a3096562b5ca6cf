"""Ground sets, bitmask subsets, explicit operator tables and their file format.

A subset of a ground set with ``n`` elements is a plain ``int`` whose bit ``i``
marks the ``i``-th label.  An :class:`OperatorTable` stores one image mask per
subset, indexed by the subset mask itself, so ``table.images[X]`` is the image
of ``X``.
"""

from __future__ import annotations

import enum
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import IO, Callable, Iterable, Iterator, Union

MAX_GROUND = 16


class OperatorFormatError(ValueError):
    """Raised when an operator, partition or point file cannot be read."""


class KindError(ValueError):
    """Raised when a check receives a table of the wrong presentation."""


class PreconditionError(ValueError):
    """Raised when a theorem check is applied outside its hypotheses."""


class Kind(enum.Enum):
    TAU = "tau"
    VIOLATOR = "violator"


# --------------------------------------------------------------------------
# subsets


def popcount(mask: int) -> int:
    return mask.bit_count()


def canonical_key(mask: int) -> tuple[int, int]:
    """Sort key: cardinality first, then the numeric value of the mask."""
    return (mask.bit_count(), mask)


@lru_cache(maxsize=None)
def subsets(n: int) -> tuple[int, ...]:
    """All ``2**n`` masks in canonical order."""
    return tuple(sorted(range(1 << n), key=canonical_key))


def submasks(mask: int) -> Iterator[int]:
    """Every submask of ``mask`` (unordered, includes 0 and ``mask``)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=1 << 16)
def between(lower: int, upper: int) -> tuple[int, ...]:
    """Masks ``C`` with ``lower <= C <= upper`` (as sets), canonical order.

    Empty when ``lower`` is not a subset of ``upper``.
    """
    if lower & ~upper:
        return ()
    free = upper & ~lower
    return tuple(sorted((lower | s for s in submasks(free)), key=canonical_key))


def supersets(mask: int, n: int) -> tuple[int, ...]:
    return between(mask, (1 << n) - 1)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


# --------------------------------------------------------------------------
# ground sets


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate element label in ground set {list(labels)}")
        if len(labels) > MAX_GROUND:
            raise ValueError(f"ground set has {len(labels)} elements; the cap is {MAX_GROUND}")

    @classmethod
    def range(cls, n: int) -> GroundSet:
        """Ground set labelled ``"1"``..``"n"``; the labelling used by the canned examples."""
        return cls(tuple(str(i) for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise OperatorFormatError(f"unknown element label {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        out = 0
        for label in labels:
            bit = 1 << self.index(label)
            if out & bit:
                raise OperatorFormatError(f"duplicate element label {label!r} in set")
            out |= bit
        return out

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.labels_of(mask)) + "}"

    def subsets(self) -> tuple[int, ...]:
        return subsets(self.n)


# --------------------------------------------------------------------------
# operator tables


@dataclass(frozen=True)
class OperatorTable:
    """A total map ``2^E -> 2^E``.  No axiom is assumed."""

    ground: GroundSet
    kind: Kind
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != 1 << self.ground.n:
            raise ValueError(f"expected {1 << self.ground.n} entries, got {len(images)}")
        full = self.ground.full
        for x, img in enumerate(images):
            if img < 0 or img & ~full:
                raise ValueError(f"image of {x:#b} is not a subset of the ground set")

    @classmethod
    def from_function(cls, ground: GroundSet, kind: Kind, fn: Callable[[int], int]) -> OperatorTable:
        return cls(ground, kind, tuple(fn(x) for x in range(1 << ground.n)))

    @classmethod
    def identity(cls, ground: GroundSet) -> OperatorTable:
        return cls(ground, Kind.TAU, tuple(range(1 << ground.n)))

    @classmethod
    def constant(cls, ground: GroundSet, value: int, kind: Kind = Kind.TAU) -> OperatorTable:
        return cls(ground, kind, (value,) * (1 << ground.n))

    @classmethod
    def with_overrides(
        cls, ground: GroundSet, kind: Kind, overrides: dict[tuple[str, ...], tuple[str, ...]],
        default: str | None = None,
    ) -> OperatorTable:
        """Build a table from a default rule plus a few exceptions."""
        rule = _DEFAULTS[default or _NATURAL_DEFAULT[kind]]
        images = [rule(x, ground.full) for x in range(1 << ground.n)]
        for key, value in overrides.items():
            images[ground.mask(key)] = ground.mask(value)
        return cls(ground, kind, tuple(images))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def rows(self) -> Iterator[tuple[int, int]]:
        """``(X, image)`` pairs in canonical subset order."""
        for x in subsets(self.ground.n):
            yield x, self.images[x]

    def describe(self) -> str:
        sym = "τ" if self.kind is Kind.TAU else "V"
        g = self.ground
        return "\n".join(f"{sym}({g.fmt(x)}) = {g.fmt(img)}" for x, img in self.rows())


# --------------------------------------------------------------------------
# witnesses


class Witness:
    """A counterexample that can be re-checked against a table.

    Subclasses are frozen dataclasses holding masks; :meth:`reproduces` replays
    the failed condition on a table, :meth:`describe` renders it with labels.
    """

    name: str = "witness"

    def reproduces(self, op: OperatorTable) -> bool:
        raise NotImplementedError

    def describe(self, ground: GroundSet) -> str:
        raise NotImplementedError

    def to_dict(self, ground: GroundSet) -> dict:
        out: dict = {"type": self.name}
        for key, value in vars(self).items():
            if key in _ELEMENT_FIELDS and isinstance(value, int):
                out[key] = ground.labels[value]
            elif isinstance(value, int) and not isinstance(value, bool):
                out[key] = ground.labels_of(value)
            elif isinstance(value, tuple):
                out[key] = [ground.labels_of(v) for v in value]
            else:
                out[key] = value
        out["text"] = self.describe(ground)
        return out


# fields holding an element index rather than a subset mask
_ELEMENT_FIELDS = {"p", "q", "x", "element"}


# --------------------------------------------------------------------------
# file format

_DEFAULTS: dict[str, Callable[[int, int], int]] = {
    "identity": lambda x, full: x,
    "complement": lambda x, full: full & ~x,
}
_NATURAL_DEFAULT = {Kind.TAU: "identity", Kind.VIOLATOR: "complement"}

Source = Union[bytes, str, IO[bytes], IO[str]]


def _read_json(source: Source) -> dict:
    if hasattr(source, "read"):
        source = source.read()  # type: ignore[union-attr]
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise OperatorFormatError(f"malformed syntax: {exc}") from None
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise OperatorFormatError(f"malformed syntax: {exc}") from None
    if not isinstance(data, dict):
        raise OperatorFormatError("malformed syntax: top level must be an object")
    return data


def _label_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in value):
        raise OperatorFormatError(f"malformed syntax: {what} must be a list of labels")
    return [str(v) for v in value]


def read_ground(data: dict) -> GroundSet:
    try:
        return GroundSet(tuple(_label_list(data.get("ground"), "'ground'")))
    except OperatorFormatError:
        raise
    except ValueError as exc:
        raise OperatorFormatError(str(exc)) from None


def load_operator(source: Source) -> OperatorTable:
    """Parse an operator file; omitted entries follow the declared default rule.

    A missing ``"default"`` key means the kind's natural rule (identity for
    ``tau``, complement for ``violator``); ``"none"`` demands all ``2^n`` rows.
    """
    data = _read_json(source)
    ground = read_ground(data)
    try:
        kind = Kind(data.get("kind"))
    except ValueError:
        raise OperatorFormatError(f"malformed syntax: unknown kind {data.get('kind')!r}") from None
    default = data.get("default", _NATURAL_DEFAULT[kind])
    if default not in ("identity", "complement", "none"):
        raise OperatorFormatError(f"malformed syntax: unknown default {default!r}")
    entries = data.get("map", [])
    if not isinstance(entries, list):
        raise OperatorFormatError("malformed syntax: 'map' must be a list")

    images: list[int | None] = [None] * (1 << ground.n)
    for entry in entries:
        if not isinstance(entry, dict) or set(entry) != {"set", "image"}:
            raise OperatorFormatError("malformed syntax: map entries need exactly 'set' and 'image'")
        x = ground.mask(_label_list(entry["set"], "'set'"))
        img = ground.mask(_label_list(entry["image"], "'image'"))
        if images[x] is not None:
            raise OperatorFormatError(f"duplicate subset entry {ground.fmt(x)}")
        images[x] = img

    if default == "none":
        missing = [x for x in subsets(ground.n) if images[x] is None]
        if missing:
            raise OperatorFormatError(
                f"missing default with incomplete map: {len(missing)} subsets unset, "
                f"first {ground.fmt(missing[0])}"
            )
    else:
        rule = _DEFAULTS[default]
        images = [rule(x, ground.full) if img is None else img for x, img in enumerate(images)]
    return OperatorTable(ground, kind, tuple(images))  # type: ignore[arg-type]


def load_operator_file(path) -> OperatorTable:
    with open(path, "rb") as fh:
        return load_operator(fh)


def save_operator(op: OperatorTable) -> bytes:
    """Serialize with whichever default rule needs the fewest overrides."""
    g = op.ground
    choices = [_NATURAL_DEFAULT[op.kind]] + [d for d in _DEFAULTS if d != _NATURAL_DEFAULT[op.kind]]
    best = min(
        choices,
        key=lambda d: sum(op.images[x] != _DEFAULTS[d](x, g.full) for x in range(1 << g.n)),
    )
    rule = _DEFAULTS[best]
    rows = [
        {"set": g.labels_of(x), "image": g.labels_of(img)}
        for x, img in op.rows()
        if img != rule(x, g.full)
    ]
    buf = io.StringIO()
    buf.write("{\n")
    buf.write(f'  "ground": {json.dumps(list(g.labels), ensure_ascii=False)},\n')
    buf.write(f'  "kind": "{op.kind.value}",\n')
    buf.write(f'  "default": "{best}",\n')
    if rows:
        buf.write('  "map": [\n')
        buf.write(",\n".join("    " + json.dumps(r, ensure_ascii=False) for r in rows))
        buf.write("\n  ]\n")
    else:
        buf.write('  "map": []\n')
    buf.write("}\n")
    return buf.getvalue().encode("utf-8")
