"""Smallest enclosing balls in dimension 1 and 2 over exact rationals, and the
violator table they induce on a labelled point set."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import GroundSet, Kind, OperatorFormatError, OperatorTable, Source, _read_json, bits

MAX_POINTS = 10


@dataclass(frozen=True)
class Point:
    label: str
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class Ball:
    center: tuple[Fraction, ...]
    radius_sq: Fraction

    def contains(self, coords: Sequence[Fraction]) -> bool:
        return dist_sq(self.center, coords) <= self.radius_sq


@dataclass(frozen=True)
class PointConfig:
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not 1 <= len(pts) <= MAX_POINTS:
            raise ValueError(f"a point configuration holds 1..{MAX_POINTS} points, got {len(pts)}")
        labels = [p.label for p in pts]
        if len(set(labels)) != len(labels):
            raise ValueError("point labels must be distinct")
        _common_dim(pts)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    @property
    def ground(self) -> GroundSet:
        return GroundSet(tuple(p.label for p in self.points))

    def select(self, mask: int) -> list[Point]:
        return [self.points[i] for i in bits(mask)]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "points": [{"label": p.label, "coords": [str(c) for c in p.coords]} for p in self.points],
        }


def _common_dim(points: Sequence[Point]) -> int:
    dims = {p.dim for p in points}
    if len(dims) > 1:
        raise ValueError(f"mixed dimensions {sorted(dims)}")
    dim = dims.pop() if dims else 1
    if dim not in (1, 2):
        raise ValueError(f"dimension {dim} is not supported (1 or 2 only)")
    return dim


def dist_sq(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0))


def circumcenter(a, b, c) -> tuple[Fraction, Fraction] | None:
    """Circumcenter of three planar points, ``None`` when collinear."""
    (ax, ay), (bx, by), (cx, cy) = a, b, c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    return ux, uy


def candidate_balls(coords: Sequence[tuple[Fraction, ...]]) -> list[Ball]:
    """Balls through every 1-, 2- and (planar, non-collinear) 3-point support set."""
    out = [Ball(tuple(p), Fraction(0)) for p in coords]
    for p, q in itertools.combinations(coords, 2):
        mid = tuple((x + y) / 2 for x, y in zip(p, q))
        out.append(Ball(mid, dist_sq(mid, p)))
    if coords and len(coords[0]) == 2:
        for p, q, r in itertools.combinations(coords, 3):
            center = circumcenter(p, q, r)
            if center is not None:
                out.append(Ball(center, dist_sq(center, p)))
    return out


def smallest_enclosing_ball(points: Sequence[Point]) -> Ball | None:
    """Exact smallest enclosing ball; ``None`` for no points.

    The optimum is spanned by at most ``dim + 1`` of the points, so it is the
    smallest candidate ball that covers them all.
    """
    points = list(points)
    if not points:
        return None
    _common_dim(points)
    coords = [p.coords for p in points]
    best = None
    for ball in candidate_balls(coords):
        if (best is None or ball.radius_sq < best.radius_sq) and all(ball.contains(c) for c in coords):
            best = ball
    return best


def violators(config: PointConfig, G: int) -> int:
    """Points strictly outside the smallest enclosing ball of ``G``."""
    ball = smallest_enclosing_ball(config.select(G))
    if ball is None:
        return config.ground.full
    out = 0
    for i, p in enumerate(config.points):
        if not ball.contains(p.coords):
            out |= 1 << i
    return out


def materialize(config: PointConfig) -> OperatorTable:
    """The violator table ``G -> V(G)`` over all subsets of the configuration.

    Every candidate ball is built once from the whole configuration; the
    smallest one covering ``G`` is the enclosing ball of ``G``, since any ball
    covering ``G`` is at least as large and the minimum is unique.
    """
    coords = [p.coords for p in config.points]
    full = (1 << len(coords)) - 1
    covers = []
    for ball in candidate_balls(coords):
        mask = sum(1 << i for i, c in enumerate(coords) if ball.contains(c))
        covers.append((ball.radius_sq, mask))
    covers.sort(key=lambda rc: rc[0])
    images = [full] * (1 << len(coords))
    for g in range(1, full + 1):
        for _, mask in covers:
            if g & ~mask == 0:
                images[g] = full & ~mask
                break
    return OperatorTable(config.ground, Kind.VIOLATOR, tuple(images))


# --------------------------------------------------------------------------
# point files


def _rational(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise OperatorFormatError(f"coordinate {value!r} must be an integer or a 'p/q' string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise OperatorFormatError(f"coordinate {value!r} is not a rational number") from None


def load_points(source: Source) -> PointConfig:
    data = _read_json(source)
    dim = data.get("dim")
    raw = data.get("points")
    if dim not in (1, 2):
        raise OperatorFormatError(f"malformed syntax: 'dim' must be 1 or 2, got {dim!r}")
    if not isinstance(raw, list):
        raise OperatorFormatError("malformed syntax: 'points' must be a list")
    points = []
    for entry in raw:
        if not isinstance(entry, dict) or "label" not in entry or "coords" not in entry:
            raise OperatorFormatError("malformed syntax: points need 'label' and 'coords'")
        coords = entry["coords"]
        if not isinstance(coords, list) or len(coords) != dim:
            raise OperatorFormatError(f"point {entry['label']!r} needs {dim} coordinates")
        points.append(Point(str(entry["label"]), tuple(_rational(c) for c in coords)))
    try:
        return PointConfig(tuple(points))
    except ValueError as exc:
        raise OperatorFormatError(str(exc)) from None


def save_points(config: PointConfig) -> bytes:
    return (json.dumps(config.to_dict(), indent=2) + "\n").encode("utf-8")
