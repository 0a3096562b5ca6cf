import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from violspace.axioms import Axiom, check, classify
from violspace.core import OperatorFormatError, subsets
from violspace.duality import as_tau
from violspace.generators import extreme_points, generators_of
from violspace.miniball import (
    Point,
    PointConfig,
    circumcenter,
    load_points,
    materialize,
    save_points,
    smallest_enclosing_ball,
    violators,
)


def _config(coords, labels=None):
    labels = labels or [str(i) for i in range(len(coords))]
    return PointConfig(tuple(Point(lab, tuple(c)) for lab, c in zip(labels, coords)))


SQUARE = _config([(0, 0), (0, 1), (1, 0), (1, 1)], ["a", "b", "c", "d"])
LINE = _config([(0,), (1,), (3,)], ["0", "1", "3"])


def _random_config(rng):
    dim = rng.choice((1, 2))
    size = rng.randint(3, 6)
    pts = set()
    while len(pts) < size:
        pts.add(tuple(F(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(dim)))
    return _config(sorted(pts))


class TestBall:
    def test_segment(self):
        ball = smallest_enclosing_ball(_config([(0,), (3,)]).points)
        assert ball.center == (F(3, 2),) and ball.radius_sq == F(9, 4)

    def test_interior_point_ignored(self):
        ball = smallest_enclosing_ball(LINE.points)
        assert ball.center == (F(3, 2),) and ball.radius_sq == F(9, 4)

    def test_square(self):
        ball = smallest_enclosing_ball(SQUARE.points)
        assert ball.center == (F(1, 2), F(1, 2)) and ball.radius_sq == F(1, 2)

    def test_single_and_empty(self):
        assert smallest_enclosing_ball([Point("x", (F(2), F(5)))]).radius_sq == 0
        assert smallest_enclosing_ball([]) is None

    def test_collinear_has_no_circumcenter(self):
        assert circumcenter((F(0), F(0)), (F(1), F(1)), (F(2), F(2))) is None

    def test_obtuse_triangle_uses_long_side(self):
        ball = smallest_enclosing_ball(_config([(0, 0), (4, 0), (2, 1)]).points)
        assert ball.center == (F(2), F(0)) and ball.radius_sq == 4


def test_matches_oracle_on_random_sets():
    rng = random.Random(2024)
    for _ in range(150):
        cfg = _random_config(rng)
        ball = smallest_enclosing_ball(cfg.points)
        assert (ball.center, ball.radius_sq) == oracle.brute_ball([p.coords for p in cfg.points])


class TestViolators:
    def test_strictly_outside(self):
        g = LINE.ground
        assert violators(LINE, g.mask(["0", "1"])) == g.mask(["3"])
        assert violators(LINE, g.mask(["0", "3"])) == 0
        assert violators(LINE, 0) == g.full

    def test_boundary_is_not_a_violator(self):
        g = SQUARE.ground
        assert violators(SQUARE, g.mask(["a", "d"])) == 0

    def test_materialize_agrees_with_direct(self):
        rng = random.Random(9)
        for _ in range(20):
            cfg = _random_config(rng)
            table = materialize(cfg)
            assert all(table(x) == violators(cfg, x) for x in subsets(len(cfg.points)))


def _bases_small(op, dim):
    t = as_tau(op)
    return all(b.bit_count() <= dim + 1 for x in subsets(op.ground.n) for b in generators_of(t, x).bases)


def test_random_configs_form_violator_spaces():
    rng = random.Random(17)
    for _ in range(100):
        cfg = _random_config(rng)
        v = materialize(cfg)
        assert check(v, Axiom.CONSISTENCY) is None
        assert check(v, Axiom.LOCALITY) is None
        r = classify(v)
        assert r.flags[Axiom.C1] and r.flags[Axiom.C22] and r.flags[Axiom.C3]
        assert _bases_small(v, cfg.dim)


def test_square_has_two_diagonal_bases():
    t = as_tau(materialize(SQUARE))
    g = t.ground
    assert generators_of(t, g.full).bases == (g.mask(["b", "c"]), g.mask(["a", "d"]))
    assert classify(t).signature() == "closure+violator+convex"


def test_collinear_line_extremes():
    t = as_tau(materialize(LINE))
    g = t.ground
    assert extreme_points(t, g.full).ex == g.mask(["0", "3"])
    assert generators_of(t, g.full).bases == (g.mask(["0", "3"]),)


class TestFiles:
    def test_round_trip(self):
        cfg = _config([(F(1, 3), 2), (0, F(-5, 7))])
        assert load_points(save_points(cfg)) == cfg

    @pytest.mark.parametrize("doc", [
        {"dim": 3, "points": [{"label": "a", "coords": [0, 0, 0]}]},
        {"dim": 1, "points": [{"label": "a", "coords": [0.5]}]},
        {"dim": 1, "points": [{"label": "a", "coords": ["1/0"]}]},
        {"dim": 1, "points": [{"label": "a", "coords": [0, 1]}]},
        {"dim": 1, "points": [{"label": "a", "coords": [0]}, {"label": "a", "coords": [1]}]},
        {"dim": 1, "points": []},
    ])
    def test_rejects(self, doc):
        with pytest.raises(OperatorFormatError):
            load_points(json.dumps(doc).encode())

    def test_size_cap(self):
        with pytest.raises(ValueError):
            _config([(i,) for i in range(11)])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=5, unique=True))
def test_ball_is_optimal_property(pts):
    ball = smallest_enclosing_ball(_config(pts).points)
    assert (ball.center, ball.radius_sq) == oracle.brute_ball(pts)
