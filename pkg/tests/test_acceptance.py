"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its runtime and limit;
the lines are repeated in the terminal summary of any pytest run.
"""

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

import oracle
from violspace.axioms import Axiom, C2Witness, C22Witness, AntiExchangeWitness, check, classify
from violspace.core import GroundSet, Kind, load_operator, save_operator
from violspace.duality import as_tau, as_violator, tau_from_violator, violator_from_tau
from violspace.enumeration import EXAMPLE_IDS, census, paper_example, random_tables, run_theorem_sweep, universe
from violspace.generators import ExtremeDef, TwoBasesWitness, extreme_points, find_two_bases, generators_of, krein_milman_failure
from violspace.hypercube import (
    IntervalPartition,
    NonIntervalWitness,
    classes_as_intervals,
    enumerate_interval_partitions,
    find_union_failure,
    operator_from_partition,
)
from violspace.miniball import Point, PointConfig, materialize, smallest_enclosing_ball

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    ok, detail = False, ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        detail = f"  [{str(exc).splitlines()[0] if str(exc) else 'assertion failed'}]"
        raise
    finally:
        elapsed = time.perf_counter() - start
        timed = elapsed < limit
        status = "PASS" if ok and timed else "FAIL"
        line = f"{status} criterion {number}: {title} ({elapsed:.2f}s, limit {limit:g}s){detail}"
        RESULTS[number] = line
        print(line)
        if ok:
            assert timed, f"runtime {elapsed:.2f}s exceeds {limit:g}s"


def _g(op, *labels):
    return op.ground.mask(labels)


def test_fixture_signatures():
    with criterion(1, "fixture signatures", 1.0):
        ex1 = paper_example("ex1")
        t1 = as_tau(ex1)
        assert classify(ex1).violator_space
        assert check(ex1, Axiom.C2) == C2Witness(_g(ex1, "1"), _g(ex1, "1", "2"))
        assert find_two_bases(t1) == TwoBasesWitness(_g(ex1, "1", "3"), _g(ex1, "1"), _g(ex1, "3"))
        assert generators_of(t1, _g(ex1, "1", "3")).bases == (_g(ex1, "1"), _g(ex1, "3"))

        ex2 = paper_example("ex2_2")
        r2 = classify(ex2)
        assert r2.flags[Axiom.C1] and r2.flags[Axiom.CONVEXITY]
        assert r2.witnesses[Axiom.C22] == C22Witness(_g(ex2, "1"), _g(ex2, "1", "2"))
        assert not r2.flags[Axiom.C3]

        ms = paper_example("exms")
        rm = classify(ms)
        assert rm.convex_space and find_two_bases(ms) is None
        assert rm.witnesses[Axiom.ANTI_EXCHANGE] == AntiExchangeWitness(_g(ms, "1"), 1, 2)
        ext = extreme_points(ms, _g(ms, "1", "2", "3"))
        assert ext.ex == _g(ms, "1") and ext.EX == _g(ms, "1", "3")
        assert krein_milman_failure(ms, ExtremeDef.EX) is None
        assert krein_milman_failure(ms, ExtremeDef.ex) is not None

        e51 = paper_example("ex5_1")
        assert classify(e51).convex_space and find_two_bases(e51) is None
        assert find_union_failure(e51) == (_g(e51, "1", "2"), _g(e51, "1", "3"))
        w = classes_as_intervals(e51)
        assert isinstance(w, NonIntervalWitness) and w.value == e51(_g(e51, "1"))


def test_implication_sweep():
    with criterion(2, "implication sweep over all 4096 C1 tables on n=3", 10.0):
        for tid in ("c2c3-implies-c22", "c1c22-implies-c3", "convexity-c3-implies-c22", "c1c22-implies-convexity"):
            report = run_theorem_sweep(3, tid)
            assert report.total == 4096, tid
            assert not report.violations, f"{tid}: {report.summary()}"
        report = run_theorem_sweep(3, "c1-convexity-implies-c22")
        assert report.total == 4096 and report.violations, "no counterexample to C1+convexity => C22"


VIOLATOR_THEOREMS = [
    "uniquegen-iff-antiexchange",  # (a)
    "krein-milman-ex",             # (b)
    "expoint-violator",            # (c)
    "expb",                        # (d)
    "union",                       # (e)
    "add-lemma",                   # (f)
    "monotonicity",                # (g)
]


def test_violator_theorem_sweeps():
    with criterion(3, "theorem sweeps over all violator spaces, n <= 3", 30.0):
        for n in range(4):
            for tid in VIOLATOR_THEOREMS:
                report = run_theorem_sweep(n, tid)
                assert report.universe == "violator"
                assert not report.violations, f"{tid} n={n}: {report.summary()}"


def test_hypercube_round_trip():
    with criterion(4, "hypercube round-trip, n <= 3", 30.0):
        for n in range(4):
            g = GroundSet.range(n)
            assert not run_theorem_sweep(n, "hp").violations
            assert not run_theorem_sweep(n, "partition").violations
            parts = list(enumerate_interval_partitions(g))
            assert len(parts) == len(set(parts)) == oracle.count_interval_partitions(n)
            ops = universe("ug-violator", g)
            assert len(ops) == len(parts)
            for p in parts:
                op = operator_from_partition(p)
                assert classify(op).violator_space and find_two_bases(op) is None
                assert classes_as_intervals(op) == p
            for op in ops:
                p = classes_as_intervals(op)
                assert isinstance(p, IntervalPartition)
                assert operator_from_partition(p) == op


def test_duality():
    with criterion(5, "duality round-trips and closure/violator correspondence", 5.0):
        tables = [paper_example(e) for e in EXAMPLE_IDS]
        tables += list(random_tables(4, seed=20, count=100, kind=Kind.TAU))
        for op in tables:
            if op.kind is Kind.TAU:
                back = tau_from_violator(violator_from_tau(load_operator(save_operator(op))))
            else:
                back = violator_from_tau(tau_from_violator(load_operator(save_operator(op))))
            assert save_operator(back) == save_operator(op)
        for n in range(4):
            assert not run_theorem_sweep(n, "cltov").violations
            assert not run_theorem_sweep(n, "vtocl").violations
            for op in universe("closure", GroundSet.range(n)):
                v = as_violator(op)
                assert check(v, Axiom.CONSISTENCY) is None and check(v, Axiom.LOCALITY) is None
                assert as_tau(v) == op


def _config(coords, labels):
    return PointConfig(tuple(Point(lab, tuple(c)) for lab, c in zip(labels, coords)))


def _random_config(rng):
    dim = rng.choice((1, 2))
    size = rng.randint(3, 6)
    pts = set()
    while len(pts) < size:
        pts.add(tuple(F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(dim)))
    pts = sorted(pts)
    return _config(pts, [f"p{i}" for i in range(size)])


def test_miniball_oracle():
    with criterion(6, "miniball violator tables", 30.0):
        rng = random.Random(6)
        configs = [_random_config(rng) for _ in range(120)]
        square = _config([(0, 0), (0, 1), (1, 0), (1, 1)], "abcd")
        configs += [
            square,
            _config([(0,), (1,), (3,)], "xyz"),
            _config([(0, 0), (1, 1), (2, 2), (3, 3)], "abcd"),
        ]
        for cfg in configs:
            ball = smallest_enclosing_ball(cfg.points)
            assert (ball.center, ball.radius_sq) == oracle.brute_ball([p.coords for p in cfg.points])
            v = materialize(cfg)
            assert check(v, Axiom.CONSISTENCY) is None and check(v, Axiom.LOCALITY) is None
            t = as_tau(v)
            for axiom in (Axiom.C1, Axiom.C22, Axiom.C3):
                assert check(t, axiom) is None, axiom
            for x in range(1 << t.ground.n):
                for b in generators_of(t, x).bases:
                    assert b.bit_count() <= cfg.dim + 1
        t = as_tau(materialize(square))
        diagonals = {t.ground.mask(["a", "d"]), t.ground.mask(["b", "c"])}
        assert set(generators_of(t, t.ground.full).bases) == diagonals
        assert len(generators_of(t, t.ground.full).bases) == 2


GOLDEN_CENSUS = {
    0: {"closure": 1, "violator": 1, "convex": 1},
    1: {"closure": 2, "violator": 2, "convex": 2},
    2: {"closure": 7, "violator": 9, "convex": 13},
    3: {"closure": 61, "violator": 246, "convex": 1649},
}


def test_regression_census():
    with criterion(7, "census goldens for n <= 3", 30.0):
        for n, golden in GOLDEN_CENSUS.items():
            counts = census(n)
            got = {k: counts[k] for k in golden}
            assert got == golden, f"n={n}: {got} != {golden}"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
