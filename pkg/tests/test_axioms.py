import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from violspace.axioms import (
    Axiom,
    AntiExchangeWitness,
    C2Witness,
    C22Witness,
    ConvexityWitness,
    LocalityWitness,
    check,
    check_anti_exchange,
    check_c1,
    check_c2,
    check_c22,
    check_consistency,
    check_convexity,
    check_locality,
    check_monotonicity,
    classify,
)
from violspace.core import GroundSet, Kind, KindError, OperatorTable, subsets
from violspace.duality import as_tau, as_violator, violator_from_tau
from violspace.enumeration import EXAMPLE_IDS, paper_example, random_tables

ORACLE = {
    Axiom.C1: oracle.c1,
    Axiom.C2: oracle.c2,
    Axiom.C3: oracle.c3,
    Axiom.C22: oracle.c22,
    Axiom.CONVEXITY: oracle.convexity,
    Axiom.ANTI_EXCHANGE: oracle.anti_exchange,
    Axiom.CONSISTENCY: oracle.consistency,
    Axiom.LOCALITY: oracle.locality,
    Axiom.MONOTONICITY: oracle.monotonicity,
}


def _oracle_flags(op):
    out = {}
    for axiom, fn in ORACLE.items():
        form = as_violator(op) if axiom.kind is Kind.VIOLATOR else as_tau(op)
        out[axiom] = fn(*oracle.as_map(form))
    return out


def _all_tables(n):
    g = GroundSet.range(n)
    for images in itertools.product(range(2 ** n), repeat=2 ** n):
        yield OperatorTable(g, Kind.TAU, images)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_every_small_table_agrees_with_oracle(n):
    count = 0
    for op in _all_tables(n):
        report = classify(op)
        assert report.flags == _oracle_flags(op), op.describe()
        for axiom, w in report.witnesses.items():
            assert w.reproduces(op)
        count += 1
    assert count == (2 ** n) ** (2 ** n)


def test_random_n3_tables_agree_with_oracle():
    for kind in Kind:
        for op in random_tables(3, seed=11, count=60, kind=kind):
            assert classify(op).flags == _oracle_flags(op)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=8, max_size=8))
def test_unconstrained_n3_tables_agree_with_oracle(images):
    op = OperatorTable(GroundSet.range(3), Kind.TAU, tuple(images))
    report = classify(op)
    assert report.flags == _oracle_flags(op)
    for w in report.witnesses.values():
        assert w.reproduces(op)


class TestWitnessOrder:
    def test_witness_is_canonically_first(self):
        # brute-force: no earlier (canonical) X fails c1
        g = GroundSet.range(3)
        op = OperatorTable.with_overrides(g, Kind.TAU, {("1", "2"): ("1",), ("3",): ()})
        w = check_c1(op)
        order = subsets(3)
        assert w.X == g.mask(["3"])
        assert all(x & ~op(x) == 0 for x in order[: order.index(w.X)])

    def test_locality_n2(self):
        g = GroundSet.range(2)
        op = OperatorTable(g, Kind.VIOLATOR, (0b10, 0b00, 0b00, 0b00))
        # V(∅)={2}, V({1})=∅: {1} misses V(∅) yet V changes
        assert check_consistency(op) is None
        assert check_locality(op) == LocalityWitness(0, 0b01)

    def test_convexity_n2(self):
        g = GroundSet.range(2)
        op = OperatorTable(g, Kind.TAU, (0b11, 0b01, 0b10, 0b11))
        assert check_c1(op) is None
        assert check_convexity(op) == ConvexityWitness(0, 0b01, 0b11)


class TestExamples:
    def test_ex1_both_forms(self):
        for eid in ("ex1", "ex1_literal"):
            op = paper_example(eid)
            report = classify(op)
            assert report.violator_space
            assert not report.closure_space
            assert check_c2(as_tau(op)) == C2Witness(0b001, 0b011)

    def test_ex1_anti_exchange(self):
        assert check_anti_exchange(as_tau(paper_example("ex1"))) == AntiExchangeWitness(0, 0, 2)
        assert check_anti_exchange(as_tau(paper_example("ex1_literal"))) is None

    def test_ex2_2_convex_not_violator(self):
        op = paper_example("ex2_2")
        r = classify(op)
        assert r.convex_space and not r.violator_space
        assert check_c22(op) == C22Witness(0b001, 0b011)
        assert r.witnesses[Axiom.C3].X == 0b001
        assert check_monotonicity(violator_from_tau(op)) is None

    def test_exms_anti_exchange(self):
        w = check_anti_exchange(paper_example("exms"))
        assert w == AntiExchangeWitness(0b0001, 1, 2)
        assert "p=2, q=3" in w.describe(paper_example("exms").ground)

    @pytest.mark.parametrize("eid", EXAMPLE_IDS)
    def test_signature_matches_oracle(self, eid):
        op = paper_example(eid)
        assert classify(op).flags == _oracle_flags(op)


def test_kind_is_enforced():
    g = GroundSet.range(1)
    tau = OperatorTable.identity(g)
    with pytest.raises(KindError):
        check_consistency(tau)
    with pytest.raises(KindError):
        check_c1(violator_from_tau(tau))
    assert check(tau, Axiom.CONSISTENCY) is None


def test_signature_strings():
    g = GroundSet.range(2)
    assert classify(OperatorTable.identity(g)).signature() == "closure+violator+convex+convex_geometry"
    assert classify(OperatorTable(g, Kind.TAU, (0, 0, 0, 0))).signature() == "none"


def test_empty_ground_passes_everything():
    op = OperatorTable(GroundSet.range(0), Kind.TAU, (0,))
    assert all(classify(op).flags.values())
