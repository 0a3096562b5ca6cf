import pytest

from violspace.core import GroundSet
from violspace.duality import tau_from_violator
from violspace.enumeration import paper_example


@pytest.fixture
def g3():
    return GroundSet.range(3)


@pytest.fixture
def ex1_tau():
    return tau_from_violator(paper_example("ex1"))


@pytest.fixture
def exms():
    return paper_example("exms")


@pytest.fixture
def ex5_1():
    return paper_example("ex5_1")


@pytest.fixture
def ex2_2():
    return paper_example("ex2_2")


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
