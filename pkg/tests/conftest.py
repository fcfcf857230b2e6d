import sys

import pytest

from coxjsj.diagram import CoxeterDiagram
from coxjsj.fixtures import cycle8, e5, plain_cycle8, star


def coxeter_graph(n, edges):
    """Diagram on ``0..n-1`` where listed pairs carry their label and every other pair commutes."""
    gens = [str(k) for k in range(n)]
    given = {frozenset((str(s), str(t))): m for s, t, m in edges}
    labels = {}
    for i in range(n):
        for j in range(i + 1, n):
            m = given.get(frozenset((str(i), str(j))), 2)
            if m != "inf":
                labels[(str(i), str(j))] = m
    return CoxeterDiagram(gens, labels)


def path(n, labels=None):
    labels = labels or {}
    return coxeter_graph(n, [(k, k + 1, labels.get(k, 3)) for k in range(n - 1)])


@pytest.fixture
def fix_cycle8():
    return cycle8()


@pytest.fixture
def fix_plain_cycle8():
    return plain_cycle8()


@pytest.fixture
def fix_star():
    return star()


@pytest.fixture
def fix_e5():
    return e5()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
