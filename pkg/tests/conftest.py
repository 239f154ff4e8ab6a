from itertools import product

import pytest

from twomaxsat.formula import parse_cnf, parse_dnf
from twomaxsat.solver import build_pipeline

SMALL_CNF = "p cnf 3 3\n1 2 0\n2 -3 0\n3 -1 0\n"
SMALL_DNF = "p dnf 6 6\n1 4 0\n2 -4 0\n2 5 0\n-3 -5 0\n3 6 0\n-1 -6 0\n"
WORKED_ORDER = [2, 3, 1, 4, 5, 6]


@pytest.fixture
def small_cnf():
    return parse_cnf(SMALL_CNF)


@pytest.fixture
def small_dnf():
    return parse_dnf(SMALL_DNF)


@pytest.fixture(scope="session")
def worked_graph():
    return build_pipeline(parse_dnf(SMALL_DNF), WORKED_ORDER).graph


def brute_max(num_vars, rows, conjunctive):
    """Pure-python exhaustive optimum, independent of the numpy oracle."""
    best = 0
    for bits in product((False, True), repeat=num_vars):
        lit = lambda l: bits[abs(l) - 1] if l > 0 else not bits[abs(l) - 1]  # noqa: E731
        join = all if conjunctive else any
        best = max(best, sum(1 for row in rows if join(lit(l) for l in row)))
    return best


_ACCEPTANCE = pytest.StashKey[dict]()


class _Recorder:
    def __init__(self, store, key, label):
        self.store, self.key, self.label = store, key, label
        self.note = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        verdict = "PASS" if exc_type is None else "FAIL"
        detail = self.note or (str(exc).splitlines()[0] if exc else "")
        self.store[self.key] = f"criterion {self.key:>3} {verdict}  {self.label}" + (f"  [{detail}]" if detail else "")
        return False


@pytest.fixture
def criterion(request):
    """``with criterion("7", "label") as c:`` records one pass/fail line."""
    store = request.config.stash.setdefault(_ACCEPTANCE, {})
    return lambda key, label: _Recorder(store, key, label)


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_ACCEPTANCE, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for line in store.values():
            terminalreporter.write_line(line)
