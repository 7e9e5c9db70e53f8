import pytest

from satcsp_core.types import Cnf, Csp, ExtensionalConstraint

D2 = ("1", "2")
D3 = ("1", "2", "3")


def allows(x, y, *pairs):
    return ExtensionalConstraint((x, y), "allows", frozenset(pairs))


def forbids(x, y, *pairs):
    return ExtensionalConstraint((x, y), "forbids", frozenset(pairs))


@pytest.fixture
def xor_square():
    """Every sign pattern over x1, x2: UP-stable yet unsatisfiable."""
    return Cnf(2, ((1, 2), (-1, 2), (1, -2), (-1, -2)))


@pytest.fixture
def neq2():
    return Csp.build([D2, D2], [forbids(0, 1, ("1", "1"), ("2", "2"))])


@pytest.fixture
def chain3():
    """X < Y < Z over {1, 2, 3}."""
    lt = [(a, b) for a in D3 for b in D3 if a < b]
    return Csp.build([D3] * 3, [allows(0, 1, *lt), allows(1, 2, *lt)])
