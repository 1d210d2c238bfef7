import functools
from fractions import Fraction

import pytest

from tha_forge import focal, rootsys, superlocal

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def tables_for(type_label, rank, labels, kappa="auto"):
    c = rootsys.build_cartan(type_label, rank)
    w = rootsys.make_weight(c, labels, kappa)
    return superlocal.build_local_part(c, w, rootsys.build_B(c, w))


@functools.lru_cache(maxsize=None)
def engine_for(type_label, rank, labels, abc=(1, 1, 1)):
    return focal.FocalAlgebra(tables_for(type_label, rank, labels),
                              focal.ProductConstants(*(Fraction(x) for x in abc)))


@pytest.fixture
def a1():
    return engine_for("A", 1, (1,))


@pytest.fixture
def a2():
    return engine_for("A", 2, (1, 0))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
