import functools

import pytest

from fmrings import BaseRing, FormalMatrixRing, binary_system, materialize


@functools.lru_cache(maxsize=None)
def binary_table(m, classes, s):
    """Materialized M(n, Z/m, binary system for ``classes``) (cached)."""
    return materialize(FormalMatrixRing.of(binary_system(BaseRing.mod(m), classes, s)))


@pytest.fixture
def Z4():
    return BaseRing.mod(4)


@pytest.fixture
def Z8():
    return BaseRing.mod(8)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
