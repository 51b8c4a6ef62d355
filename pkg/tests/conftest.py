from __future__ import annotations

import pytest

from cauchytr.cauchy import fixture_curve
from cauchytr.curve import build_curve, rf_from_lists
from cauchytr.recursion import engine_for


@pytest.fixture(scope="session")
def z2():
    return build_curve(rf_from_lists([0, 0, 1]), rf_from_lists([0, 1]), label="z2")


@pytest.fixture(scope="session")
def z3():
    return build_curve(rf_from_lists([0, -3, 0, 1]), rf_from_lists([0, 1]), label="z3")


@pytest.fixture(scope="session")
def z2_rich():
    """``x = z^2`` with a non-odd ``y``: has nonzero higher free energies."""
    return build_curve(rf_from_lists([0, 0, 1]), rf_from_lists([0, 1, 0, 1]))


@pytest.fixture(scope="session")
def z3_rich():
    return build_curve(rf_from_lists([0, -3, 0, 1]), rf_from_lists([0, 1, 1]))


@pytest.fixture(scope="session")
def builder():
    return fixture_curve()


@pytest.fixture(scope="session")
def builder_engine(builder):
    return engine_for(builder)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
