import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qperm.magic import build_two_projection_magic  # noqa: E402
from qperm.spaces import (  # noqa: E402
    GluingSpec,
    build_circle_space,
    build_glued_space,
    build_interval_space,
)


@pytest.fixture
def u4():
    return build_two_projection_magic(math.pi / 4)


@pytest.fixture
def wedge():
    return build_glued_space(GluingSpec(4, build_interval_space(5), frozenset({1})))


@pytest.fixture
def bouquet():
    return build_glued_space(GluingSpec(4, build_circle_space(6), frozenset({1})))


@pytest.fixture
def rng():
    return np.random.default_rng(20121)


_acceptance: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.failed:
        _acceptance[report.nodeid] = report


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, rep in _acceptance.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if rep.passed else 'FAIL'}  {name}")
