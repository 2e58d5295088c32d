import os

import numpy as np
import pytest

from rumple.core import magma

X41_ROWS = [[0, 1, 3, 2], [2, 3, 1, 0], [1, 0, 2, 3], [3, 2, 0, 1]]
X42_ROWS = [[1, 3, 0, 2], [0, 2, 1, 3], [2, 0, 3, 1], [3, 1, 2, 0]]
TWOREPS_ROWS = [[1, 0, 3, 2], [3, 2, 1, 0], [1, 0, 3, 2], [3, 2, 1, 0]]

EXTENDED = os.environ.get("RUMPLE_EXTENDED") == "1"


@pytest.fixture
def x41():
    return magma(X41_ROWS)


@pytest.fixture
def x42():
    return magma(X42_ROWS)


@pytest.fixture
def tworeps():
    return magma(TWOREPS_ROWS)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


# -- acceptance report ------------------------------------------------------------
# Tests in test_acceptance.py are named test_cNN_<part>; each part contributes to
# the line for criterion NN.  An expected failure counts as FAIL.

_ACCEPT = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_c" not in report.nodeid:
        return
    if report.when != "call" and not (report.when == "setup" and report.skipped):
        return
    name = report.nodeid.split("::")[-1]
    crit = int(name[6:8])
    if hasattr(report, "wasxfail"):
        status = "FAIL"
    elif report.passed:
        status = "PASS"
    elif report.skipped:
        status = "SKIP"
    else:
        status = "FAIL"
    detail = dict(report.user_properties).get("detail", "")
    _ACCEPT.setdefault(crit, []).append((name[9:], status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPT:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_ACCEPT):
        parts = _ACCEPT[crit]
        states = {s for _, s, _ in parts}
        overall = "FAIL" if "FAIL" in states else ("PASS" if "PASS" in states else "SKIP")
        tr.write_line(f"criterion {crit:2d}: {overall}")
        for part, status, detail in parts:
            tr.write_line(f"    {status:4s} {part}" + (f": {detail}" if detail else ""))
