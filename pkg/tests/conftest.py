import re

import pytest

from tiltcalc import make_blowup_geometry, make_rank_one_ring

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes: dict[int, bool] = {}


@pytest.fixture
def p3_blowup():
    base = make_rank_one_ring(1, "H")
    return make_blowup_geometry(base.basis_divisor("H"))


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None or "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or report.failed:
        n = int(m.group(1))
        _outcomes[n] = _outcomes.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _outcomes[n] else 'FAIL'}")
