import re

import numpy as np
import pytest

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, str, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome != "passed":
        num = int(m.group(1))
        detail = "; ".join(f"{k}={v}" for k, v in report.user_properties)
        _results[num] = (m.group(2).replace("_", " "), report.outcome.upper(), detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        name, outcome, detail = _results[num]
        verdict = "PASS" if outcome == "PASSED" else "FAIL"
        line = f"criterion {num:2d} {verdict}  {name}"
        terminalreporter.write_line(f"{line}  [{detail}]" if detail else line)
