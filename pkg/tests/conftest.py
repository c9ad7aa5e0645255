import re

import pytest

_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    ident, text = marker.args
    _results.append((ident, text, report.passed, report.duration))


def _order(result):
    ident = result[0]
    return int(re.match(r"\d+", ident).group()), ident


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for ident, text, passed, duration in sorted(_results, key=_order):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {ident:<3} {text} ({duration:.2f} s)")
