import re

_OUTCOMES: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_criterion_(\d+)_", report.nodeid)
    if not match or report.when != "call" and not report.failed:
        return
    n = int(match.group(1))
    _OUTCOMES[n] = _OUTCOMES.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _OUTCOMES[n] else 'FAIL'}")
