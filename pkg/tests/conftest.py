import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    k, title = marker.args
    if report.when == "setup" and report.outcome != "passed":
        _criteria[k] = ("FAIL", title, "setup error")
    elif report.when == "call":
        passed = report.outcome == "passed" and not hasattr(report, "wasxfail")
        detail = ""
        if hasattr(report, "wasxfail"):
            detail = f"known failure: {report.wasxfail}"
        elif report.failed:
            detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else "failed"
        _criteria[k] = ("PASS" if passed else "FAIL", title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        status, title, detail = _criteria[k]
        line = f"{status} criterion {k}: {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
