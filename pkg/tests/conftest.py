import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    mark = _RESULTS.get(report.nodeid)
    if mark is not None:
        mark["passed"] = report.passed


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _RESULTS[item.nodeid] = {"number": m.args[0], "text": m.args[1], "passed": None}


def pytest_terminal_summary(terminalreporter):
    ran = [r for r in _RESULTS.values() if r["passed"] is not None]
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(ran, key=lambda r: r["number"]):
        status = "PASS" if r["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {r['number']}: {status}  {r['text']}")
