import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria suite")


def pytest_runtest_logreport(report):
    """Collect one PASS/FAIL line per acceptance criterion (any failing phase fails it)."""
    m = _CRITERION.search(report.nodeid)
    if not m or (report.when != "call" and not report.failed):
        return
    number = int(m.group(1))
    detail = dict(report.user_properties).get("acceptance", "")
    already_failed = _results.get(number, ("PASS",))[0] == "FAIL"
    status = "FAIL" if report.failed or already_failed else "PASS"
    _results[number] = (status, m.group(2).replace("_", " "), detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status, name, detail = _results[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {name} -- {detail}")
