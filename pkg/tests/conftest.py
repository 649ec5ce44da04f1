import re

_acceptance_reports = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _acceptance_reports.append(report)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_reports:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for report in _acceptance_reports:
        name = report.nodeid.split("::")[-1]
        match = re.match(r"test_criterion_(\d+)_(.*)", name)
        label = f"criterion {match.group(1)} ({match.group(2).replace('_', ' ')})" \
            if match else name
        status = "PASS" if report.passed else "FAIL"
        terminalreporter.write_line(f"{status} {label}")
