import pytest

_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for mark in report.keywords:
        if mark.startswith("criterion_"):
            label = mark.removeprefix("criterion_")
            _criteria[label] = "PASS" if report.passed else "FAIL"


def pytest_collection_modifyitems(items):
    for item in items:
        crit = item.get_closest_marker("criterion")
        if crit:
            item.keywords[f"criterion_{crit.args[0]}"] = True


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s[1:])):
        terminalreporter.write_line(f"{label}: {_criteria[label]}")
