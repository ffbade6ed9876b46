import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "suite", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker in report.nodeid:
        number = int(report.nodeid.split(marker)[1].split("_")[0])
        _criteria[number] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import TITLES

    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        verdict = "PASS" if _criteria[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {TITLES[n]}")
