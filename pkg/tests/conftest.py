import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# sympy-backed oracles are slow; wall-clock budgets live in test_acceptance.py
settings.register_profile("default", deadline=None)
settings.load_profile("default")


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    n = dict(report.user_properties).get("criterion")
    if n is not None:
        _CRITERIA[n] = (report.passed, report.nodeid.split("::")[-1], report.duration)


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, name, duration = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {name}  ({duration:.2f}s)")
