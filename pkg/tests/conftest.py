import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE = {}


def pytest_addoption(parser):
    parser.addoption("--update-goldens", action="store_true", help="rewrite tests/golden/*.out")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if report.skipped:
        return
    for marker in report.keywords:
        if marker.startswith("criterion_"):
            n = int(marker.split("_")[1])
            ACCEPTANCE[n] = ACCEPTANCE.get(n, True) and report.passed


def pytest_configure(config):
    for n in range(1, 10):
        config.addinivalue_line("markers", f"criterion_{n}: acceptance criterion {n}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"ACCEPTANCE criterion {n}: {'PASS' if ACCEPTANCE[n] else 'FAIL'}")
