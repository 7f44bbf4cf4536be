import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE = {}


def record(label, passed, detail):
    ACCEPTANCE[label] = (passed, detail)
    print(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
        passed, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}")
