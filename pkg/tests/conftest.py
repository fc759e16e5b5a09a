import subprocess
import sys

import pytest

_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def run_cli(tmp_path):
    """Run the CLI in a subprocess; returns (exit code, stdout, stderr)."""

    def run(*args):
        proc = subprocess.run([sys.executable, "-m", "logconst", *args], cwd=tmp_path,
                              capture_output=True, text=True)
        return proc.returncode, proc.stdout, proc.stderr

    return run
