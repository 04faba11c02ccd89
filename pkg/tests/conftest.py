from __future__ import annotations

import pytest

from fibersurf.script import EXAMPLE_SCRIPT, parse_script, run_script

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def example_script():
    return parse_script(EXAMPLE_SCRIPT)


@pytest.fixture
def example11():
    return run_script(parse_script(EXAMPLE_SCRIPT))


@pytest.fixture
def record_criterion():
    def record(number: int, text: str, ok: bool, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {text}" + (f" ({detail})" if detail else ""))
        print(ACCEPTANCE_LINES[-1])

    return record
