from __future__ import annotations

from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def f21_text() -> str:
    return (DATA / "f21.tbl").read_text(encoding="utf-8")


@pytest.fixture
def z3_text() -> str:
    return (DATA / "z3.tbl").read_text(encoding="utf-8")


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
