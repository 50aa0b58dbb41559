import numpy as np
import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (bool(ok), detail)
    line = f"acceptance criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
