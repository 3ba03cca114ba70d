import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ballspaces import BallSpace  # noqa: E402

ACCEPTANCE_RESULTS: dict = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS[number] = (title, passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {number}: {title} ({detail})")


@pytest.fixture
def I1():
    return BallSpace.from_labels("123", [[1, 2], [2, 3]])


@pytest.fixture
def I2():
    return BallSpace.from_labels("123", [[1], [1, 2], [1, 2, 3]])


@pytest.fixture
def W4():
    return BallSpace.from_labels("1234", [[1, 2, 3], [1, 2, 4], [1], [2]])
