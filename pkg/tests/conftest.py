import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

# fixed example sequence, so repeated runs report the same thing
settings.register_profile("repro", derandomize=True, print_blob=True)
settings.load_profile("repro")

# criterion number -> (title, passed, detail); filled by test_acceptance
CRITERIA: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(num: int, title: str, passed: bool, detail: str = "") -> None:
        CRITERIA[num] = (title, passed, detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        title, passed, detail = CRITERIA[num]
        tag = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {tag}  {title}" + (f"  [{detail}]" if detail else ""))
