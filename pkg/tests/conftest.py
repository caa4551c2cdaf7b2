import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance lines, filled by test_acceptance.py and echoed in the summary
ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def acceptance_line():
    def record(key: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}"
        ACCEPTANCE_LINES[key] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k[1:].split()[0].rstrip("abc"))):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
