import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from factcat.corpus import DATA  # noqa: E402
from factcat.suites import builtin_corpus  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture(scope="session")
def manifest_path():
    return DATA / "manifest.json"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
