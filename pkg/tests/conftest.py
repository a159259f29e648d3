import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name):
    return json.loads((FIXTURES / name).read_text())


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}


@pytest.fixture
def acceptance_log(request):
    """Where acceptance checks record ``index -> (ok, detail)`` for the terminal summary."""
    return request.config.stash[_ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(results):
        ok, detail = results[i]
        terminalreporter.write_line(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
