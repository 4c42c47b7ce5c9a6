import os

import pytest
from hypothesis import settings

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")


@pytest.fixture
def numpy_only(monkeypatch):
    monkeypatch.setenv("SEMIGROUP_FORGE_JIT", "0")
    yield
    os.environ.pop("SEMIGROUP_FORGE_JIT", None)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
