import pytest
from hypothesis import HealthCheck, settings

# derandomized so reruns see the same examples
settings.register_profile("repo", derandomize=True, max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def verdict(request):
    """Record one pass/fail line for the terminal summary."""
    def record(criterion, ok: bool, detail: str):
        label = f"criterion {criterion}" if isinstance(criterion, int) else criterion
        request.config.stash[ACCEPTANCE].append(f"{label}: {'PASS' if ok else 'FAIL'}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
