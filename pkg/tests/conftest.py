import pytest

_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_KEY] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, ok, detail)``."""
    results = request.config.stash[_KEY]

    def record(number: int, ok: bool, detail: str) -> bool:
        results[number] = (ok, detail)
        print(f"CRITERION {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"CRITERION {number}: {'PASS' if ok else 'FAIL'}  {detail}")
