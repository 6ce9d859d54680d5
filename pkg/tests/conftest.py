import pytest

from wdrd import _backend

BACKENDS = ["python"] + (["native"] if _backend.native is not None else [])
_ACCEPTANCE = []


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def criterion():
    """Record a one-line acceptance verdict: ``criterion(n, ok, detail)``."""
    def record(n, ok, detail=""):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
        print(line)
        _ACCEPTANCE.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
