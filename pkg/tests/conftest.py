import pytest

from drinlevel.algebra import algebra_new
from drinlevel.apoly import APoly

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(n: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE[n] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def F2():
    return algebra_new(2, 1, 1, 1)


@pytest.fixture
def F4():
    return algebra_new(2, 1, 2, 1)


@pytest.fixture
def F2eps():
    return algebra_new(2, 1, 1, 2)


@pytest.fixture
def T2():
    return APoly.T(algebra_new(2).ground)
