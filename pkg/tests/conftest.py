import contextlib

import pytest

_ACCEPTANCE: list[tuple[str, str, bool]] = []


@contextlib.contextmanager
def criterion(cid: str, desc: str):
    """Record an acceptance criterion as passed unless the block raises."""
    try:
        yield
    except BaseException:
        _ACCEPTANCE.append((cid, desc, False))
        raise
    _ACCEPTANCE.append((cid, desc, True))


@pytest.fixture
def acceptance():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, desc, ok in sorted(_ACCEPTANCE, key=lambda r: int(r[0][2:])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {cid}  {desc}")
