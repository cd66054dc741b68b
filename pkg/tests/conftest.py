import pytest

from intersecting_codes.search import build_itable


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long opt-in checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="opt-in: pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def small_itable():
    """i(k, q) for k <= 4 over every field used by the Davenport checks."""
    return build_itable(4, [2, 3, 4, 5, 7, 8, 9, 11, 13, 16], budget=2 * 10**5)


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion_report():
    """Record one pass/fail line per acceptance criterion; call with (number, passed, detail)."""

    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _CRITERIA[number] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[number])
