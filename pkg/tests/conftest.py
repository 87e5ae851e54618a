import pytest

from ucmquad.scalar import BigFloatField, Precision, RationalField

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False, help="run long reproduction checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def Q():
    return RationalField()


@pytest.fixture
def F100():
    return BigFloatField(Precision.from_digits(100))
