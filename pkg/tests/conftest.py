import pytest

from scatlin.fieldcore import make_field


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="also run the exhaustive slow sweeps",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive sweep, skipped unless --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def f33():
    return make_field(3, 1, 3)


@pytest.fixture(scope="session")
def f53():
    return make_field(5, 1, 3)


@pytest.fixture(scope="session")
def f34():
    return make_field(3, 1, 4)


@pytest.fixture(scope="session")
def f35():
    return make_field(3, 1, 5)
