import sys
from pathlib import Path

import pytest

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.atomfib.bench import adjacent_minors  # noqa: E402
from src.atomfib.fiber import FiberEngine  # noqa: E402
from src.atomfib.intlin import IntMat  # noqa: E402

TWISTED_CUBIC_ATOMS = [
    (0, 3), (1, 2), (2, 1), (3, 0),
    (2, 4), (3, 3), (4, 2),
    (3, 6), (4, 5), (5, 4), (6, 3),
    (4, 8), (6, 6), (8, 4),
    (6, 9), (9, 6),
    (6, 12), (12, 6),
]


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance test, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def twisted_cubic() -> IntMat:
    return IntMat.from_rows([(3, 2, 1, 0), (0, 1, 2, 3)])


@pytest.fixture
def twisted_cubic_engine(twisted_cubic) -> FiberEngine:
    return FiberEngine(twisted_cubic)


@pytest.fixture
def twisted_cubic_atoms():
    return sorted(TWISTED_CUBIC_ATOMS, key=lambda b: (sum(b), b))


@pytest.fixture
def steinberger_3x3() -> IntMat:
    return adjacent_minors(3, 3)
