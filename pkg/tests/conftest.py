import pytest

from conjsum.functions import DEFAULT_GRID, GridSpec, corpus, registry


@pytest.fixture(scope="session")
def grid() -> GridSpec:
    return DEFAULT_GRID


@pytest.fixture(scope="session")
def funcs():
    return registry()


@pytest.fixture(scope="session")
def all_functions():
    return corpus()
