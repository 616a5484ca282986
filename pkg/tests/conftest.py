import pytest

from helpers import load_fixture


@pytest.fixture(scope="session")
def funnel():
    """Two sources joining through a same-coloured frontier onto one target."""
    return load_fixture("funnel")


@pytest.fixture(scope="session")
def dead_branch():
    """A dead green branch that a correct safe set must tolerate."""
    return load_fixture("dead_branch")


@pytest.fixture(scope="session")
def fourstep():
    return load_fixture("fourstep")


@pytest.fixture(scope="session")
def threestep():
    return load_fixture("threestep")


@pytest.fixture(scope="session")
def twofeature():
    return load_fixture("twofeature")
