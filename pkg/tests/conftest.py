import pytest

from zecheck.channel import build_channel
from zecheck.designs import enumerate_clifford, find_minimal_subdesign


@pytest.fixture(scope="session")
def family_d2():
    return enumerate_clifford(2)


@pytest.fixture(scope="session")
def family_d3():
    return enumerate_clifford(3)


@pytest.fixture(scope="session")
def channel_d2(family_d2):
    return build_channel(2, family_d2)


@pytest.fixture(scope="session")
def channel_d3(family_d3):
    return build_channel(3, family_d3)


@pytest.fixture(scope="session")
def subdesign_d2(family_d2):
    return find_minimal_subdesign(family_d2)
