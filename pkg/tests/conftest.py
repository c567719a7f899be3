import pytest

from quadric_moduli.locus import sweep_locus


@pytest.fixture(scope="session")
def sweep2():
    return sweep_locus(2)


@pytest.fixture(scope="session")
def sweep3():
    return sweep_locus(3)


@pytest.fixture(scope="session")
def sweep5():
    return sweep_locus(5)
