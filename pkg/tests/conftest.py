import pytest

from swiftstop import gas_from_rs, setup


@pytest.fixture(scope="session")
def gas():
    return gas_from_rs(2.07)


@pytest.fixture(scope="session")
def proton6(gas):
    return setup(gas, 1.0, 6.0)


@pytest.fixture(scope="session")
def antiproton6(gas):
    return setup(gas, -1.0, 6.0)


@pytest.fixture(scope="session")
def numerov_series6(proton6):
    from swiftstop.phase_shifts import PotentialSpec, build_series

    return build_series(PotentialSpec.hulthen(proton6), proton6.k, 40, "numerov")
