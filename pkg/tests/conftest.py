import pytest
from hypothesis import HealthCheck, settings

from shellres import SearchRegion, find_resonances, make_potential

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def pot_ref():
    return make_potential(10.0, 1.0, 2.0, 1.0)


@pytest.fixture(scope="session")
def pot_free():
    return make_potential(0.0, 1.0, 2.0, 1.0)


@pytest.fixture(scope="session")
def poles_ref(pot_ref):
    return find_resonances(pot_ref, SearchRegion(0.0, 12.0, -3.0, 0.0))
