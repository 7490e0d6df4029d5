import pytest

from soliton_coherent.basis import UniformGrid
from soliton_coherent.models import SolitonSpec


@pytest.fixture(scope="session")
def grid():
    return UniformGrid(-20.0, 20.0, 1024)


@pytest.fixture(scope="session")
def one_soliton():
    return SolitonSpec(alphas=(1.0,))


@pytest.fixture(scope="session")
def two_soliton():
    return SolitonSpec(alphas=(1.0, 2.0))
