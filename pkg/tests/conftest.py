import numpy as np
import pytest

from qverify import build_algorithm


@pytest.fixture(scope="session")
def alg4():
    return build_algorithm(4)


@pytest.fixture(scope="session")
def alg6():
    return build_algorithm(6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
