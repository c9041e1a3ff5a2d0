import numpy as np
import pytest

from rotgauss import CurveParams, solve_constant_K


@pytest.fixture(scope="session")
def pseudosphere4():
    return solve_constant_K(CurveParams(4, -1.0, -1.0), count=801)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
