import numpy as np
import pytest

from pseudoherm import kernels
from pseudoherm.metric import MassParams, spectral, spectral_from_entries


@pytest.fixture
def params():
    return MassParams(2.0, 1.0, 0.3)


@pytest.fixture
def sd(params):
    return spectral(params)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


def realize(zeta):
    return spectral_from_entries(2.0, 1.0, 0.5 * zeta)
