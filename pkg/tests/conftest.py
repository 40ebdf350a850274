import numpy as np
import pytest

from wormhole_metrology.fock import _kernels


@pytest.fixture(params=sorted(_kernels.backends()))
def kernels(request):
    """Each available kernel module: always ``python``, plus ``compiled`` when built."""
    return _kernels.backends()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
