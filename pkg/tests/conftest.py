from functools import partial

import numpy as np
import pytest

from spinorlab import Workbench, build_model
from spinorlab.pure import make_dual_pair
from tests.utils import get_func


class staticmethod:
    """Override staticmethod since it only become callable in 3.10."""

    def __init__(self, _func):
        self.f = _func

    def __call__(self, *a, **k):
        return self.f(*a, **k)


SEED = 20_160_419


@pytest.fixture(scope="session", params=[2, 3, 4], ids=lambda m: f"m={m}")
def workbench(request):
    """Workbench for each half-dimension the fast suite covers."""
    wb = Workbench(request.param, SEED=SEED, DISABLE_LOGGING_DEBUG_OUTPUT=True)
    wb.func = staticmethod(partial(get_func, wb))
    return wb


@pytest.fixture(scope="session")
def workbench3():
    """Six-dimensional workbench; most diagram checks need m=3."""
    wb = Workbench(3, SEED=SEED, DISABLE_LOGGING_DEBUG_OUTPUT=True)
    wb.func = staticmethod(partial(get_func, wb))
    return wb


@pytest.fixture(scope="session")
def workbench2():
    """Four-dimensional workbench for two-spinor checks."""
    wb = Workbench(2, SEED=SEED, DISABLE_LOGGING_DEBUG_OUTPUT=True)
    wb.func = staticmethod(partial(get_func, wb))
    return wb


@pytest.fixture(scope="session", params=[2, 3, 4], ids=lambda m: f"m={m}")
def model(request):
    return build_model(request.param)


@pytest.fixture(scope="session", params=[2, 3, 4, 5], ids=lambda m: f"m={m}")
def wide_model(request):
    """Models up to m=5 for checks that stay cheap there."""
    return build_model(request.param)


@pytest.fixture(scope="session")
def model3():
    return build_model(3)


@pytest.fixture(scope="session")
def pair3(model3):
    return make_dual_pair(model3, model3.canonical_spinor(), seed=SEED)


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
