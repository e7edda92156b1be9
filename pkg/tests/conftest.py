import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kincomp import ReducedSystem, Saturating, compartmental_crn, example1_crn  # noqa: E402
from kincomp import generators as gen  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def tri():
    return gen.triangle()


@pytest.fixture
def tri_crn(tri):
    return compartmental_crn(tri)


@pytest.fixture
def ex1():
    return example1_crn()


@pytest.fixture
def tri_sys(tri):
    return ReducedSystem(tri)


@pytest.fixture(params=["mass_action", "saturating", "hetero4"])
def system(request):
    if request.param == "mass_action":
        return ReducedSystem(gen.triangle())
    if request.param == "saturating":
        return ReducedSystem(gen.triangle(Saturating(1.5, 0.4, 0.7), capacities=(1.0, 2.0, 0.5)))
    return ReducedSystem(gen.random_strongly_connected(4, np.random.default_rng(7), rate_kind="mixed"))
