import pytest

from treegrowth import build_atlas, fabrykowski_gupta, first_grigorchuk
from treegrowth.incompressible import approximate_I_infty


@pytest.fixture(scope="session")
def fg_spec():
    return fabrykowski_gupta()


@pytest.fixture(scope="session")
def grig_spec():
    return first_grigorchuk()


@pytest.fixture(scope="session")
def fg_atlas6(fg_spec):
    return build_atlas(fg_spec, 6)


@pytest.fixture(scope="session")
def fg_report6(fg_atlas6):
    return approximate_I_infty(fg_atlas6, 6)


@pytest.fixture(scope="session")
def grig_atlas8(grig_spec):
    return build_atlas(grig_spec, 8)


# The deep table drives the whole-ball checks; building it once takes about
# a minute and a bit over 1 GB, so it is shared across the session.
@pytest.fixture(scope="session")
def fg_atlas10(fg_spec):
    return build_atlas(fg_spec, 10, max_elements=5_000_000)


@pytest.fixture(scope="session")
def fg_report10(fg_atlas10):
    return approximate_I_infty(fg_atlas10, 6)
