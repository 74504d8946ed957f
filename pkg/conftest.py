import pytest

from qmds.constructions import construct, make_params
from qmds.gf import make_field


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 1)


@pytest.fixture(scope="session")
def f25():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def f49():
    return make_field(7, 1)


@pytest.fixture(scope="session")
def f81():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def t4_small():
    """T4 (q,s,t,h,r) = (5,3,4,1,1) at d = 3: the [[13,7,4]]_5 instance."""
    return construct(make_params(5, 1, "t4", 3, 4, 1, 1), 3)
