import pytest

from secantkit.corpus import (
    complete_intersection,
    rational_normal_curve,
    veronese,
)
from secantkit.poly import Ring


@pytest.fixture(scope="session")
def twisted_cubic():
    return rational_normal_curve(3)


@pytest.fixture(scope="session")
def rnc4():
    return rational_normal_curve(4)


@pytest.fixture(scope="session")
def v2p2():
    return veronese(2, 2)


@pytest.fixture(scope="session")
def ci22():
    return complete_intersection([2, 2], 0)


@pytest.fixture(scope="session")
def corpus_all(twisted_cubic, rnc4, v2p2, ci22):
    return [twisted_cubic, rnc4, v2p2, ci22]


@pytest.fixture()
def ring_p3():
    return Ring(("x0", "x1", "x2", "x3"))
