import pytest

from weightlab.base import BaseCategory, Quiver
from weightlab.linalg import QQ, PrimeField


@pytest.fixture
def vect():
    return BaseCategory.vect(QQ)


@pytest.fixture
def a2():
    return BaseCategory.from_quiver(Quiver.linear_a(2), PrimeField())


@pytest.fixture
def a3():
    return BaseCategory.from_quiver(Quiver.linear_a(3), PrimeField())


@pytest.fixture(params=["vect", "a3"])
def any_cat(request):
    if request.param == "vect":
        return BaseCategory.vect(QQ)
    return BaseCategory.from_quiver(Quiver.linear_a(3), PrimeField())
