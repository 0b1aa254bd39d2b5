import pytest
from fractions import Fraction

from algindep import aux_params, hermite_basis, nf_create


@pytest.fixture(scope="session")
def field_q():
    return nf_create([-1, 1])


@pytest.fixture(scope="session")
def field_sqrt2():
    return nf_create([-2, 0, 1])


@pytest.fixture(scope="session")
def field_sqrt5():
    # ring of integers Z[(1+sqrt5)/2]
    return nf_create([-5, 0, 1],
                     [[1, 0], [Fraction(1, 2), Fraction(1, 2)]])


@pytest.fixture(scope="session")
def basis_1122(field_q):
    return hermite_basis(aux_params(field_q, [1], 2, 2))


@pytest.fixture(scope="session")
def basis_1166(field_q):
    return hermite_basis(aux_params(field_q, [1], 6, 6))


@pytest.fixture(scope="session")
def basis_2222(field_sqrt2):
    alpha = [field_sqrt2.one(), field_sqrt2.theta()]
    return hermite_basis(aux_params(field_sqrt2, alpha, 2, 2))
