import pytest
from fractions import Fraction

from algindep import (FieldError, check_q_independence, common_denominator,
                      house_bound, is_integral, nf_create)
from algindep.numberfield import conjugates, norm_trace


def test_rational_field_basics(field_q):
    a = field_q.from_rational(Fraction(3, 2))
    b = field_q.from_rational(2)
    assert (a * b).as_fraction() == 3
    assert (a + b).as_fraction() == Fraction(7, 2)
    assert (a / b).as_fraction() == Fraction(3, 4)
    assert a.is_rational


def test_quadratic_arithmetic(field_sqrt2):
    theta = field_sqrt2.theta()
    one = field_sqrt2.one()
    assert (theta * theta).as_fraction() == 2
    # (1 + sqrt2)(1 - sqrt2) = -1
    assert ((one + theta) * (one - theta)).as_fraction() == -1
    u = one + theta
    assert (u * u.inverse()).as_fraction() == 1
    assert (theta ** 4).as_fraction() == 4


def test_reducible_min_poly_rejected():
    with pytest.raises((FieldError, ValueError)):
        nf_create([-1, 0, 1])  # x^2 - 1 factors


def test_nonmonic_or_empty_rejected():
    with pytest.raises((FieldError, ValueError)):
        nf_create([])
    with pytest.raises((FieldError, ValueError)):
        nf_create([1, 0, 2])


def test_conjugates_enclose_roots(field_sqrt2):
    boxes = conjugates(field_sqrt2.theta(), 64)
    vals = sorted(float(b.mid()[0]) for b in boxes)
    assert abs(vals[0] + 2 ** 0.5) < 1e-9
    assert abs(vals[1] - 2 ** 0.5) < 1e-9


def test_house_bound_dominates(field_sqrt2):
    theta = field_sqrt2.theta()
    hb = house_bound([theta])
    assert hb >= Fraction(2) ** Fraction(1, 2) - Fraction(1, 1000)
    assert float(hb) == pytest.approx(2 ** 0.5, rel=1e-4)


def test_is_integral(field_sqrt2, field_sqrt5):
    assert is_integral(field_sqrt2.theta())
    assert not is_integral(field_sqrt2.theta() / field_sqrt2.from_rational(2))
    # (1 + sqrt5)/2 is an algebraic integer
    golden = field_sqrt5.element([Fraction(1, 2), Fraction(1, 2)])
    assert is_integral(golden)
    assert not is_integral(field_sqrt5.theta() / field_sqrt5.from_rational(2))


def test_common_denominator(field_q, field_sqrt2):
    assert common_denominator([field_q.from_rational(Fraction(1, 2)),
                               field_q.from_rational(Fraction(1, 3))]) == 6
    half_theta = field_sqrt2.theta() / field_sqrt2.from_rational(2)
    assert common_denominator([half_theta]) == 2
    assert common_denominator([field_sqrt2.theta()]) == 1


def test_q_independence(field_sqrt2):
    one = field_sqrt2.one()
    theta = field_sqrt2.theta()
    assert check_q_independence([one, theta])
    assert not check_q_independence([theta, theta + theta])
    assert not check_q_independence([field_sqrt2.zero()])


def test_norm_trace(field_sqrt2):
    nrm, tr = norm_trace(field_sqrt2.one() + field_sqrt2.theta())
    assert nrm == -1
    assert tr == 2
    nrm2, tr2 = norm_trace(field_sqrt2.theta())
    assert nrm2 == -2
    assert tr2 == 0


def test_embedding_of_sum(field_sqrt2):
    x = field_sqrt2.element([Fraction(1, 3), Fraction(2, 5)])
    box = field_sqrt2.embed(x, 96)
    expected = 1 / 3 + 2 / 5 * 2 ** 0.5
    assert abs(float(box.mid()[0]) - expected) < 1e-12
    assert float(box.radius()) < 2 ** -90
