import random
from fractions import Fraction

import pytest

from algindep import (HomogeneousPolynomial, ResultantIndeterminate,
                      macaulay_resultant, res_property_suite)
from algindep.resultant import corRes1_bound, corRes2_bound
from algindep.logmag import LogMagnitude

from oracles import binary_form_coeffs, frac_det, sylvester_resultant


def linear_form(coeffs):
    nv = len(coeffs)
    return HomogeneousPolynomial.make(
        nv, 1, {tuple(1 if k == j else 0 for k in range(nv)): Fraction(c)
                for j, c in enumerate(coeffs) if c})


def random_binary_form(rng, degree):
    while True:
        terms = {(degree - i, i): Fraction(rng.randint(-5, 5))
                 for i in range(degree + 1)}
        # keep both extreme coefficients nonzero so degrees stay honest
        if terms[(degree, 0)] and terms[(0, degree)]:
            return HomogeneousPolynomial.make(2, degree, terms)


def test_linear_example():
    a = linear_form([1, -2])
    b = linear_form([1, 1])
    assert macaulay_resultant([a, b]) == 3


def test_linear_equals_determinant():
    rng = random.Random(21)
    checked = 0
    while checked < 50:
        nv = rng.choice([2, 3])
        rows = [[rng.randint(-4, 4) for _ in range(nv)] for _ in range(nv)]
        if any(not any(r) for r in rows):
            continue
        forms = [linear_form(r) for r in rows]
        assert macaulay_resultant(forms) == frac_det(rows)
        checked += 1


def test_sylvester_agreement():
    rng = random.Random(22)
    for _ in range(50):
        d0, d1 = rng.randint(1, 3), rng.randint(1, 3)
        p = random_binary_form(rng, d0)
        q = random_binary_form(rng, d1)
        res = macaulay_resultant([p, q])
        syl = sylvester_resultant(binary_form_coeffs(p), binary_form_coeffs(q))
        assert abs(Fraction(res)) == abs(syl)


def test_planted_common_zero():
    rng = random.Random(23)
    done = 0
    while done < 50:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if not (a or b):
            continue
        common = linear_form([b, -a])  # vanishes at (a : b)
        p = common * random_binary_form(rng, rng.randint(1, 2))
        q = common * random_binary_form(rng, rng.randint(1, 2))
        assert macaulay_resultant([p, q], seed=done) == 0
        done += 1


def test_homogeneity():
    rng = random.Random(24)
    for _ in range(20):
        d0, d1 = rng.randint(1, 2), rng.randint(1, 2)
        p = random_binary_form(rng, d0)
        q = random_binary_form(rng, d1)
        lam = Fraction(rng.choice([-3, -2, 2, 3]))
        base = macaulay_resultant([p, q])
        assert macaulay_resultant([p.scale(lam), q]) == lam ** d1 * base
        assert macaulay_resultant([p, q.scale(lam)]) == lam ** d0 * base


def test_trivariate_quadric_case():
    # three generic-looking conics; compare against an independent evaluation
    # route: the resultant vanishes iff a common zero exists, so perturbing a
    # planted-zero system away from the zero must give a nonzero value
    x0 = linear_form([1, 0, 0])
    x1 = linear_form([0, 1, 0])
    x2 = linear_form([0, 0, 1])
    p0 = x0 * x0 + x1 * x2
    p1 = x1 * x1 + x0 * x2
    p2 = x2 * x2 + x0 * x1
    res = macaulay_resultant([p0, p1, p2])
    assert res != 0
    shared = linear_form([1, 1, 1])
    z0 = shared * x0
    z1 = shared * x1
    z2 = shared * x2
    assert macaulay_resultant([z0, z1, z2]) == 0


def test_generic_length_audits():
    for t, D in [(1, (1, 1)), (1, (2, 1)), (1, (2, 2)), (2, (1, 1, 1))]:
        out = res_property_suite(t, D, trials=8, seed=3)
        assert out["passed"], out
        assert out["generic_length"] <= out["length_bound"]


def test_linear_length_exact():
    out = res_property_suite(1, (1, 1), trials=4, seed=5)
    assert out["generic_length"] == 2
    out2 = res_property_suite(2, (1, 1, 1), trials=4, seed=5)
    assert out2["generic_length"] == 6


def test_corRes1_holds_on_simple_pair(field_q):
    # X1 - 3 X0 and X1 + X0 have no common zero; xi = 1/3 makes the first
    # value tiny but the inequality must still certify
    p = HomogeneousPolynomial.make(2, 1, {(1, 0): Fraction(-3), (0, 1): Fraction(1)})
    q = HomogeneousPolynomial.make(2, 1, {(1, 0): Fraction(1), (0, 1): Fraction(1)})
    out = corRes1_bound([p, q], (Fraction(1, 3),), field_q)
    assert out["holds"]
    assert out["margin_nats"] >= 0


def test_corRes1_rejects_common_zero(field_q):
    p = linear_form([1, -1])
    with pytest.raises(Exception):
        corRes1_bound([p, p.scale(Fraction(2))], (Fraction(1, 2),), field_q)


def test_corRes2_coefficient(basis_1122):
    class Params:
        t, d, S, D = 1, 1, 2, 1
    bound = corRes2_bound(LogMagnitude.from_exact(1),
                          LogMagnitude.from_exact(1), Params())
    # H(P)^{dS^t} ((t+1)^{8S} S^{2t} B)^{dtDS^{t-1}} with H = B = 1:
    # (2^16 * 2^2)^1 = 2^18
    assert bound.compare(Fraction(2) ** 18) == 0
