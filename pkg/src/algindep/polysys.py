"""Sparse homogeneous polynomials over K and the zero-lemma certification.

A HomogeneousPolynomial stores only nonzero terms, keyed by exponent tuples
that sum to the declared degree.  The family Delta*Q_{n,l} built from the
Hermite basis has no common projective zero when T >= 2; zero_lemma_check
certifies this either by a univariate gcd (t = 1) or by exhibiting members
with a nonzero Macaulay resultant (any t).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .balls import BallComplex, working_prec
from .numberfield import AlgebraicNumber, NumberField, house_bound, is_integral
from .interpolation import HermiteBasis, DeltaNormalizer, sigma_set
from .unipoly import pgcd, trim, deg


class PolynomialError(ValueError):
    pass


def _grlex_key(exp):
    return (sum(exp), tuple(-e for e in exp))


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """Homogeneous form in nvars variables; terms maps exponents to coefficients."""

    nvars: int
    degree: int
    terms: tuple  # ((exp, coeff), ...) in graded-lex order, no zero coeffs

    @classmethod
    def make(cls, nvars: int, degree: int, term_map) -> "HomogeneousPolynomial":
        items = term_map.items() if isinstance(term_map, dict) else term_map
        clean = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise PolynomialError(f"bad exponent {exp} for {nvars} variables")
            if sum(exp) != degree:
                raise PolynomialError(f"exponent {exp} does not sum to {degree}")
            if coeff:
                clean[exp] = clean[exp] + coeff if exp in clean else coeff
        terms = tuple((e, clean[e]) for e in sorted(clean, key=_grlex_key)
                      if clean[e])
        return cls(nvars, degree, terms)

    def coeff_map(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> list:
        return [c for _, c in self.terms]

    def __add__(self, other: "HomogeneousPolynomial"):
        if self.nvars != other.nvars or self.degree != other.degree:
            raise PolynomialError("mismatched shapes in addition")
        merged = self.coeff_map()
        for exp, c in other.terms:
            merged[exp] = merged[exp] + c if exp in merged else c
        return HomogeneousPolynomial.make(self.nvars, self.degree, merged)

    def scale(self, c) -> "HomogeneousPolynomial":
        if not c:
            return HomogeneousPolynomial.make(self.nvars, self.degree, {})
        return HomogeneousPolynomial.make(
            self.nvars, self.degree, {e: v * c for e, v in self.terms})

    def mul_monomial(self, exp) -> "HomogeneousPolynomial":
        exp = tuple(exp)
        return HomogeneousPolynomial.make(
            self.nvars, self.degree + sum(exp),
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms})

    def __mul__(self, other: "HomogeneousPolynomial"):
        if self.nvars != other.nvars:
            raise PolynomialError("mismatched variable counts")
        out = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return HomogeneousPolynomial.make(self.nvars, self.degree + other.degree, out)

    def eval_exact(self, point):
        """Value at a tuple of exact field elements (or rationals)."""
        total = None
        for exp, coeff in self.terms:
            term = coeff
            for x, e in zip(point, exp):
                if e:
                    term = term * x ** e
            total = term if total is None else total + term
        return 0 if total is None else total


def homogenize(term_map, nvars_affine: int, D: int,
               field: NumberField | None = None) -> HomogeneousPolynomial:
    """Homogenize a polynomial in t affine variables to degree D with X0."""
    out = {}
    items = term_map.items() if isinstance(term_map, dict) else term_map
    for exp, coeff in items:
        exp = tuple(int(e) for e in exp)
        total = sum(exp)
        if total > D:
            raise PolynomialError(f"term degree {total} exceeds D={D}")
        out[(D - total,) + exp] = coeff
    return HomogeneousPolynomial.make(nvars_affine + 1, D, out)


def build_Q(n, l: int, basis: HermiteBasis) -> HomogeneousPolynomial:
    """Q_{n,l} = X0^{S-|n|} X^n - sum A^{(l)}_{m,j}(n.alpha) X0^{S-|m|} X^m."""
    params = basis.params
    S, t, T = params.S, params.t, params.T
    n = tuple(n)
    if sum(n) > S or l < 0 or l >= T:
        raise PolynomialError("index out of range")
    field = params.field
    out = {}
    lead = (S - sum(n),) + n
    out[lead] = field.one()
    for m in sigma_set(S, t):
        coeff = field.zero()
        for j in range(T):
            coeff = coeff - basis.a_deriv_value(m, j, n, l)
        exp = (S - sum(m),) + m
        out[exp] = out[exp] + coeff if exp in out else coeff
    return HomogeneousPolynomial.make(t + 1, S, out)


def family_F(basis: HermiteBasis, normalizer: DeltaNormalizer) -> list:
    """The |Sigma(S+1)|*T forms Delta*Q_{n,l}, all with integral coefficients."""
    params = basis.params
    delta = normalizer.delta
    out = []
    for n in sigma_set(params.S + 1, params.t):
        for l in range(params.T):
            q = build_Q(n, l, basis).scale(delta)
            for c in q.coefficients():
                if not is_integral(c):
                    raise PolynomialError(
                        f"non-integral coefficient in Delta*Q at {(n, l)}")
            out.append(q)
    return out


def poly_eval_ball(Q: HomogeneousPolynomial, point, field: NumberField,
                   precision: int = 128) -> BallComplex:
    """Certified value at a tuple of BallComplex coordinates."""
    with working_prec(precision + 32):
        total = BallComplex.from_exact(0)
        for exp, coeff in Q.terms:
            if isinstance(coeff, AlgebraicNumber):
                term = field.embed(coeff, precision)
            else:
                term = BallComplex.from_exact(Fraction(coeff))
            for x, e in zip(point, exp):
                for _ in range(e):
                    term = term * x
            total = total + term
        return total


def poly_norm(Q: HomogeneousPolynomial) -> Fraction:
    """Near-tight dyadic bound on the largest coefficient magnitude across
    all embeddings; exact for rational coefficients."""
    coeffs = Q.coefficients()
    if not coeffs:
        return Fraction(0)
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        return max(abs(Fraction(c)) for c in coeffs)
    if all(isinstance(c, AlgebraicNumber) and c.is_rational for c in coeffs):
        return max(abs(c.as_fraction()) for c in coeffs)
    return house_bound(coeffs)


def poly_conjugate(Q: HomogeneousPolynomial, field: NumberField,
                   sigma: int) -> HomogeneousPolynomial:
    """Coefficientwise conjugation; exact for fields of degree <= 2."""
    d = field.degree
    if sigma < 0 or sigma >= d:
        raise PolynomialError("embedding index out of range")
    if d == 1 or sigma == 0:
        return Q
    if d != 2:
        raise PolynomialError("exact conjugation supported for degree <= 2 fields")
    # the nontrivial automorphism sends theta to -a1 - theta (sum of the roots)
    a1 = field.min_poly[1]
    out = {}
    for exp, c in Q.terms:
        if isinstance(c, AlgebraicNumber):
            x, y = c.coords
            out[exp] = field.element([x - a1 * y, -y])
        else:
            out[exp] = c
    return HomogeneousPolynomial.make(Q.nvars, Q.degree, out)


def _dehomogenized_univariate(Q: HomogeneousPolynomial) -> list:
    """Q(1, z) as a dense coefficient list for binary forms."""
    coeffs = [None] * (Q.degree + 1)
    for (e0, e1), c in Q.terms:
        coeffs[e1] = c
    field_zero = None
    for c in coeffs:
        if c is not None:
            field_zero = c * 0
            break
    return trim([c if c is not None else field_zero for c in coeffs])


def substitute_linear(Q: HomogeneousPolynomial, matrix) -> HomogeneousPolynomial:
    """Q(A.X): replace X_i by the integer linear form given by row i of A."""
    nv = Q.nvars
    rows = []
    for i in range(nv):
        row = {}
        for j in range(nv):
            a = int(matrix[i][j])
            if a:
                row[tuple(1 if k == j else 0 for k in range(nv))] = Fraction(a)
        rows.append(HomogeneousPolynomial.make(nv, 1, row))
    out = HomogeneousPolynomial.make(nv, Q.degree, {})
    for exp, coeff in Q.terms:
        term = None
        for i, e in enumerate(exp):
            for _ in range(e):
                term = rows[i] if term is None else term * rows[i]
        if term is None:
            term = HomogeneousPolynomial.make(nv, 0, {tuple([0] * nv): coeff})
        else:
            term = term.scale(coeff)
        out = out + term
    return out


def zero_lemma_check(family, mode: str = "auto", T: int | None = None,
                     seed: int = 0, budget: int = 64) -> dict:
    """Certify that the family has no common zero in projective t-space.

    gcd mode (binary forms): the gcd of the dehomogenized members must be
    constant and some member must not vanish at (0:1).  resultant mode: find
    t+1 members or small integer combinations with nonzero Macaulay resultant.
    Never claims a common zero exists; failure is reported as inconclusive.
    """
    if T is not None and T < 2:
        return {"status": "hypothesis T >= 2 violated", "certified": False}
    members = [q for q in family if not q.is_zero()]
    if not members:
        return {"status": "inconclusive", "certified": False,
                "reason": "family has no nonzero member"}
    nv = members[0].nvars
    t = nv - 1
    if mode == "auto":
        mode = "gcd" if t == 1 else "resultant"

    if mode == "gcd":
        if t != 1:
            raise PolynomialError("gcd mode requires binary forms")
        at_infinity_ok = any(
            dict(q.terms).get((0, q.degree)) for q in members)
        g = _dehomogenized_univariate(members[0])
        for q in members[1:]:
            g = pgcd(g, _dehomogenized_univariate(q))
            if deg(g) == 0:
                break
        if deg(g) == 0 and at_infinity_ok:
            return {"status": "no common zero", "certified": True,
                    "mode": "gcd", "gcd_degree": 0}
        return {"status": "inconclusive", "certified": False, "mode": "gcd",
                "gcd_degree": deg(g), "at_infinity_ok": at_infinity_ok}

    if mode != "resultant":
        raise PolynomialError(f"unknown mode {mode!r}")
    from .resultant import macaulay_resultant, ResultantIndeterminate
    rng = random.Random(seed)
    trials = []
    if len(members) >= nv:
        trials.append(members[:nv])
    for _ in range(budget):
        if rng.random() < 0.5 and len(members) >= nv:
            trials.append(rng.sample(members, nv))
        else:
            combo = []
            for _ in range(nv):
                acc = None
                for q in members:
                    a = rng.randint(-3, 3)
                    if a:
                        piece = q.scale(a)
                        acc = piece if acc is None else acc + piece
                if acc is None or acc.is_zero():
                    acc = rng.choice(members)
                combo.append(acc)
            trials.append(combo)
    for i, chosen in enumerate(trials[: budget + 1]):
        try:
            res = macaulay_resultant(chosen)
        except ResultantIndeterminate:
            continue
        if res:
            return {"status": "no common zero", "certified": True,
                    "mode": "resultant", "trial": i, "seed": seed,
                    "resultant_nonzero": True}
    return {"status": "inconclusive", "certified": False, "mode": "resultant",
            "seed": seed, "trials": len(trials)}
