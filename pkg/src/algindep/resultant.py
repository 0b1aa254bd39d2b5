"""Macaulay resultant of t+1 homogeneous forms in t+1 variables.

The classical construction at critical degree nu = sum(D_i - 1) + 1: rows of
the Macaulay matrix are the shifts (x^a / x_i^{D_i}) Q_i, one per monomial
x^a of degree nu with i the smallest index such that x_i^{D_i} divides x^a,
and Res = det(M) / det(M') where M' is the minor on the monomials divisible
by x_i^{D_i} for at least two indices.  When det(M') vanishes, a random
unimodular change of variables (which leaves Res unchanged) is applied and
the computation retried.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .balls import working_prec
from .heights import poly_height
from .linalg import bareiss_det
from .logmag import LogMagnitude, lm_max, lm_from_abs_interval
from .numberfield import AlgebraicNumber, NumberField
from .polysys import (HomogeneousPolynomial, PolynomialError, poly_eval_ball,
                      poly_norm, substitute_linear)


class ResultantIndeterminate(ArithmeticError):
    """All retries produced a vanishing Macaulay denominator."""


def _monomials(nvars: int, degree: int):
    """Exponent tuples of total degree ``degree``, descending lex order."""
    out = []
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        exp = []
        prev = -1
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(degree + nvars - 2 - prev)
        out.append(tuple(exp))
    out.sort(reverse=True)
    return out


def _coerce_entries(polys):
    """Common arithmetic domain for matrix entries: a field or plain Fractions."""
    field = None
    for q in polys:
        for c in q.coefficients():
            if isinstance(c, AlgebraicNumber):
                field = c.field
                break
        if field:
            break
    if field is None:
        return None, Fraction(1), Fraction(0)
    return field, field.one(), field.zero()


def _macaulay_dets(polys):
    """(det(M), det(M')) for the given forms; entries computed exactly."""
    nv = polys[0].nvars
    degs = [q.degree for q in polys]
    if len(polys) != nv:
        raise PolynomialError("need exactly nvars forms")
    if any(q.nvars != nv for q in polys):
        raise PolynomialError("mismatched variable counts")
    if any(d < 1 for d in degs):
        raise PolynomialError("degrees must be >= 1")
    nu = sum(d - 1 for d in degs) + 1
    mons = _monomials(nv, nu)
    col_index = {m: k for k, m in enumerate(mons)}
    field, one, zero = _coerce_entries(polys)

    def lift(c):
        if field is not None and not isinstance(c, AlgebraicNumber):
            return field.from_rational(Fraction(c))
        return Fraction(c) if field is None and not isinstance(c, Fraction) else c

    rows = []
    reduced_twice = []
    for a in mons:
        owner = None
        count = 0
        for i in range(nv):
            if a[i] >= degs[i]:
                count += 1
                if owner is None:
                    owner = i
        if owner is None:
            raise PolynomialError("monomial below critical degree; broken setup")
        shift = tuple(a[k] - (degs[owner] if k == owner else 0) for k in range(nv))
        row = [zero] * len(mons)
        for exp, c in polys[owner].terms:
            target = tuple(e + s for e, s in zip(exp, shift))
            row[col_index[target]] = lift(c)
        rows.append(row)
        reduced_twice.append(count >= 2)

    det_m = bareiss_det(rows)
    idx = [k for k, flag in enumerate(reduced_twice) if flag]
    if idx:
        minor = [[rows[i][j] for j in idx] for i in idx]
        det_minor = bareiss_det(minor)
    else:
        det_minor = one
    return det_m, det_minor


def _random_unimodular(nv: int, rng: random.Random):
    """Product of a unit upper and unit lower triangular integer matrix."""
    upper = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0)
              for j in range(nv)] for i in range(nv)]
    lower = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0)
              for j in range(nv)] for i in range(nv)]
    return [[sum(lower[i][k] * upper[k][j] for k in range(nv))
             for j in range(nv)] for i in range(nv)]


def macaulay_resultant(polys, seed: int = 0, retries: int = 8,
                       info: dict | None = None):
    """Resultant of the t+1 forms, exact up to sign; the linear case equals the
    coefficient determinant in argument order.

    Raises ResultantIndeterminate when every attempted coordinate change
    leaves the denominator minor singular.  A zero return value is certified:
    it requires an exactly vanishing numerator alongside a nonzero minor.
    """
    polys = list(polys)
    if any(q.is_zero() for q in polys):
        raise PolynomialError("zero polynomial has no well-defined degree")
    rng = random.Random(seed)
    current = polys
    change = None
    for attempt in range(retries + 1):
        num, den = _macaulay_dets(current)
        if den:
            if info is not None:
                info["retries"] = attempt
                info["coordinate_change"] = change
            return num / den
        mat = _random_unimodular(polys[0].nvars, rng)
        change = [list(row) for row in mat]
        current = [substitute_linear(q, mat) for q in polys]
    raise ResultantIndeterminate(
        f"denominator minor vanished in all {retries + 1} attempts")


# -- characterizing properties on small generic cases ---------------------------

_GENERIC_CAP = {(1, (1, 1)), (1, (2, 1)), (1, (2, 2)), (2, (1, 1, 1))}


def _generic_resultant_length(t: int, D: tuple) -> int:
    """Length of the generic resultant, by symbolic Macaulay expansion."""
    import sympy

    nv = t + 1
    nu = sum(d - 1 for d in D) + 1
    mons = _monomials(nv, nu)
    col_index = {m: k for k, m in enumerate(mons)}
    coeffs = {}
    for i, d in enumerate(D):
        for exp in _monomials(nv, d):
            coeffs[(i, exp)] = sympy.Symbol(f"a{i}_" + "_".join(map(str, exp)))
    rows = []
    reduced_twice = []
    for a in mons:
        owner = None
        count = 0
        for i in range(nv):
            if a[i] >= D[i]:
                count += 1
                if owner is None:
                    owner = i
        shift = tuple(a[k] - (D[owner] if k == owner else 0) for k in range(nv))
        row = [sympy.Integer(0)] * len(mons)
        for exp in _monomials(nv, D[owner]):
            target = tuple(e + s for e, s in zip(exp, shift))
            row[col_index[target]] = coeffs[(owner, exp)]
        rows.append(row)
        reduced_twice.append(count >= 2)
    m = sympy.Matrix(rows)
    det = sympy.expand(m.det(method="berkowitz"))
    idx = [k for k, flag in enumerate(reduced_twice) if flag]
    if idx:
        minor = sympy.Matrix([[rows[i][j] for j in idx] for i in idx])
        det = sympy.cancel(det / minor.det(method="berkowitz"))
        det = sympy.expand(det)
    poly = sympy.Poly(det, *sorted(coeffs.values(), key=str))
    return sum(abs(int(c)) for c in poly.coeffs())


def _random_form(nv: int, degree: int, rng: random.Random) -> HomogeneousPolynomial:
    terms = {}
    for exp in _monomials(nv, degree):
        terms[exp] = Fraction(rng.randint(-9, 9))
    if not any(terms.values()):
        terms[(degree,) + (0,) * (nv - 1)] = Fraction(1)
    return HomogeneousPolynomial.make(nv, degree, terms)


def res_property_suite(t: int, D: tuple, trials: int = 20, seed: int = 0) -> dict:
    """Scaling law, linear-case length (t+1)!, and the generic length bound."""
    D = tuple(int(x) for x in D)
    nv = t + 1
    rng = random.Random(seed)
    report = {"t": t, "D": D, "passed": True, "failures": []}

    prod_d = math.prod(D)
    for trial in range(trials):
        polys = [_random_form(nv, d, rng) for d in D]
        lam = Fraction(rng.randint(2, 7))
        i = rng.randrange(nv)
        try:
            base = macaulay_resultant(polys, seed=seed + trial)
            scaled = list(polys)
            scaled[i] = scaled[i].scale(lam)
            res2 = macaulay_resultant(scaled, seed=seed + trial)
        except ResultantIndeterminate:
            continue
        if res2 != base * lam ** (prod_d // D[i]):
            report["passed"] = False
            report["failures"].append({"kind": "scaling", "trial": trial})

    if (t, D) in _GENERIC_CAP:
        length = _generic_resultant_length(t, D)
        bound = (t + 1) ** (3 * (t + 1) * prod_d)
        report["generic_length"] = length
        report["length_bound"] = bound
        if length > bound:
            report["passed"] = False
            report["failures"].append({"kind": "length"})
        if all(d == 1 for d in D):
            if length != math.factorial(t + 1):
                report["passed"] = False
                report["failures"].append({"kind": "linear length"})
    return report


# -- elimination-based lower bounds ---------------------------------------------


def corRes1_bound(polys, xi, field: NumberField, precision: int = 128) -> dict:
    """The no-common-zero value inequality: with delta_i = Q_i(1, xi),
    1 <= (t+1)^{4d(t+1)D0..Dt} prod H(Q_i)^{d D0..Dt / D_i} max |delta_i|/||Q_i||.
    """
    polys = list(polys)
    nv = polys[0].nvars
    t = nv - 1
    d = field.degree
    res = macaulay_resultant(polys)
    if not res:
        raise PolynomialError("forms have a common zero; bound does not apply")
    prod_d = math.prod(q.degree for q in polys)
    rhs = LogMagnitude.from_exact(t + 1) ** (4 * d * (t + 1) * prod_d)
    for q in polys:
        hv = poly_height(q.coefficients(), field, precision)
        rhs = rhs * hv.h ** (d * prod_d // q.degree)
    ratios = []
    point = tuple(xi)
    with working_prec(precision + 32):
        from .balls import BallComplex
        balls = [x if isinstance(x, BallComplex)
                 else (field.embed(x, precision) if isinstance(x, AlgebraicNumber)
                       else BallComplex.from_exact(Fraction(x)))
                 for x in (1,) + point]
        for q in polys:
            val = poly_eval_ball(q, balls, field, precision)
            norm = poly_norm(q)
            if val.contains_zero():
                ub = val.abs_upper()
                if ub == 0:
                    ratios.append(LogMagnitude.from_exact(0))
                    continue
                ratios.append(LogMagnitude.from_exact(ub / norm))
            else:
                ratios.append(lm_from_abs_interval(val.abs_interval())
                              / LogMagnitude.from_exact(norm))
    rhs = rhs * lm_max(ratios)
    cmp_one = rhs.compare(1)
    holds = cmp_one is not None and cmp_one >= 0
    margin = None
    if rhs.sign > 0:
        from .balls import iv_lo
        margin = float(iv_lo(rhs.log_abs))
    return {"rhs": rhs, "holds": holds, "margin_nats": margin}


def bm_select(family, hP: HomogeneousPolynomial, params, seed: int = 0,
              budget: int = 64):
    """Pick Q_1..Q_t as bounded integer combinations of family members so that
    the resultant with hP is nonzero; combination size and coefficients for
    Q_i are capped at D*S^{i-1}."""
    members = [q for q in family if not q.is_zero()]
    if not members or hP.is_zero():
        raise PolynomialError("need a nonzero family and a nonzero hP")
    t = params.t
    S = params.S
    D = hP.degree
    rng = random.Random(seed)
    for trial in range(budget):
        chosen = []
        for i in range(1, t + 1):
            cap = D * S ** (i - 1)
            count = min(cap, len(members))
            picks = rng.sample(members, count) if trial else members[:count]
            acc = None
            for q in picks:
                a = rng.randint(-cap, cap) if trial else 1
                if a:
                    piece = q.scale(a)
                    acc = piece if acc is None else acc + piece
            if acc is None or acc.is_zero():
                acc = picks[0]
            chosen.append(acc)
        try:
            res = macaulay_resultant([hP] + chosen, seed=seed + trial)
        except ResultantIndeterminate:
            continue
        if res:
            return chosen, {"status": "certified", "trial": trial,
                            "seed": seed, "resultant_nonzero": True}
    return None, {"status": "no certificate found", "seed": seed,
                  "trials": budget}


def corRes2_bound(hP_height: LogMagnitude, B: LogMagnitude, params) -> LogMagnitude:
    """The coefficient H(P)^{dS^t} ((t+1)^{8S} S^{2t} B)^{dtDS^{t-1}} in
    log-space; multiplied by max(delta/B, |P(1,xi)|/||P||) it must be >= 1."""
    t, d, S, D = params.t, params.d, params.S, params.D
    if not (1 <= D <= S):
        raise PolynomialError("need 1 <= D <= S")
    a = hP_height ** (d * S ** t)
    inner = (LogMagnitude.from_exact(t + 1) ** (8 * S)
             * LogMagnitude.from_exact(S) ** (2 * t) * B)
    return a * inner ** (d * t * D * S ** (t - 1))
