"""Dense univariate polynomial helpers over an exact field (K or Q).

Polynomials are coefficient lists, constant term first.  The zero polynomial
is the empty list.  Coefficients may be Fractions or AlgebraicNumbers; a zero
element of the right domain is derived from existing coefficients.
"""

from __future__ import annotations

from fractions import Fraction


def trim(p):
    while p and not p[-1]:
        p = p[:-1]
    return p


def deg(p) -> int:
    return len(p) - 1


def padd(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return trim(out)


def psub(p, q):
    return padd(p, [-c for c in q])


def pscale(p, c):
    if not c:
        return []
    return trim([a * c for a in p])


def pmul(p, q):
    if not p or not q:
        return []
    zero = p[0] * 0
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return trim(out)


def ppow(p, n: int):
    if n < 0:
        raise ValueError("negative polynomial power")
    result = None
    base = p
    while True:
        if n & 1:
            result = base if result is None else pmul(result, base)
        n >>= 1
        if not n:
            break
        base = pmul(base, base)
    if result is None:
        return [p[0] / p[0]] if p else [Fraction(1)]
    return result


def pderiv(p):
    return trim([c * i for i, c in enumerate(p)][1:])


def pderiv_n(p, n: int):
    for _ in range(n):
        p = pderiv(p)
    return p


def peval(p, x):
    acc = x * 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pcompose_linear(p, beta, one):
    """p(x + beta) with an explicit multiplicative identity."""
    acc = []
    lin = [beta, one]
    for c in reversed(p):
        acc = padd(pmul(acc, lin), [c])
    return trim(acc)


def series_inverse(p, order: int):
    """q with p*q = 1 mod x^order; requires an invertible constant term."""
    if not p or not p[0]:
        raise ZeroDivisionError("series inverse needs a unit constant term")
    inv0 = p[0] ** -1 if isinstance(p[0], Fraction) else p[0].inverse()
    out = [inv0]
    zero = p[0] * 0
    for k in range(1, order):
        acc = zero
        for i in range(1, k + 1):
            ci = p[i] if i < len(p) else zero
            if ci:
                acc = acc + ci * out[k - i]
        out.append(-inv0 * acc)
    return trim(out)


def pmul_trunc(p, q, order: int):
    if not p or not q:
        return []
    zero = p[0] * 0
    out = [zero] * min(order, len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if i >= order or not a:
            continue
        for j, b in enumerate(q):
            if i + j >= order:
                break
            if b:
                out[i + j] = out[i + j] + a * b
    return trim(out)


def pmonic(p):
    if not p:
        return p
    lead = p[-1]
    if isinstance(lead, Fraction):
        return [c / lead for c in p]
    return [c * lead.inverse() for c in p]


def pdivmod(p, q):
    """Polynomial division over a field; returns (quotient, remainder)."""
    q = trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = []
    dq = deg(q)
    lead_inv = (q[-1] ** -1) if isinstance(q[-1], Fraction) else q[-1].inverse()
    while len(r) - 1 >= dq and trim(r):
        r = trim(r)
        if len(r) - 1 < dq:
            break
        f = r[-1] * lead_inv
        k = len(r) - 1 - dq
        quot = padd(quot, [r[0] * 0] * k + [f])
        r = psub(r, [r[0] * 0] * k + pscale(q, f))
    return quot, trim(r)


def pgcd(p, q):
    """Monic gcd over a field."""
    a, b = trim(list(p)), trim(list(q))
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    return pmonic(a)
