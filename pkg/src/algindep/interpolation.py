"""Hermite interpolation with multiplicities at the lattice points m.alpha.

Sigma(S) is the set of t-tuples of non-negative integers with coordinate sum
below S.  For each m in Sigma(S) and j < T there is a unique polynomial
A_{m,j} of degree < NT whose derivative of order l at n.alpha is 1 when
(n,l) = (m,j) and 0 otherwise.  The auxiliary function g = phi(exp) is
evaluated two ways (directly, and as a truncated power series with a certified
tail), and the normalizer Delta makes the values Delta*A^{(l)}_{m,j}(n.alpha)
algebraic integers with bounded conjugates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from .balls import (BallComplex, InsufficientPrecision, PREC_CAP,
                    euler_e_interval, iv_hi, iv_hi_fraction, iv_lo,
                    mpf_to_fraction, working_prec)
from .linalg import mat_inverse
from .logmag import LogMagnitude
from .numberfield import (AlgebraicNumber, NumberField, check_q_independence,
                          common_denominator, house_bound, is_integral)
from .unipoly import (pcompose_linear, pderiv, peval, pmul, pmul_trunc,
                      series_inverse, trim)


class InterpolationError(ValueError):
    pass


def sigma_set(S: int, t: int) -> list:
    """All m in N^t with |m| < S, graded order, larger leading parts first."""
    if S < 1 or t < 1:
        raise InterpolationError("sigma_set needs S >= 1 and t >= 1")
    out = []
    for total in range(S):
        block = [m for m in itertools.product(range(total + 1), repeat=t)
                 if sum(m) == total]
        block.sort(reverse=True)
        out.extend(block)
    return out


def falling(k: int, j: int) -> int:
    """Falling factorial k(k-1)...(k-j+1)."""
    out = 1
    for i in range(j):
        out *= k - i
    return out


@dataclass(frozen=True)
class AuxParams:
    """Interpolation data: points, multiplicity, and the size constants c, q."""

    field: NumberField
    t: int
    S: int
    T: int
    alpha: tuple
    c: Fraction
    q: int
    N: int

    @property
    def NT(self) -> int:
        return self.N * self.T

    def point(self, m) -> AlgebraicNumber:
        """The interpolation point m.alpha as a field element."""
        acc = self.field.zero()
        for mi, ai in zip(m, self.alpha):
            if mi:
                acc = acc + ai * mi
        return acc


def aux_params(field: NumberField, alpha, S: int, T: int,
               c: Fraction | None = None, q: int | None = None) -> AuxParams:
    """Validate the data and fill in defaults c (conjugate bound) and q."""
    alpha = tuple(a if isinstance(a, AlgebraicNumber) else field.from_rational(a)
                  for a in alpha)
    t = len(alpha)
    if t < 1 or S < 1 or T < 1:
        raise InterpolationError("need t, S, T >= 1")
    if any(not a for a in alpha):
        raise InterpolationError("all alpha_i must be nonzero")
    if not check_q_independence(list(alpha)):
        raise InterpolationError("alpha_1..alpha_t must be Q-linearly independent")
    c_min = house_bound(list(alpha))
    if c is None:
        c = c_min
    else:
        c = Fraction(c)
        if c < c_min:
            raise InterpolationError("c override is below the conjugate bound")
    q_min = common_denominator(list(alpha))
    if q is None:
        q = q_min
    else:
        q = int(q)
        if q % q_min != 0:
            raise InterpolationError("q override does not clear the denominators")
    if c * q < 1:
        raise InterpolationError("cq >= 1 must hold for integral q*alpha")
    N = math.comb(S + t - 1, t)
    return AuxParams(field, t, S, T, alpha, c, q, N)


class HermiteBasis:
    """The family A_{m,j}, with cached exact derivative values at n.alpha."""

    def __init__(self, params: AuxParams, A: dict):
        self.params = params
        self.A = A
        self._deriv_polys = {}
        self._deriv_values = {}
        self._point_cache = {}

    def point(self, m) -> AlgebraicNumber:
        if m not in self._point_cache:
            self._point_cache[m] = self.params.point(m)
        return self._point_cache[m]

    def _deriv_poly(self, m, j, order: int):
        key = (m, j, order)
        if key not in self._deriv_polys:
            if order == 0:
                self._deriv_polys[key] = self.A[(m, j)]
            else:
                self._deriv_polys[key] = pderiv(self._deriv_poly(m, j, order - 1))
        return self._deriv_polys[key]

    def a_deriv_value(self, m, j, n, l: int) -> AlgebraicNumber:
        """Exact A^{(l)}_{m,j}(n.alpha)."""
        key = (m, j, n, l)
        if key not in self._deriv_values:
            p = self._deriv_poly(m, j, l)
            x = self.point(n)
            val = peval(p, x) if p else self.params.field.zero()
            if isinstance(val, (int, Fraction)):
                val = self.params.field.from_rational(val)
            self._deriv_values[key] = val
        return self._deriv_values[key]


def _basis_local(params: AuxParams) -> dict:
    """A_{m,j} = (prod over other points of (x-m'.alpha)^T) * shifted truncation."""
    field = params.field
    one, zero = field.one(), field.zero()
    T = params.T
    sigma = sigma_set(params.S, params.t)
    points = {m: params.point(m) for m in sigma}
    if len({pt for pt in points.values()}) != len(sigma):
        raise InterpolationError("interpolation points are not pairwise distinct")
    A = {}
    inv_fact = [Fraction(1, math.factorial(j)) for j in range(T)]
    for m in sigma:
        pm = points[m]
        # G_m(x) = prod_{m' != m} (x - m'.alpha)^T and its shift to y = x - m.alpha
        G = [one]
        H = [one]
        for mp_ in sigma:
            if mp_ == m:
                continue
            lin = [-points[mp_], one]
            lin_shift = [pm - points[mp_], one]
            for _ in range(T):
                G = pmul(G, lin)
                H = pmul_trunc(H, lin_shift, T)
        Hinv = series_inverse(H, T)
        for j in range(T):
            xj = [zero] * j + [one * inv_fact[j]]
            P = pmul_trunc(xj, Hinv, T)
            A[(m, j)] = trim(pmul(G, pcompose_linear(P, -pm, one)))
    return A


def _basis_solve(params: AuxParams) -> dict:
    """Oracle construction: invert the confluent Vandermonde system exactly."""
    field = params.field
    one, zero = field.one(), field.zero()
    T = params.T
    sigma = sigma_set(params.S, params.t)
    NT = params.NT
    pairs = [(n, l) for n in sigma for l in range(T)]
    points = {n: params.point(n) for n in sigma}
    rows = []
    for n, l in pairs:
        pn = points[n]
        powers = [one]
        for _ in range(NT - 1 - l):
            powers.append(powers[-1] * pn)
        row = []
        for k in range(NT):
            if k < l:
                row.append(zero)
            else:
                row.append(powers[k - l] * falling(k, l))
        rows.append(row)
    inv = mat_inverse(rows, one, zero)
    A = {}
    for col, (m, j) in enumerate(pairs):
        A[(m, j)] = trim([inv[i][col] for i in range(NT)])
    return A


def hermite_basis(params: AuxParams, cross_check: bool | None = None) -> HermiteBasis:
    """Build the basis by the local product formula; cross-check via exact solve.

    The full linear-solve comparison runs whenever S*T <= 64 (or on request);
    above that, a fixed sample of columns is compared instead.
    """
    A = _basis_local(params)
    full = cross_check if cross_check is not None else params.S * params.T <= 64
    if full:
        A_ref = _basis_solve(params)
        for key in A_ref:
            if A[key] != A_ref[key]:
                raise InterpolationError(f"basis constructions disagree at {key}")
    else:
        basis = HermiteBasis(params, A)
        _verify_duality_sample(basis)
    return HermiteBasis(params, A)


def _verify_duality_sample(basis: HermiteBasis, limit: int = 8):
    params = basis.params
    sigma = sigma_set(params.S, params.t)
    picked = sigma[:2] + sigma[-1:]
    for m in picked:
        for j in (0, params.T - 1):
            for n in picked[:limit]:
                for l in (0, params.T - 1):
                    want = 1 if (n == m and l == j) else 0
                    got = basis.a_deriv_value(m, j, n, l)
                    if got != want:
                        raise InterpolationError(
                            f"duality fails at m={m}, j={j}, n={n}, l={l}")


def phi_monomial(k: int, basis: HermiteBasis) -> list:
    """phi(x^k): zero for k < NT, else x^k minus its Hermite interpolant."""
    params = basis.params
    field = params.field
    if k < params.NT:
        return []
    one, zero = field.one(), field.zero()
    out = [zero] * k + [one]
    for m in sigma_set(params.S, params.t):
        pm = basis.point(m)
        for j in range(params.T):
            coeff = falling(k, j)
            if not coeff:
                continue
            val = (pm ** (k - j)) * coeff
            if not val:
                continue
            term = [c * val for c in basis.A[(m, j)]]
            out = [a - b for a, b in zip(out, term + [zero] * (len(out) - len(term)))]
    return trim(out)


def phi_apply(f, basis: HermiteBasis) -> list:
    """phi(f) = f - sum of f^{(j)}(m.alpha) A_{m,j} for an exact polynomial f."""
    params = basis.params
    field = params.field
    zero = field.zero()
    f = [c if isinstance(c, AlgebraicNumber) else field.from_rational(c) for c in f]
    out = list(f)
    for m in sigma_set(params.S, params.t):
        pm = basis.point(m)
        df = f
        for j in range(params.T):
            val = peval(df, pm) if df else zero
            if val:
                term = [c * val for c in basis.A[(m, j)]]
                if len(term) > len(out):
                    out = out + [zero] * (len(term) - len(out))
                out = [a - b for a, b in zip(out, term + [zero] * (len(out) - len(term)))]
            df = pderiv(df)
    return trim(out)


def _radius_ok(val: BallComplex, bits: int) -> bool:
    mid_re, mid_im = val.mid()
    scale = max(Fraction(1), abs(mpf_to_fraction(mid_re)), abs(mpf_to_fraction(mid_im)))
    return mpf_to_fraction(val.radius()) <= scale * Fraction(1, 2) ** bits


def aux_eval_direct(n, l: int, basis: HermiteBasis, precision: int = 128) -> BallComplex:
    """g^{(l)}(n.alpha) = e^{n.alpha} - sum e^{m.alpha} A^{(l)}_{m,j}(n.alpha)."""
    params = basis.params
    field = params.field
    pn = basis.point(n)
    sigma = sigma_set(params.S, params.t)
    avals = [(m, j, basis.a_deriv_value(m, j, n, l))
             for m in sigma for j in range(params.T)]
    bits = max(precision, 128)
    while True:
        with working_prec(bits + 32):
            total = field.embed(pn, bits).exp()
            exp_cache = {}
            for m, j, aval in avals:
                if not aval:
                    continue
                if m not in exp_cache:
                    exp_cache[m] = field.embed(basis.point(m), bits).exp()
                total = total - exp_cache[m] * field.embed(aval, bits)
            if _radius_ok(total, precision):
                return total
        bits *= 2
        if bits > PREC_CAP:
            raise InsufficientPrecision("aux_eval_direct hit the precision cap")


def _cqS(params: AuxParams) -> Fraction:
    return params.c * params.q * params.S


def default_k_trunc(params: AuxParams) -> int:
    """max(2NT, ceil(4ecqS)): puts the tail ratio below 1/2 with margin."""
    with working_prec(64):
        e_hi = iv_hi_fraction(euler_e_interval())
    return max(2 * params.NT, math.ceil(4 * e_hi * _cqS(params)))


def aux_eval_series(n, l: int, basis: HermiteBasis, K_trunc: int | None = None,
                    precision: int = 128) -> BallComplex:
    """Series form of g^{(l)}(n.alpha): exact partial sum plus a certified tail.

    The inner terms live in K and are summed exactly before a single embedding.
    The tail is bounded by the geometric-ratio estimate M* (cqS)^k k^{T-1} / k!
    with M* an upper bound for 1 + sum |A^{(l)}_{m,j}(n.alpha)|.
    """
    params = basis.params
    field = params.field
    T, NT = params.T, params.NT
    if K_trunc is None:
        K_trunc = default_k_trunc(params)
    base = _cqS(params)
    with working_prec(64):
        threshold = 2 * iv_hi_fraction(euler_e_interval()) * base
    if K_trunc < NT or K_trunc < threshold:
        raise InterpolationError(
            f"K_trunc={K_trunc} below the tail validity threshold "
            f"max(NT, 2ecqS) = max({NT}, {float(threshold):.2f})")

    sigma = sigma_set(params.S, params.t)
    pn = basis.point(n)
    avals = [(m, j, basis.a_deriv_value(m, j, n, l))
             for m in sigma for j in range(params.T)]
    avals = [(m, j, v) for m, j, v in avals if v]

    # power tables up to K_trunc for n.alpha and each m.alpha
    def powers_of(x):
        out = [field.one()]
        for _ in range(K_trunc):
            out.append(out[-1] * x)
        return out

    pn_pow = powers_of(pn)
    pm_pow = {}
    for m, _, _ in avals:
        if m not in pm_pow:
            pm_pow[m] = powers_of(basis.point(m))

    total = field.zero()
    kfact = math.factorial(NT)
    for k in range(NT, K_trunc + 1):
        inner = pn_pow[k - l] * falling(k, l)
        for m, j, aval in avals:
            inner = inner - pm_pow[m][k - j] * (falling(k, j)) * aval
        if inner:
            total = total + inner * Fraction(1, kfact)
        kfact *= k + 1

    # tail: sum_{k>K_trunc} M* base^k k^{T-1} / k!, ratio certified < 1
    mstar = Fraction(1)
    for _, _, aval in avals:
        with working_prec(96):
            mstar += field.embed(aval, 64).abs_upper()
    k0 = K_trunc + 1
    b0 = mstar * base ** k0 * Fraction(k0) ** (T - 1) / math.factorial(k0)
    ratio = Fraction(base, k0 + 1) * Fraction(k0 + 1, k0) ** (T - 1)
    if ratio >= 1:
        raise InterpolationError("tail ratio not below 1 at this truncation")
    tail = b0 / (1 - ratio)

    bits = max(precision, 128)
    while True:
        with working_prec(bits + 32):
            box = field.embed(total, bits)
            pad = BallComplex.from_intervals(
                iv.mpf([-tail.numerator, tail.numerator]) / iv.mpf(tail.denominator),
                iv.mpf([-tail.numerator, tail.numerator]) / iv.mpf(tail.denominator))
            out = box + pad
            if _radius_ok(box, precision) or mpf_to_fraction(out.radius()) <= 2 * tail:
                return out
        bits *= 2
        if bits > PREC_CAP:
            raise InsufficientPrecision("aux_eval_series hit the precision cap")


# -- the normalizer Delta and the size bound B0 ---------------------------------


@dataclass(frozen=True)
class DeltaNormalizer:
    F: tuple
    delta: AlgebraicNumber


def delta_normalizer(params: AuxParams) -> DeltaNormalizer:
    """Delta = (T-1)! q^{2T|F|+T} prod_{r in F} (r.alpha)^{2T}, F the nonzero
    integer vectors of length |r| < S."""
    S, T, t, q = params.S, params.T, params.t, params.q
    F = [r for r in itertools.product(range(-(S - 1), S), repeat=t)
         if any(r) and sum(abs(x) for x in r) < S]
    F.sort()
    if len(F) > (2 ** t) * (params.N - 1):
        raise InterpolationError("|F| exceeds 2^t (N-1)")
    delta = params.field.from_rational(
        Fraction(math.factorial(T - 1)) * Fraction(q) ** (2 * T * len(F) + T))
    for r in F:
        pr = params.point(r)
        delta = delta * pr ** (2 * T)
    if not delta:
        raise InterpolationError("Delta vanished; broken independence?")
    return DeltaNormalizer(tuple(F), delta)


def b0_bound(params: AuxParams) -> LogMagnitude:
    """B0 = (NT)^{2T-2} (cqS)^{2^{t+1} NT} as a log-scale magnitude."""
    NT, T, t = params.NT, params.T, params.t
    a = LogMagnitude.from_exact(NT) ** (2 * T - 2)
    b = LogMagnitude.from_exact(_cqS(params)) ** ((2 ** (t + 1)) * NT)
    return a * b


def lemA_check(basis: HermiteBasis, normalizer: DeltaNormalizer) -> dict:
    """All Delta * A^{(l)}_{m,j}(n.alpha) integral with conjugates <= B0."""
    params = basis.params
    delta = normalizer.delta
    b0 = b0_bound(params)
    sigma = sigma_set(params.S, params.t)
    sigma1 = sigma_set(params.S + 1, params.t)
    checked = 0
    violations = []
    worst_margin = None

    def check_one(tag, value):
        nonlocal checked, worst_margin
        checked += 1
        if not is_integral(value):
            violations.append({"witness": tag, "kind": "not integral"})
            return
        if not value:
            return
        hb = LogMagnitude.from_exact(house_bound([value]))
        cmp_ = hb.compare(b0)
        if cmp_ is None or cmp_ > 0:
            violations.append({"witness": tag, "kind": "conjugate bound"})
            return
        margin = float(iv_lo((b0 / hb).log_abs))
        if worst_margin is None or margin < worst_margin:
            worst_margin = margin

    check_one("Delta", delta)
    for m in sigma:
        for j in range(params.T):
            for n in sigma1:
                for l in range(params.T):
                    v = delta * basis.a_deriv_value(m, j, n, l)
                    check_one((m, j, n, l), v)
    return {"checked": checked, "violations": violations,
            "worst_margin_nats": worst_margin, "passed": not violations}


def q_coefficients(n, l: int, basis: HermiteBasis) -> dict:
    """Coefficients of Q_{n,l} indexed by m in Sigma(S+1): the monomial
    X0^{S-|m|} X^m carries [m == n] - sum_j A^{(l)}_{m,j}(n.alpha)."""
    params = basis.params
    field = params.field
    out = {}
    for m in sigma_set(params.S + 1, params.t):
        coeff = field.one() if m == n else field.zero()
        if sum(m) < params.S:
            for j in range(params.T):
                coeff = coeff - basis.a_deriv_value(m, j, n, l)
        if coeff:
            out[m] = coeff
    return out


def propQ_check(basis: HermiteBasis, normalizer: DeltaNormalizer,
                precision: int = 128) -> dict:
    """Both size bounds on Delta Q_{n,l}: coefficient conjugates <= T B0 and
    point value at (1, e^alpha) <= (cqS/T)^{NT} T^T B0.  Requires N >= 6 and
    NT >= 2e cqS; outside that regime reports out-of-hypothesis."""
    params = basis.params
    field = params.field
    NT, T = params.NT, params.T
    with working_prec(256):
        two_e_cqs = 2 * euler_e_interval() * (
            iv.mpf(_cqS(params).numerator) / iv.mpf(_cqS(params).denominator))
        hyp_nt = iv_hi(two_e_cqs) <= NT
    if params.N < 6 or not hyp_nt:
        return {"status": "out of hypothesis", "N": params.N, "NT": NT,
                "passed": None}

    delta = normalizer.delta
    b0 = b0_bound(params)
    bound1 = LogMagnitude.from_exact(T) * b0
    bound2 = ((LogMagnitude.from_exact(_cqS(params))
               / LogMagnitude.from_exact(T)) ** NT
              * LogMagnitude.from_exact(T) ** T * b0)
    violations = []
    pairs = 0
    for n in sigma_set(params.S + 1, params.t):
        for l in range(T):
            pairs += 1
            coeffs = q_coefficients(n, l, basis)
            scaled = [delta * c for c in coeffs.values()]
            if scaled:
                # (for n inside Sigma(S) the duality makes Q vanish identically)
                hb = LogMagnitude.from_exact(house_bound(scaled))
                c1 = hb.compare(bound1)
                if c1 is None or c1 > 0:
                    violations.append({"witness": (n, l), "kind": "norm bound"})
            g_box = aux_eval_direct(n, l, basis, precision)
            with working_prec(precision + 32):
                val = field.embed(delta, precision) * g_box
                ub = val.abs_upper()
            if ub > 0:
                c2 = LogMagnitude.from_exact(ub).compare(bound2)
                if c2 is None or c2 > 0:
                    violations.append({"witness": (n, l), "kind": "value bound"})
    return {"status": "checked", "pairs": pairs, "violations": violations,
            "passed": not violations}
