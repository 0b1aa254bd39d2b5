"""Absolute Weil heights of projective points and polynomials over K.

H(u) = H_inf(u) * H_fin(u), with H_inf the geometric mean over embeddings of
the sup-norm and H_fin the inverse d-th root of the norm of the fractional
ideal generated by the coordinates.  Includes polynomial heights/lengths and
the Liouville-type nearest-zero inequality check for multihomogeneous integer
forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy
from mpmath import iv

from .balls import (BallComplex, PREC_CAP, InsufficientPrecision, iv_hi,
                    iv_lo, working_prec)
from .logmag import LogMagnitude, lm_from_abs_interval, lm_max
from .linalg import mat_vec, z_module_index
from .numberfield import AlgebraicNumber, NumberField, common_denominator


class HeightError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectivePointK:
    """Nonzero point of P^n(K), coordinates as field elements."""

    field: NumberField
    coords: tuple

    def __post_init__(self):
        if not any(self.coords):
            raise HeightError("projective point must have a nonzero coordinate")

    @classmethod
    def make(cls, field: NumberField, coords) -> "ProjectivePointK":
        elems = tuple(c if isinstance(c, AlgebraicNumber) else field.from_rational(c)
                      for c in coords)
        return cls(field, elems)


@dataclass(frozen=True)
class HeightValue:
    h_inf: LogMagnitude
    h_fin: object  # Fraction when the d-th root is rational, else LogMagnitude
    h: LogMagnitude


def _all_rational(point: ProjectivePointK) -> bool:
    return all(c.is_rational for c in point.coords)


def h_inf(point: ProjectivePointK, precision: int = 64) -> LogMagnitude:
    """Geometric mean over embeddings of the coordinate sup-norm."""
    field = point.field
    d = field.degree
    if _all_rational(point):
        m = max(abs(c.as_fraction()) for c in point.coords)
        return LogMagnitude.from_exact(m)
    bits = max(precision, 64)
    while True:
        with working_prec(bits + 32):
            boxes = [field.conjugate_boxes(c, bits) for c in point.coords]
            total = None
            ok = True
            for s in range(d):
                lo = max(iv_lo(abs(boxes[i][s].val)) for i in range(len(point.coords)))
                hi = max(iv_hi(abs(boxes[i][s].val)) for i in range(len(point.coords)))
                if lo <= 0:
                    ok = False
                    break
                ln = iv.log(iv.mpf([lo, hi]))
                total = ln if total is None else total + ln
            if ok:
                return LogMagnitude.from_log(total / d)
        bits *= 2
        if bits > PREC_CAP:
            raise InsufficientPrecision("h_inf refinement hit the precision cap")


def _ideal_norm(point: ProjectivePointK) -> tuple[Fraction, int]:
    """Norm of the fractional ideal generated by the coordinates, as (N, d)."""
    field = point.field
    d = field.degree
    nonzero = [c for c in point.coords if c]
    lam = common_denominator(nonzero)
    rows = []
    for c in nonzero:
        scaled = c * lam
        for omega in field.integral_basis:
            gen = scaled * omega
            if field.basis_unverified_maximal:
                coords = gen.coords
            else:
                coords = mat_vec(field._w_invT, list(gen.coords))
            if any(x.denominator != 1 for x in coords):
                raise HeightError("generator is not integral; bad integral basis?")
            rows.append([int(x) for x in coords])
    index = z_module_index(rows, d)
    if index == 0:
        raise HeightError("ideal generators do not span a full-rank module")
    return Fraction(index, lam ** d), d


def h_fin(point: ProjectivePointK):
    """N_{K/Q}(ideal)^(-1/d); Fraction when exact, else LogMagnitude."""
    norm, d = _ideal_norm(point)
    num_root, num_exact = sympy.integer_nthroot(norm.numerator, d)
    den_root, den_exact = sympy.integer_nthroot(norm.denominator, d)
    if num_exact and den_exact:
        return Fraction(int(den_root), int(num_root))
    ln = (iv.log(iv.mpf(norm.numerator)) - iv.log(iv.mpf(norm.denominator)))
    return LogMagnitude.from_log(-ln / d)


def h_weil(point: ProjectivePointK, precision: int = 64) -> HeightValue:
    """Absolute Weil height H = H_inf * H_fin."""
    hi_ = h_inf(point, precision)
    hf = h_fin(point)
    hf_lm = LogMagnitude.from_exact(hf) if isinstance(hf, Fraction) else hf
    return HeightValue(hi_, hf, hi_ * hf_lm)


def poly_height(coeffs, field: NumberField, precision: int = 64) -> HeightValue:
    """Height of a polynomial = height of its coefficient vector (fixed order)."""
    return h_weil(ProjectivePointK.make(field, list(coeffs)), precision)


def poly_length(coeffs, field: NumberField | None = None,
                precision: int = 64) -> LogMagnitude:
    """Sum of coefficient absolute values; exact for rational input."""
    coeffs = list(coeffs)
    if not coeffs:
        raise HeightError("zero polynomial has no length")
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        return LogMagnitude.from_exact(sum(abs(Fraction(c)) for c in coeffs))
    if all(isinstance(c, AlgebraicNumber) and c.is_rational for c in coeffs):
        return LogMagnitude.from_exact(sum(abs(c.as_fraction()) for c in coeffs))
    total = None
    with working_prec(precision + 32):
        for c in coeffs:
            box = c.field.embed(c, precision) if isinstance(c, AlgebraicNumber) else c
            mag = abs(box.val)
            total = mag if total is None else total + mag
        return lm_from_abs_interval(total)


# -- multihomogeneous forms and the nearest-zero inequality ---------------------


@dataclass(frozen=True)
class MultiHomPoly:
    """Integer polynomial, multihomogeneous in t+1 groups of variables."""

    group_sizes: tuple  # number of variables per group
    terms: tuple        # ((flat_exponents, int_coeff), ...)

    @classmethod
    def make(cls, group_sizes, term_map) -> "MultiHomPoly":
        gs = tuple(int(n) for n in group_sizes)
        total = sum(gs)
        terms = []
        for exp, coeff in sorted(term_map.items()):
            exp = tuple(int(e) for e in exp)
            if len(exp) != total:
                raise ValueError("exponent vector has wrong length")
            if coeff:
                terms.append((exp, int(coeff)))
        poly = cls(gs, tuple(terms))
        poly.multidegrees()  # validates per-group homogeneity
        return poly

    def _group_slices(self):
        out = []
        start = 0
        for n in self.group_sizes:
            out.append(slice(start, start + n))
            start += n
        return out

    def multidegrees(self) -> tuple:
        slices = self._group_slices()
        degs = None
        for exp, _ in self.terms:
            cur = tuple(sum(exp[s]) for s in slices)
            if degs is None:
                degs = cur
            elif degs != cur:
                raise ValueError("polynomial is not multihomogeneous")
        return degs if degs is not None else tuple(0 for _ in self.group_sizes)

    def length(self) -> int:
        return sum(abs(c) for _, c in self.terms)

    def eval(self, vectors):
        """Evaluate on concatenated per-group vectors (K elements or balls)."""
        flat = [x for vec in vectors for x in vec]
        total = None
        for exp, coeff in self.terms:
            term = None
            for x, e in zip(flat, exp):
                if e:
                    p = x ** e if not isinstance(x, BallComplex) else _ball_pow(x, e)
                    term = p if term is None else term * p
            if term is None:
                term = coeff if not flat else flat[0] * 0 + coeff
            else:
                term = term * coeff
            total = term if total is None else total + term
        return total


def _ball_pow(x: BallComplex, e: int) -> BallComplex:
    out = BallComplex.from_exact(1)
    for _ in range(e):
        out = out * x
    return out


def _sup_norm_lm(field: NumberField, vec, precision: int) -> LogMagnitude:
    """Sup-norm under the distinguished embedding, as a LogMagnitude."""
    if all(isinstance(x, AlgebraicNumber) and x.is_rational for x in vec):
        return LogMagnitude.from_exact(max(abs(x.as_fraction()) for x in vec))
    lo = None
    hi = None
    with working_prec(precision + 32):
        for x in vec:
            box = field.embed(x, precision) if isinstance(x, AlgebraicNumber) else x
            mag = abs(box.val)
            l, h = iv_lo(mag), iv_hi(mag)
            lo = l if lo is None else max(lo, l)
            hi = h if hi is None else max(hi, h)
        if lo <= 0:
            raise HeightError("sup norm not separated from zero")
        return lm_from_abs_interval(iv.mpf([lo, hi]))


def propU_check(R: MultiHomPoly, u_list, eps_list, field: NumberField,
                precision: int = 96) -> dict:
    """Nearest-zero inequality: with R(u) != 0 and R(u+eps) = 0, the bound
    2^(sum N_i) L(R)^d prod H(u_i)^(d N_i) max(||eps_i||/||u_i||) must be >= 1.
    """
    degs = R.multidegrees()
    d = field.degree
    u_vecs = [tuple(x if isinstance(x, AlgebraicNumber) else field.from_rational(x)
                    for x in u) for u in u_list]
    exact_eps = all(isinstance(x, (int, Fraction, AlgebraicNumber))
                    for eps in eps_list for x in eps)
    conditional = False
    val_u = R.eval(u_vecs)
    if not val_u:
        raise HeightError("precondition failed: R(u) = 0")
    if exact_eps:
        eps_vecs = [tuple(x if isinstance(x, AlgebraicNumber) else field.from_rational(x)
                          for x in eps) for eps in eps_list]
        shifted = [tuple(a + b for a, b in zip(u, e)) for u, e in zip(u_vecs, eps_vecs)]
        if R.eval(shifted):
            raise HeightError("precondition failed: R(u+eps) != 0")
    else:
        with working_prec(precision + 64):
            eps_vecs = [tuple(x if isinstance(x, BallComplex)
                              else BallComplex.from_exact(Fraction(x)) if isinstance(x, (int, Fraction))
                              else field.embed(x, precision) for x in eps)
                        for eps in eps_list]
            u_boxes = [tuple(field.embed(x, precision) for x in u) for u in u_vecs]
            shifted = [tuple(a + b for a, b in zip(u, e))
                       for u, e in zip(u_boxes, eps_vecs)]
            val = R.eval(shifted)
            bound = Fraction(1, 1 << precision)
            if val.abs_upper() >= bound:
                raise HeightError("R(u+eps) not certified zero at this precision")
            conditional = True

    rhs = LogMagnitude.from_exact(Fraction(2) ** sum(degs))
    rhs = rhs * (LogMagnitude.from_exact(R.length()) ** d)
    for u, n_i in zip(u_vecs, degs):
        hv = h_weil(ProjectivePointK(field, u), precision)
        rhs = rhs * (hv.h ** (d * n_i))
    ratios = []
    for u, eps, n_i in zip(u_vecs, eps_list, degs):
        if all(not _eps_entry_nonzero(x) for x in eps):
            ratios.append(LogMagnitude.from_exact(0))
            continue
        eps_norm = _eps_sup_norm(field, eps, precision)
        u_norm = _sup_norm_lm(field, u, precision)
        ratios.append(eps_norm / u_norm)
    rhs = rhs * lm_max(ratios)
    cmp_one = rhs.compare(1)
    holds = cmp_one is not None and cmp_one >= 0
    margin = None
    if rhs.sign > 0:
        margin = float(iv_lo(rhs.log_abs))
    return {"rhs": rhs, "holds": holds, "margin_nats": margin,
            "conditional": conditional}


def _eps_entry_nonzero(x) -> bool:
    if isinstance(x, BallComplex):
        return not x.contains_zero() or x.abs_upper() > 0
    return bool(x)


def _eps_sup_norm(field, eps, precision) -> LogMagnitude:
    vals = []
    for x in eps:
        if isinstance(x, BallComplex):
            vals.append(x)
        elif isinstance(x, AlgebraicNumber):
            vals.append(x)
        else:
            vals.append(field.from_rational(x))
    return _sup_norm_lm(field, vals, precision)
