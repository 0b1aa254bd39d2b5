"""Exact arithmetic in a number field K given by a monic integer minimal polynomial.

Elements are rational coordinate vectors in the power basis of the primitive
element.  Complex embeddings are certified root enclosures of the minimal
polynomial, refined on demand by interval Newton; the enclosure at index 0
(largest real part, ties by imaginary part) is the distinguished embedding
K ⊂ C used for all analytic evaluation.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy
from mpmath import iv, mp

from .balls import (BallComplex, InsufficientPrecision, PREC_CAP, ivf, iv_hi,
                    iv_lo, mpf_to_fraction, working_prec)
from .linalg import bareiss_det, mat_inverse, mat_rank, mat_vec


class FieldError(ValueError):
    """Invalid number-field data (reducible polynomial, bad basis, ...)."""


MAX_DEGREE = 8  # exact irreducibility testing is capped at desk scale


class AlgebraicNumber:
    """Element of a NumberField, stored as rational power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: "NumberField", coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != field.degree:
            raise ValueError("coordinate vector has wrong length")
        self.field = field
        self.coords = coords

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    # -- ring/field operations -------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return AlgebraicNumber(self.field, tuple(a / other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coords))

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def inverse(self) -> "AlgebraicNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return self.field._inverse(self)

    # -- structure -------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return self.coords[0]

    def mult_matrix(self):
        """Matrix of multiplication by self in the power basis (columns = images)."""
        field = self.field
        d = field.degree
        cols = []
        cur = self
        for _ in range(d):
            cols.append(cur.coords)
            cur = field._shift(cur)
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def __repr__(self):
        return f"AlgebraicNumber({list(self.coords)})"


class NumberField:
    """Number field presented by a monic irreducible integer polynomial."""

    def __init__(self, min_poly, integral_basis=None):
        min_poly = [int(c) for c in min_poly]
        while len(min_poly) > 1 and min_poly[-1] == 0:
            min_poly.pop()
        d = len(min_poly) - 1
        if d < 1:
            raise FieldError("minimal polynomial must have degree >= 1")
        if d > MAX_DEGREE:
            raise FieldError(f"degree {d} exceeds the exact-arithmetic cap {MAX_DEGREE}")
        if min_poly[-1] != 1:
            raise FieldError("minimal polynomial must be monic")
        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(min_poly)), x)
        if d > 1 and not poly.is_irreducible:
            raise FieldError("minimal polynomial is reducible over Q")
        self.min_poly = tuple(min_poly)
        self.degree = d
        self._build_reduction_table()
        self._box_cache: dict[int, list] = {}
        self._init_embeddings()
        self._init_basis(integral_basis)

    # -- construction helpers ---------------------------------------------------

    def _build_reduction_table(self):
        d = self.degree
        # theta^d = -(c_0 + c_1 theta + ... + c_{d-1} theta^{d-1})
        table = [tuple(Fraction(-c) for c in self.min_poly[:d])]
        for _ in range(d - 2):
            prev = table[-1]
            shifted = (Fraction(0),) + prev[:-1]
            top = prev[-1]
            table.append(tuple(s + top * t for s, t in zip(shifted, table[0])))
        self._reduction = table  # theta^(d+k) coords for k = 0..d-2

    def _init_basis(self, integral_basis):
        d = self.degree
        if integral_basis is None:
            self.integral_basis = [self.element([1 if i == j else 0 for j in range(d)])
                                   for i in range(d)]
            self.basis_unverified_maximal = True
            self._w = [[Fraction(1) if i == j else Fraction(0) for j in range(d)]
                       for i in range(d)]
            self._w_inv = self._w
            return
        basis = [self.element(b) for b in integral_basis]
        if len(basis) != d:
            raise FieldError("integral basis must have d elements")
        for b in basis:
            if not _char_poly_is_integral(b):
                raise FieldError(f"integral basis element {b} is not an algebraic integer")
        w = [list(b.coords) for b in basis]
        try:
            w_inv = mat_inverse(w, Fraction(1), Fraction(0))
        except ValueError:
            raise FieldError("integral basis transition matrix is singular") from None
        self.integral_basis = basis
        self.basis_unverified_maximal = False
        self._w = w
        self._w_inv = w_inv
        self._w_invT = [[w_inv[j][i] for j in range(d)] for i in range(d)]

    # -- element factories --------------------------------------------------------

    def element(self, coords) -> AlgebraicNumber:
        return AlgebraicNumber(self, coords)

    def from_rational(self, x) -> AlgebraicNumber:
        return AlgebraicNumber(self, (Fraction(x),) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> AlgebraicNumber:
        return self.from_rational(0)

    def one(self) -> AlgebraicNumber:
        return self.from_rational(1)

    def theta(self) -> AlgebraicNumber:
        if self.degree == 1:
            return self.from_rational(-self.min_poly[0])
        return self.element([0, 1] + [0] * (self.degree - 2))

    # -- internal arithmetic ---------------------------------------------------------

    def _shift(self, a: AlgebraicNumber) -> AlgebraicNumber:
        """Multiply by theta."""
        d = self.degree
        shifted = [Fraction(0)] + list(a.coords[:-1])
        top = a.coords[-1]
        if top:
            red = self._reduction[0] if d > 1 else (Fraction(-self.min_poly[0]),)
            if d == 1:
                shifted = [top * red[0]]
            else:
                shifted = [s + top * r for s, r in zip(shifted, red)]
        return AlgebraicNumber(self, shifted)

    def _mul(self, a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
        d = self.degree
        if d == 1:
            return AlgebraicNumber(self, (a.coords[0] * b.coords[0],))
        conv = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a.coords):
            if not ai:
                continue
            for j, bj in enumerate(b.coords):
                if bj:
                    conv[i + j] += ai * bj
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                red = self._reduction[k - d]
                out = [o + ck * r for o, r in zip(out, red)]
        return AlgebraicNumber(self, out)

    def _inverse(self, a: AlgebraicNumber) -> AlgebraicNumber:
        d = self.degree
        if d == 1:
            return AlgebraicNumber(self, (1 / a.coords[0],))
        m = a.mult_matrix()
        inv = mat_inverse(m, Fraction(1), Fraction(0))
        return AlgebraicNumber(self, [inv[i][0] for i in range(d)])

    # -- embeddings ---------------------------------------------------------------

    def _init_embeddings(self):
        boxes = _certify_roots(self.min_poly, 64)
        boxes.sort(key=lambda b: (-b[0], -b[1]))
        self._box_cache[64] = [b[2] for b in boxes]
        self._best_bits = 64

    def root_boxes(self, bits: int):
        """Certified pairwise-disjoint enclosures of the roots, radius <= 2^-bits."""
        have = max(k for k in self._box_cache if k >= bits) if any(
            k >= bits for k in self._box_cache) else None
        if have is not None:
            return self._box_cache[have]
        base_bits = self._best_bits
        base = self._box_cache[base_bits]
        refined = _refine_boxes(self.min_poly, base, bits)
        self._box_cache[bits] = refined
        self._best_bits = max(self._best_bits, bits)
        return refined

    def embed(self, a: AlgebraicNumber, bits: int = 64) -> BallComplex:
        """Ball enclosure of a under the distinguished embedding."""
        return self.conjugate_boxes(a, bits)[0]

    def conjugate_boxes(self, a: AlgebraicNumber, bits: int = 64):
        """Ball enclosures of all conjugates sigma(a), refined to ~2^-bits."""
        work = bits + 32
        while True:
            roots = self.root_boxes(work)
            with working_prec(work + 32):
                out = []
                worst_ok = True
                for r in roots:
                    val = _horner_coords(a.coords, r)
                    out.append(val)
                    tgt = _radius_target(val, bits)
                    if val.radius() > tgt:
                        worst_ok = False
                if worst_ok:
                    return out
            work *= 2
            if work > PREC_CAP:
                raise InsufficientPrecision("conjugate refinement hit the precision cap")


def _radius_target(val: BallComplex, bits: int):
    m_re, m_im = val.mid()
    mag = max(abs(m_re), abs(m_im))
    scale = mag if mag > 1 else mp.mpf(1)
    return scale * mp.mpf(2) ** (-bits)


def _horner_coords(coords, theta_box: BallComplex) -> BallComplex:
    acc = BallComplex.from_exact(0)
    for c in reversed(coords):
        acc = acc * theta_box + BallComplex.from_exact(c)
    return acc


def _char_poly_is_integral(a: AlgebraicNumber) -> bool:
    m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                      for row in a.mult_matrix()])
    cp = m.charpoly()
    return all(c.is_integer for c in cp.all_coeffs())


# -- certified root isolation -------------------------------------------------------


def _poly_eval_box(coeffs, x: BallComplex) -> BallComplex:
    acc = BallComplex.from_exact(0)
    for c in reversed(coeffs):
        acc = acc * x + BallComplex.from_exact(c)
    return acc


def _box_midpoint(x: BallComplex) -> BallComplex:
    re = (iv_lo(x.val.real) + iv_hi(x.val.real)) / 2
    im = (iv_lo(x.val.imag) + iv_hi(x.val.imag)) / 2
    return BallComplex(iv.mpc(iv.mpf(re), iv.mpf(im)))


def _box_contains(inner: BallComplex, outer: BallComplex, strict: bool) -> bool:
    ri, ro = inner.val.real, outer.val.real
    ii, io = inner.val.imag, outer.val.imag
    if strict:
        return (iv_lo(ro) < iv_lo(ri) and iv_hi(ri) < iv_hi(ro)
                and iv_lo(io) < iv_lo(ii) and iv_hi(ii) < iv_hi(io))
    return (iv_lo(ro) <= iv_lo(ri) and iv_hi(ri) <= iv_hi(ro)
            and iv_lo(io) <= iv_lo(ii) and iv_hi(ii) <= iv_hi(io))


def _box_intersect(a: BallComplex, b: BallComplex):
    lo_r = max(iv_lo(a.val.real), iv_lo(b.val.real))
    hi_r = min(iv_hi(a.val.real), iv_hi(b.val.real))
    lo_i = max(iv_lo(a.val.imag), iv_lo(b.val.imag))
    hi_i = min(iv_hi(a.val.imag), iv_hi(b.val.imag))
    if lo_r > hi_r or lo_i > hi_i:
        return None
    return BallComplex(iv.mpc(iv.mpf([lo_r, hi_r]), iv.mpf([lo_i, hi_i])))


def _newton_step(coeffs, dcoeffs, x: BallComplex):
    """One interval Newton step; None when the derivative box contains 0."""
    df = _poly_eval_box(dcoeffs, x)
    if df.contains_zero():
        return None
    m = _box_midpoint(x)
    fm = _poly_eval_box(coeffs, m)
    return m - fm / df


def _refine_one(coeffs, dcoeffs, box: BallComplex, bits: int):
    """Refine a certified root box until its radius meets 2^-bits; None on stall."""
    x = box
    for _ in range(bits + 64):
        tgt = _radius_target(x, bits)
        if x.radius() <= tgt:
            return x
        n = _newton_step(coeffs, dcoeffs, x)
        if n is None:
            return None
        nx = _box_intersect(n, x)
        if nx is None:
            return None
        if nx.radius() >= x.radius():
            return None
        x = nx
    return None


def _refine_boxes(min_poly, boxes, bits: int):
    coeffs = list(min_poly)
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    work = bits + 64
    while True:
        with working_prec(work):
            out = []
            ok = True
            for b in boxes:
                r = _refine_one(coeffs, dcoeffs, b, bits)
                if r is None:
                    ok = False
                    break
                out.append(r)
            if ok:
                return out
        work *= 2
        if work > PREC_CAP:
            raise InsufficientPrecision("root refinement hit the precision cap")


def _certify_roots(min_poly, bits: int):
    """Isolate all roots; returns [(re_mid, im_mid, BallComplex)], disjoint boxes."""
    coeffs = list(min_poly)
    d = len(coeffs) - 1
    if d == 1:
        root = Fraction(-coeffs[0])
        with working_prec(bits + 64):
            box = BallComplex.from_exact(root)
        return [(float(root), 0.0, box)]
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    dps = max(40, int(bits * 0.4) + 20)
    attempts = 0
    while True:
        attempts += 1
        if attempts > 16:
            raise FieldError("failed to certify root enclosures")
        with mp.workdps(dps):
            approx = mp.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=80)
            approx = [mp.mpc(r) for r in approx]
            sep = min(abs(a - b) for i, a in enumerate(approx)
                      for b in approx[i + 1:]) if d > 1 else mp.mpf(1)
            h = sep / 8
        certified = []
        ok = True
        with working_prec(bits + 64):
            for r in approx:
                box = BallComplex(iv.mpc(iv.mpf([r.real - h, r.real + h]),
                                         iv.mpf([r.imag - h, r.imag + h])))
                n = _newton_step(coeffs, dcoeffs, box)
                if n is None or not _box_contains(n, box, strict=True):
                    ok = False
                    break
                refined = _refine_one(coeffs, dcoeffs, _box_intersect(n, box), bits)
                if refined is None:
                    ok = False
                    break
                certified.append(refined)
        if ok and _all_disjoint(certified):
            out = []
            for b in certified:
                m_re, m_im = b.mid()
                out.append((float(m_re), float(m_im), b))
            return out
        dps *= 2


def _all_disjoint(boxes) -> bool:
    for i, a in enumerate(boxes):
        for b in boxes[i + 1:]:
            if _box_intersect(a, b) is not None:
                return False
    return True


# -- spec-level operations ---------------------------------------------------------


def nf_create(min_poly, integral_basis=None) -> NumberField:
    """Create a number field; power basis is used (flagged) when none is given."""
    return NumberField(min_poly, integral_basis)


def conjugates(a: AlgebraicNumber, precision: int = 64):
    """Certified enclosures of all conjugates of a, radius ~ 2^-precision."""
    return a.field.conjugate_boxes(a, precision)


def house_bound(elements, precision: int = 24) -> Fraction:
    """Dyadic upper bound on all conjugate absolute values, near-tight."""
    elements = list(elements)
    if not elements:
        raise ValueError("house_bound needs at least one element")
    bits = 48
    while True:
        ub = Fraction(0)
        lb = Fraction(0)
        for a in elements:
            for box in a.field.conjugate_boxes(a, bits):
                mag = box.abs_interval()
                ub = max(ub, mpf_to_fraction(iv_hi(mag)))
                lb = max(lb, mpf_to_fraction(iv_lo(mag)))
        if ub == 0:
            return Fraction(0)
        if lb > 0 and ub <= lb * (1 + Fraction(1, 1 << (precision + 2))):
            return ub  # mpf upper endpoints are dyadic already
        bits *= 2
        if bits > PREC_CAP:
            raise InsufficientPrecision("house bound refinement hit the precision cap")


def is_integral(a: AlgebraicNumber) -> bool:
    """True iff a has integer coordinates in the field's integral basis."""
    field = a.field
    if field.basis_unverified_maximal:
        coords = a.coords
    else:
        coords = mat_vec(field._w_invT, list(a.coords))
    return all(c.denominator == 1 for c in coords)


def common_denominator(elements) -> int:
    """Smallest positive integer q with q*a integral for every a in the list."""
    elements = list(elements)
    if not elements:
        raise ValueError("common_denominator needs at least one element")
    q = 1
    for a in elements:
        field = a.field
        coords = a.coords if field.basis_unverified_maximal else mat_vec(
            field._w_invT, list(a.coords))
        for c in coords:
            q = q * c.denominator // math.gcd(q, c.denominator)
    for a in elements:
        if not is_integral(a * q):
            raise ArithmeticError("computed denominator failed the integrality check")
    return q


def check_q_independence(elements) -> bool:
    """True iff the elements are linearly independent over Q."""
    elements = list(elements)
    if not elements:
        return True
    rows = [list(a.coords) for a in elements]
    if len(rows) > len(rows[0]):
        return False
    return mat_rank(rows) == len(rows)


def norm_trace(a: AlgebraicNumber):
    """Exact field norm and trace (det and trace of the multiplication matrix)."""
    m = a.mult_matrix()
    norm = bareiss_det(m)
    trace = sum((m[i][i] for i in range(len(m))), Fraction(0))
    return norm, trace
