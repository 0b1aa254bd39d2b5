"""Certified complex rectangle ("ball") arithmetic on top of mpmath's iv context.

All interval endpoints are rounded outward by mpmath, so every BallComplex
encloses the exact value of the expression it was built from.  Working
precision is controlled by the ``working_prec`` context manager.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv, mp
from mpmath.libmp import to_rational

PREC_CAP = 1 << 20


class InsufficientPrecision(ArithmeticError):
    """Raised when the precision-doubling policy hits the hard cap."""


@contextmanager
def working_prec(bits: int):
    """Temporarily set the interval context precision (in bits)."""
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def ivf(x) -> "iv.mpf":
    """Convert an int, Fraction or mpf-like value to a certified interval."""
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    return iv.mpf(x)


def iv_lo(x):
    """Lower endpoint of an ivmpf as an mpf."""
    return mp.make_mpf(x._mpi_[0])


def iv_hi(x):
    """Upper endpoint of an ivmpf as an mpf."""
    return mp.make_mpf(x._mpi_[1])


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (mpf values are dyadic)."""
    p, q = to_rational(x._mpf_)
    return Fraction(int(p), int(q))


def iv_hi_fraction(x) -> Fraction:
    return mpf_to_fraction(iv_hi(x))


def iv_lo_fraction(x) -> Fraction:
    return mpf_to_fraction(iv_lo(x))


def iv_intersect(x, y):
    """Intersection of two ivmpf intervals; None if disjoint."""
    lo = max(iv_lo(x), iv_lo(y))
    hi = min(iv_hi(x), iv_hi(y))
    if lo > hi:
        return None
    return iv.mpf([lo, hi])


def iv_contains(inner, outer, strict: bool = False) -> bool:
    """True if interval ``inner`` is a subset of ``outer``."""
    li, hi_ = iv_lo(inner), iv_hi(inner)
    lo, ho = iv_lo(outer), iv_hi(outer)
    if strict:
        return lo < li and hi_ < ho
    return lo <= li and hi_ <= ho


def iv_le(a, b):
    """Certified comparison a <= b: True, False, or None if undecided."""
    if iv_hi(a) <= iv_lo(b):
        return True
    if iv_lo(a) > iv_hi(b):
        return False
    return None


class BallComplex:
    """Complex midpoint-radius style enclosure backed by an iv.mpc rectangle."""

    __slots__ = ("val",)

    def __init__(self, val):
        self.val = val

    @classmethod
    def from_exact(cls, re, im=0) -> "BallComplex":
        return cls(iv.mpc(ivf(re), ivf(im)))

    @classmethod
    def from_intervals(cls, re_iv, im_iv) -> "BallComplex":
        return cls(iv.mpc(re_iv, im_iv))

    @property
    def real(self):
        return self.val.real

    @property
    def imag(self):
        return self.val.imag

    def _coerce(self, other):
        if isinstance(other, BallComplex):
            return other.val
        if isinstance(other, (int, Fraction)):
            return iv.mpc(ivf(other), ivf(0))
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else BallComplex(self.val + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else BallComplex(self.val - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else BallComplex(v - self.val)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else BallComplex(self.val * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else BallComplex(self.val / v)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else BallComplex(v / self.val)

    def __neg__(self):
        return BallComplex(-self.val)

    def exp(self) -> "BallComplex":
        return BallComplex(iv.exp(self.val))

    def abs_interval(self):
        return abs(self.val)

    def abs_upper(self) -> Fraction:
        return iv_hi_fraction(abs(self.val))

    def abs_lower(self) -> Fraction:
        return iv_lo_fraction(abs(self.val))

    def radius(self):
        """Half of the larger rectangle side, as an mpf upper bound."""
        dr = iv_hi(self.val.real.delta)
        di = iv_hi(self.val.imag.delta)
        return max(dr, di) / 2

    def mid(self):
        """Approximate midpoint as an (mpf, mpf) pair."""
        re = (iv_lo(self.val.real) + iv_hi(self.val.real)) / 2
        im = (iv_lo(self.val.imag) + iv_hi(self.val.imag)) / 2
        return re, im

    def contains_zero(self) -> bool:
        return (iv_lo(self.val.real) <= 0 <= iv_hi(self.val.real)
                and iv_lo(self.val.imag) <= 0 <= iv_hi(self.val.imag))

    def overlaps(self, other: "BallComplex") -> bool:
        return (iv_intersect(self.val.real, other.val.real) is not None
                and iv_intersect(self.val.imag, other.val.imag) is not None)

    def __repr__(self):
        re, im = self.mid()
        return f"BallComplex({mp.nstr(re, 12)} + {mp.nstr(im, 12)}j ± {mp.nstr(self.radius(), 3)})"


def ball_sum(items):
    """Sum of BallComplex values; zero ball for an empty iterable."""
    total = BallComplex.from_exact(0)
    for x in items:
        total = total + x
    return total


def euler_e_interval():
    """Certified enclosure of Euler's number at the current precision."""
    return iv.exp(iv.mpf(1))
