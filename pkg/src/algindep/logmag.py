"""Signed magnitudes represented by certified enclosures of their natural log.

A LogMagnitude carries numbers far outside floating-point range (anything
whose log fits in an mpf, whose exponent is an arbitrary Python int), e.g.
exp(-6**108).  Multiplication adds log intervals; comparison is certified and
returns None when the enclosures fail to separate.  Values small enough to be
held exactly keep an exact rational tag, which makes comparisons exact.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import iv, mp

from .balls import ivf, iv_hi, iv_lo


def _ln_fraction(x: Fraction):
    """Certified interval of ln(x) for a positive rational x."""
    if x <= 0:
        raise ValueError("logarithm of a non-positive rational")
    return iv.log(iv.mpf(x.numerator)) - iv.log(iv.mpf(x.denominator))


class LogMagnitude:
    """sign in {-1, 0, +1}; log_abs is an ivmpf enclosure of ln|x| (None iff 0)."""

    __slots__ = ("sign", "log_abs", "exact")

    def __init__(self, sign: int, log_abs, exact: Fraction | None = None):
        if sign == 0 and log_abs is not None:
            raise ValueError("zero magnitude carries no log")
        self.sign = sign
        self.log_abs = log_abs
        self.exact = exact

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_exact(cls, x) -> "LogMagnitude":
        x = Fraction(x)
        if x == 0:
            return cls(0, None, Fraction(0))
        sign = 1 if x > 0 else -1
        return cls(sign, _ln_fraction(abs(x)), x)

    @classmethod
    def from_log(cls, log_iv, sign: int = 1) -> "LogMagnitude":
        return cls(sign, log_iv)

    @classmethod
    def one(cls) -> "LogMagnitude":
        return cls.from_exact(1)

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def refreshed(self) -> "LogMagnitude":
        """Recompute the log enclosure at the current precision (exact tag only)."""
        if self.exact is not None:
            return LogMagnitude.from_exact(self.exact)
        return self

    # -- arithmetic ---------------------------------------------------------

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return LogMagnitude(0, None, Fraction(0))
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact * other.exact
        return LogMagnitude(self.sign * other.sign, self.log_abs + other.log_abs, exact)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.sign == 0:
            raise ZeroDivisionError("LogMagnitude division by zero")
        if self.sign == 0:
            return LogMagnitude(0, None, Fraction(0))
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact / other.exact
        return LogMagnitude(self.sign * other.sign, self.log_abs - other.log_abs, exact)

    def __pow__(self, n):
        """Power by an integer or Fraction exponent (positive base for fractions)."""
        if self.sign == 0:
            if n == 0:
                return LogMagnitude.from_exact(1)
            return LogMagnitude(0, None, Fraction(0))
        if isinstance(n, int):
            sign = self.sign if n % 2 else 1
            exact = None
            if self.exact is not None and abs(n) <= 1 << 14:
                exact = self.exact ** n
            return LogMagnitude(sign, self.log_abs * n, exact)
        n = Fraction(n)
        if self.sign < 0:
            raise ValueError("fractional power of a negative magnitude")
        return LogMagnitude(1, self.log_abs * ivf(n))

    def __neg__(self):
        return LogMagnitude(-self.sign, self.log_abs,
                            None if self.exact is None else -self.exact)

    def __abs__(self):
        return LogMagnitude(abs(self.sign), self.log_abs,
                            None if self.exact is None else abs(self.exact))

    # -- comparison ---------------------------------------------------------

    def compare(self, other):
        """Certified three-way comparison: -1, 0, +1, or None if undecided."""
        other = _coerce(other)
        if self.exact is not None and other.exact is not None:
            d = self.exact - other.exact
            return 0 if d == 0 else (1 if d > 0 else -1)
        if self.sign != other.sign:
            return 1 if self.sign > other.sign else -1
        if self.sign == 0:
            return 0
        a, b = self.log_abs, other.log_abs
        if iv_hi(a) < iv_lo(b):
            return -self.sign
        if iv_lo(a) > iv_hi(b):
            return self.sign
        return None

    def __le__(self, other):
        c = self.compare(other)
        if c is None:
            raise ArithmeticError("LogMagnitude comparison undecided at this precision")
        return c <= 0

    def __lt__(self, other):
        c = self.compare(other)
        if c is None:
            raise ArithmeticError("LogMagnitude comparison undecided at this precision")
        return c < 0

    def __ge__(self, other):
        return _coerce(other) <= self

    def __gt__(self, other):
        return _coerce(other) < self

    # -- reporting -----------------------------------------------------------

    def log10_interval(self):
        if self.sign == 0:
            return None
        return self.log_abs / iv.log(iv.mpf(10))

    def log10_str(self, digits: int = 20) -> str:
        """Decimal string of log10|x| (midpoint), '-inf' for zero."""
        if self.sign == 0:
            return "-inf"
        l10 = self.log10_interval()
        m = (iv_lo(l10) + iv_hi(l10)) / 2
        s = mp.nstr(m, digits)
        return s if self.sign > 0 else f"{s} (negative value)"

    def to_json(self) -> dict:
        out = {"sign": self.sign, "log10": self.log10_str()}
        if self.exact is not None:
            out["exact"] = str(self.exact)
        return out

    def __repr__(self):
        if self.exact is not None:
            return f"LogMagnitude(exact={self.exact})"
        if self.sign == 0:
            return "LogMagnitude(0)"
        return f"LogMagnitude(sign={self.sign}, log10≈{self.log10_str(8)})"


def _coerce(x):
    if isinstance(x, LogMagnitude):
        return x
    if isinstance(x, (int, Fraction)):
        return LogMagnitude.from_exact(x)
    return NotImplemented


def lm_max(items):
    """Certified maximum of LogMagnitudes; undecided pairs widen the result."""
    items = list(items)
    best = items[0]
    for x in items[1:]:
        c = x.compare(best)
        if c is None:
            # keep the wider hull of the two log intervals (both positive here)
            lo = min(iv_lo(x.log_abs), iv_lo(best.log_abs))
            hi = max(iv_hi(x.log_abs), iv_hi(best.log_abs))
            best = LogMagnitude(max(x.sign, best.sign), iv.mpf([lo, hi]))
        elif c > 0:
            best = x
    return best


def lm_from_abs_interval(x_iv) -> LogMagnitude:
    """LogMagnitude of a positive quantity given by an ivmpf enclosure."""
    if iv_lo(x_iv) <= 0:
        raise ValueError("enclosure must be strictly positive")
    return LogMagnitude(1, iv.log(x_iv))
