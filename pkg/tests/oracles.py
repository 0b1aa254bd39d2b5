"""Independent reference implementations used only by the tests.

These deliberately avoid the package's own linear algebra so that agreement
is meaningful: plain fraction Gaussian elimination and the textbook Sylvester
matrix for binary forms.
"""

from fractions import Fraction


def frac_det(rows) -> Fraction:
    """Determinant by Gaussian elimination over Fraction."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def sylvester_resultant(p, q) -> Fraction:
    """Resultant of univariate p, q (coefficient lists, constant term first)."""
    m = len(p) - 1
    n = len(q) - 1
    if m < 0 or n < 0:
        raise ValueError("empty polynomial")
    size = m + n
    rows = []
    # rows hold coefficients in descending-degree layout
    pd = [Fraction(c) for c in reversed(p)]
    qd = [Fraction(c) for c in reversed(q)]
    for i in range(n):
        rows.append([Fraction(0)] * i + pd + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qd + [Fraction(0)] * (size - n - 1 - i))
    return frac_det(rows)


def binary_form_coeffs(poly):
    """Dense univariate coefficients of a binary form evaluated at (1, z)."""
    out = [Fraction(0)] * (poly.degree + 1)
    for (e0, e1), c in poly.terms:
        out[e1] += Fraction(c) if not hasattr(c, "coords") else c.as_fraction()
    return out
