"""Exact dense linear algebra over a field (Fraction or number-field elements).

Determinants use fraction-free Bareiss elimination (divisions are exact, which
keeps intermediate entries from blowing up when the input is integral).  The
integer routines provide the triangular module-index computation used by the
fractional-ideal norm.
"""

from __future__ import annotations

from fractions import Fraction


def bareiss_det(rows):
    """Determinant by fraction-free Bareiss elimination; entries need exact /."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = m[i][k] * 0
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def mat_inverse(rows, one, zero):
    """Inverse by Gauss-Jordan elimination; raises ValueError if singular."""
    n = len(rows)
    m = [list(r) + [one if i == j else zero for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv_p = one / m[col][col]
        m[col] = [x * inv_p for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [r[n:] for r in m]


def mat_rank(rows) -> int:
    """Rank over the entry field by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def mat_vec(rows, vec):
    out = []
    for r in rows:
        acc = r[0] * vec[0]
        for a, b in zip(r[1:], vec[1:]):
            acc = acc + a * b
        out.append(acc)
    return out


def z_module_index(rows, d: int) -> int:
    """Index in Z^d of the module spanned by integer row vectors; 0 if not full rank.

    Euclidean row reduction to an upper-triangular form; the index is the
    absolute value of the diagonal product.
    """
    m = [list(map(int, r)) for r in rows]
    r = 0
    index = 1
    for c in range(d):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            while m[i][c]:
                q = m[r][c] // m[i][c]
                m[r] = [a - q * b for a, b in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        index *= m[r][c]
        r += 1
    return abs(index)
