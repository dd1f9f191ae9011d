"""Small exact linear algebra over the rationals (plain list-of-lists matrices).

Matrices are lists of row lists with Q entries.  Everything is Gaussian
elimination with exact division; sizes here are tiny (r <= 6 for generator
matrices, a few hundred rows for layer extraction), so no cleverness is
needed beyond exactness.
"""
from __future__ import annotations

from .qarith import ONE, ZERO, Q, as_q


class SingularMatrixError(ArithmeticError):
    """Raised when an inverse or solve needs a singular matrix."""


def mat(rows):
    """Copy a matrix, coercing entries to Q."""
    return [[as_q(x) for x in row] for row in rows]


def identity_matrix(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    assert len(a[0]) == m
    out = [[ZERO] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            c = ai[k]
            if c:
                bk = b[k]
                for j in range(p):
                    if bk[j]:
                        oi[j] = oi[j] + c * bk[j]
    return out


def mat_vec(a, v):
    """Matrix times column vector.  Entries of v may be any ring (Q or Poly)."""
    return [sum((row[j] * v[j] for j in range(len(v)) if row[j]), 0) for row in a]


def vec_mat(v, a):
    """Row vector times matrix."""
    n, p = len(a), len(a[0])
    out = [0] * p
    for i in range(n):
        c = v[i]
        if c:
            row = a[i]
            for j in range(p):
                if row[j]:
                    out[j] = out[j] + c * row[j]
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def _eliminate(a):
    """Row-reduce a copy; return (echelon rows, pivot column list, det factor)."""
    m = [row[:] for row in a]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    det_sign = 1
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, nrows) if m[i][col]), None)
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
            det_sign = -det_sign
        pivots.append(col)
        inv = ONE / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(nrows):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        row += 1
        if row == nrows:
            break
    return m, pivots, det_sign


def rank(a):
    return len(_eliminate(a)[1])


def det(a):
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    d = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        d = d * m[col][col]
        inv = ONE / m[col][col]
        for i in range(col + 1, n):
            if m[i][col]:
                f = m[i][col] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return d if sign == 1 else -d


def inv(a):
    n = len(a)
    aug = [row[:] + ident_row for row, ident_row in zip(mat(a), identity_matrix(n))]
    red, pivots, _ = _eliminate(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red[:n]]


def solve(a, b):
    """Solve a x = b for square invertible a (b a column vector over Q)."""
    return mat_vec(inv(a), b)
