"""Dense exact linear algebra over a Field: RREF, rank, kernel, solve, inverse.

Matrices are lists of row lists of field elements.  Everything is
deterministic: pivots are chosen left-to-right, top-to-bottom.
"""

from __future__ import annotations

from .fields import Field, FieldError


def mat_copy(m):
    return [list(r) for r in m]


def mat_mul(a, b, fld: Field):
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(cols):
            s = fld.zero()
            for t in range(k):
                s = fld.add(s, fld.mul(a[i][t], b[t][j]))
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v, fld: Field):
    return [_dot(row, v, fld) for row in a]


def _dot(row, v, fld):
    s = fld.zero()
    for x, y in zip(row, v):
        s = fld.add(s, fld.mul(x, y))
    return s


def rref(matrix, fld: Field):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    m = mat_copy(matrix)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if not fld.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = fld.inv(m[r][c])
        m[r] = [fld.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and not fld.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix, fld: Field) -> int:
    if not matrix:
        return 0
    _, pivots = rref(matrix, fld)
    return len(pivots)


def nullspace(matrix, fld: Field, ncols: int | None = None):
    """Basis of the right kernel, echelonized: one vector per free column,
    with a 1 in the free column and pivot entries filled in."""
    if not matrix:
        n = ncols or 0
        return [[fld.one() if i == j else fld.zero() for i in range(n)] for j in range(n)]
    cols = len(matrix[0])
    red, pivots = rref(matrix, fld)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [fld.zero()] * cols
        v[free] = fld.one()
        for r, pc in enumerate(pivots):
            v[pc] = fld.neg(red[r][free])
        basis.append(v)
    return basis


def solve(matrix, rhs, fld: Field):
    """One solution of matrix @ x = rhs, or None if inconsistent.  Free
    variables are set to zero, so the solution is the deterministic
    minimal-pivot one for the fixed column order."""
    rows = len(matrix)
    if rows == 0:
        return []
    cols = len(matrix[0])
    aug = [list(matrix[i]) + [rhs[i]] for i in range(rows)]
    red, pivots = rref(aug, fld)
    for r in range(len(red)):
        if all(fld.is_zero(red[r][c]) for c in range(cols)) and not fld.is_zero(red[r][cols]):
            return None
    x = [fld.zero()] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = red[r][cols]
    return x


def det(matrix, fld: Field):
    """Determinant by fraction-producing Gaussian elimination (field entries)."""
    n = len(matrix)
    m = mat_copy(matrix)
    total = fld.one()
    sign = False
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not fld.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            return fld.zero()
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = not sign
        total = fld.mul(total, m[c][c])
        inv = fld.inv(m[c][c])
        for i in range(c + 1, n):
            if not fld.is_zero(m[i][c]):
                f = fld.mul(inv, m[i][c])
                m[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(m[i], m[c])]
    return fld.neg(total) if sign else total


def mat_inv(matrix, fld: Field):
    n = len(matrix)
    aug = [list(matrix[i]) + [fld.one() if j == i else fld.zero() for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, fld)
    if pivots != list(range(n)):
        raise FieldError("matrix is singular")
    return [row[n:] for row in red]


def row_space_equal(rows_a, rows_b, fld: Field) -> bool:
    """Exact equality of row spans (after discarding zero rows)."""
    ra = [r for r in rows_a if any(not fld.is_zero(x) for x in r)]
    rb = [r for r in rows_b if any(not fld.is_zero(x) for x in r)]
    if not ra and not rb:
        return True
    if not ra or not rb:
        return False
    red_a, _ = rref(ra, fld)
    red_b, _ = rref(rb, fld)
    red_a = [r for r in red_a if any(not fld.is_zero(x) for x in r)]
    red_b = [r for r in red_b if any(not fld.is_zero(x) for x in r)]
    return red_a == red_b
