"""Matrices of polynomials: Pfaffians, sub-Pfaffian complements, and an exact
fraction-free determinant used as an independent cross-check.
"""

from __future__ import annotations

from .fields import Field
from .poly import HomogeneousForm, MultiPoly, drl_key


class MatrixShapeError(ValueError):
    pass


class PolyMatrix:
    """Rectangular grid of MultiPoly entries over one ring."""

    __slots__ = ("rows", "cols", "entries", "nvars", "field")

    def __init__(self, entries: list[list[MultiPoly]]):
        self.entries = [list(r) for r in entries]
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        first = entries[0][0]
        self.nvars = first.nvars
        self.field = first.field
        for row in entries:
            if len(row) != self.cols:
                raise MatrixShapeError("ragged matrix")
            for e in row:
                if e.nvars != self.nvars or e.field != self.field:
                    raise MatrixShapeError("mixed rings in matrix")

    def is_skew(self) -> bool:
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            if not self.entries[i][i].is_zero():
                return False
            for j in range(i + 1, self.cols):
                if self.entries[i][j] != -self.entries[j][i]:
                    return False
        return True

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def evaluate(self, coords, field=None):
        return [[e.evaluate(coords, field) for e in row] for row in self.entries]

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries


class SkewLinearMatrix(PolyMatrix):
    """Square skew-symmetric matrix whose entries are linear forms (or zero)."""

    def __init__(self, entries):
        super().__init__(entries)
        if self.rows != self.cols:
            raise MatrixShapeError("skew matrix must be square")
        for row in self.entries:
            for e in row:
                if e.terms and e.degree() != 1:
                    raise MatrixShapeError("entries must be linear forms")
        if not self.is_skew():
            raise MatrixShapeError("matrix is not skew-symmetric")

    @classmethod
    def from_upper(cls, size: int, nvars: int, field: Field, upper: dict):
        """Build from {(i, j): MultiPoly} with i < j."""
        zero = MultiPoly.zero(nvars, field)
        grid = [[zero for _ in range(size)] for _ in range(size)]
        for (i, j), p in upper.items():
            if not i < j:
                raise MatrixShapeError("upper-triangle keys require i < j")
            grid[i][j] = p
            grid[j][i] = -p
        return cls(grid)

    @classmethod
    def random(cls, size: int, nvars: int, field: Field, rng):
        upper = {}
        for i in range(size):
            for j in range(i + 1, size):
                terms = {}
                for k in range(nvars):
                    c = field.random(rng)
                    if not field.is_zero(c):
                        terms[tuple(1 if t == k else 0 for t in range(nvars))] = c
                upper[(i, j)] = MultiPoly(nvars, field, terms, _clean=True)
        return cls(upper_to_grid(size, nvars, field, upper))


def upper_to_grid(size, nvars, field, upper):
    zero = MultiPoly.zero(nvars, field)
    grid = [[zero for _ in range(size)] for _ in range(size)]
    for (i, j), p in upper.items():
        grid[i][j] = p
        grid[j][i] = -p
    return grid


def pfaffian(m: PolyMatrix) -> MultiPoly:
    """Pfaffian of an even-size skew matrix by first-row expansion, memoized
    on index subsets.  Pf of the empty matrix is 1; Pf(M)^2 = det(M)."""
    if m.rows != m.cols:
        raise MatrixShapeError("Pfaffian needs a square matrix")
    if m.rows % 2 != 0:
        raise MatrixShapeError("Pfaffian needs even size")
    if not m.is_skew():
        raise MatrixShapeError("Pfaffian needs a skew-symmetric matrix")
    one = MultiPoly.constant(m.nvars, m.field, m.field.one())
    cache: dict = {}

    def pf(indices: tuple) -> MultiPoly:
        if not indices:
            return one
        if indices in cache:
            return cache[indices]
        i0 = indices[0]
        rest = indices[1:]
        total = MultiPoly.zero(m.nvars, m.field)
        for pos, j in enumerate(rest):
            entry = m.entries[i0][j]
            if entry.is_zero():
                continue
            sub = tuple(k for k in rest if k != j)
            term = entry * pf(sub)
            total = total + term if pos % 2 == 0 else total - term
        cache[indices] = total
        return total

    return pf(tuple(range(m.rows)))


def pfaffian_complements(n: PolyMatrix) -> list[MultiPoly]:
    """Signed 4x4 sub-Pfaffians p_i = (-1)^(i+1) Pf(N with row/col i removed)
    of a 5x5 skew matrix.  For linear N these are the five quadrics whose
    bordered 6x6 Pfaffian is sum(c_i p_i)."""
    if n.rows != 5 or n.cols != 5:
        raise MatrixShapeError("complements need a 5x5 matrix")
    if not n.is_skew():
        raise MatrixShapeError("complements need a skew-symmetric matrix")
    out = []
    for i in range(5):
        keep = [k for k in range(5) if k != i]
        sub = PolyMatrix([[n.entries[a][b] for b in keep] for a in keep])
        p = pfaffian(sub)
        if i % 2 == 1:
            p = -p
        out.append(p)
    return out


def poly_exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact quotient f/g; raises if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    fld = f.field
    rem = f
    q: dict = {}
    g_lm = g.leading_monomial()
    g_lc = g.leading_coefficient()
    while rem.terms:
        lm = rem.leading_monomial()
        if not all(a >= b for a, b in zip(lm, g_lm)):
            raise ValueError("polynomial division is not exact")
        mono = tuple(a - b for a, b in zip(lm, g_lm))
        coeff = fld.div(rem.terms[lm], g_lc)
        q[mono] = coeff
        rem = rem - g.mul_term(mono, coeff)
    return MultiPoly(f.nvars, fld, q)


def det_bareiss(m: PolyMatrix) -> MultiPoly:
    """Determinant of a polynomial matrix by Bareiss fraction-free
    elimination; every division is exact.  Independent of the Pfaffian
    expansion, so the pair cross-checks Pf(M)^2 = det(M)."""
    n = m.rows
    if n != m.cols:
        raise MatrixShapeError("determinant needs a square matrix")
    fld = m.field
    one = MultiPoly.constant(m.nvars, fld, fld.one())
    a = [[m.entries[i][j] for j in range(n)] for i in range(n)]
    prev = one
    sign = False
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = None
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    swap = i
                    break
            if swap is None:
                return MultiPoly.zero(m.nvars, fld)
            a[k], a[swap] = a[swap], a[k]
            sign = not sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = poly_exact_div(num, prev)
        for i in range(k + 1, n):
            a[i][k] = MultiPoly.zero(m.nvars, fld)
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return -result if sign else result


def skew_congruence(p_const: list[list], m: SkewLinearMatrix) -> SkewLinearMatrix:
    """P^T M P for a constant matrix P (entries in the field)."""
    fld = m.field
    n = m.rows
    zero = MultiPoly.zero(m.nvars, fld)

    def scaled(poly, c):
        return poly.scale(c)

    mp = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if not fld.is_zero(p_const[k][j]):
                    acc = acc + scaled(m.entries[i][k], p_const[k][j])
            mp[i][j] = acc
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if not fld.is_zero(p_const[k][i]):
                    acc = acc + scaled(mp[k][j], p_const[k][i])
            out[i][j] = acc
    return SkewLinearMatrix(out)
