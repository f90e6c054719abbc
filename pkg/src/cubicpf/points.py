"""Projective points and exact zero-dimensional solving over F_p and its
quadratic extension.

Solving walks one variable at a time: the minimal polynomial of the last
coordinate in the finite quotient algebra is computed by exact linear
algebra, its roots are found by scanning the field (fields here are small by
design), and the system recurses on each root.  Points whose coordinates lie
beyond F_{p^2} are not enumerated; callers see a `complete` flag instead.
"""

from __future__ import annotations

import itertools

from .fields import Field, FieldError, PrimeField, QuadraticExtension
from .ideals import buchberger
from .linalg import rank as mat_rank, rref
from .poly import MultiPoly, drl_key, monomial_divides


class ProjPoint:
    """Point of projective space, normalized so the first nonzero coordinate
    is 1.  The field records where the coordinates live."""

    __slots__ = ("coords", "field")

    def __init__(self, coords, field: Field):
        first = None
        for c in coords:
            if not field.is_zero(c):
                first = c
                break
        if first is None:
            raise ValueError("projective point needs a nonzero coordinate")
        inv = field.inv(first)
        self.coords = tuple(field.mul(inv, c) for c in coords)
        self.field = field

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords and self.field == other.field

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"ProjPoint{self.coords}"

    def is_rational(self) -> bool:
        return not isinstance(self.field, QuadraticExtension)


def proj_points_iter(nvars: int, field: PrimeField):
    """All points of P^(nvars-1)(F_p) in a fixed order: first nonzero
    coordinate equals 1."""
    p = field.p
    for pivot in range(nvars):
        tail = nvars - pivot - 1
        for rest in itertools.product(range(p), repeat=tail):
            yield (0,) * pivot + (1,) + rest


def substitute_value(poly: MultiPoly, var: int, value, out_field: Field) -> MultiPoly:
    """Substitute x_var = value (a constant) and drop that variable."""
    fld = out_field
    lift = (lambda c: fld.lift(c)) if isinstance(fld, QuadraticExtension) and poly.field != fld else (lambda c: c)
    res: dict = {}
    for m, c in poly.terms.items():
        v = lift(c)
        e = m[var]
        for _ in range(e):
            v = fld.mul(v, value)
        mm = m[:var] + m[var + 1:]
        s = fld.add(res.get(mm, fld.zero()), v)
        if fld.is_zero(s):
            res.pop(mm, None)
        else:
            res[mm] = s
    return MultiPoly(poly.nvars - 1, fld, res, _clean=True)


def _standard_monomials(lts: list[tuple], nvars: int, cap: int = 4000):
    """Monomials outside the staircase; None when the staircase is infinite
    (some variable has no pure power among the leading terms)."""
    bound = []
    for v in range(nvars):
        b = None
        for lt in lts:
            if all(e == 0 for i, e in enumerate(lt) if i != v):
                b = lt[v] if b is None else min(b, lt[v])
        if b is None:
            return None
        bound.append(b)
    out = []
    for m in itertools.product(*[range(b) for b in bound]):
        if not any(monomial_divides(lt, m) for lt in lts):
            out.append(m)
            if len(out) > cap:
                return None
    return out


def _poly_roots(coeffs: list, field: Field, allow_ext: bool):
    """Roots (with multiplicity, by deflation) of a univariate polynomial
    given by ascending coefficients over `field`.  Returns (roots, complete)
    where roots may live in field or its quadratic extension."""
    fld = field
    cs = list(coeffs)
    while cs and fld.is_zero(cs[-1]):
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial has every root")
    roots = []

    def eval_at(c, x, f):
        acc = f.zero()
        for a in reversed(c):
            acc = f.add(f.mul(acc, x), a)
        return acc

    def deflate(c, r, f):
        # synthetic division by (y - r); ascending coefficients
        q = [f.zero()] * (len(c) - 1)
        cur = f.zero()
        for i in range(len(c) - 1, 0, -1):
            cur = c[i] if i == len(c) - 1 else f.add(c[i], f.mul(cur, r))
            q[i - 1] = cur
        rem = f.add(c[0], f.mul(cur, r))
        if not f.is_zero(rem):
            raise ArithmeticError("deflation by a non-root")
        return q

    # scan base-field roots
    changed = True
    while changed and len(cs) > 1:
        changed = False
        for cand in _field_elements(fld):
            if fld.is_zero(eval_at(cs, cand, fld)):
                roots.append((cand, fld))
                cs = deflate(cs, cand, fld)
                changed = True
                break
    if len(cs) == 1:
        return roots, True
    if not allow_ext or not isinstance(fld, PrimeField):
        return roots, False
    ext = QuadraticExtension(fld)
    ext_cs = [ext.lift(a) for a in cs]
    changed = True
    while changed and len(ext_cs) > 1:
        changed = False
        if len(ext_cs) == 3:
            # quadratic formula: faster and exact
            a, b, c = ext_cs[2], ext_cs[1], ext_cs[0]
            disc = ext.sub(ext.mul(b, b), ext.mul(ext.from_int(4), ext.mul(a, c)))
            s = ext.sqrt(disc)
            if s is None:
                return roots, False
            inv2a = ext.inv(ext.mul(ext.from_int(2), a))
            for sgn in (s, ext.neg(s)):
                r = ext.mul(ext.sub(sgn, b), inv2a)
                roots.append((r, ext))
                ext_cs = deflate(ext_cs, r, ext)
            changed = True
            continue
        for cand in _field_elements(ext):
            if ext.is_zero(eval_at(ext_cs, cand, ext)):
                roots.append((cand, ext))
                ext_cs = deflate(ext_cs, cand, ext)
                changed = True
                break
    return roots, len(ext_cs) == 1


def _field_elements(field: Field):
    if isinstance(field, PrimeField):
        return range(field.p)
    if isinstance(field, QuadraticExtension):
        p = field.base.p
        return ((a, b) for b in range(p) for a in range(p))
    raise FieldError("cannot enumerate an infinite field")


class NotZeroDimensional(ValueError):
    pass


def solve_affine(gens: list[MultiPoly], nvars: int, field: Field, allow_ext: bool):
    """All solutions of a zero-dimensional affine system with coordinates in
    `field` (or its quadratic extension when allow_ext).  Returns
    (solutions, complete); each solution is (coords tuple, field)."""
    gens = [g for g in gens if g.terms]
    if not gens:
        if nvars == 0:
            return [((), field)], True
        raise NotZeroDimensional("underdetermined system")
    gb_raw = buchberger([g.terms for g in gens], field, drl_key)
    if any(sum(max(t, key=drl_key)) == 0 for t in gb_raw):
        return [], True  # unit ideal
    if nvars == 0:
        return [((), field)], True
    lts = [max(t, key=drl_key) for t in gb_raw]
    std = _standard_monomials(lts, nvars)
    if std is None:
        raise NotZeroDimensional("system is not zero-dimensional")
    gb = [MultiPoly(nvars, field, t, _clean=True) for t in gb_raw]

    minpoly = _minimal_polynomial_of_last(gb, std, nvars, field)
    roots, complete = _poly_roots(minpoly, field, allow_ext)
    seen_roots = []
    solutions = []
    all_complete = complete
    for r, rf in roots:
        if (r, rf) in seen_roots:
            continue
        seen_roots.append((r, rf))
        sub = [substitute_value(g, nvars - 1, r, rf) for g in gens]
        subs, comp = solve_affine(sub, nvars - 1, rf, allow_ext and rf == field)
        all_complete = all_complete and comp
        for coords, cf in subs:
            if cf != rf:
                rr = cf.lift(r) if isinstance(cf, QuadraticExtension) else r
            else:
                rr = r
            solutions.append((coords + (rr,), cf))
    return solutions, all_complete


def _minimal_polynomial_of_last(gb: list[MultiPoly], std: list[tuple], nvars: int, field: Field):
    """Minimal polynomial of multiplication by the last variable on the
    quotient algebra, via incremental exact linear algebra on normal forms."""
    from .ideals import _reduce_terms

    basis = [(g.leading_monomial(), g.leading_coefficient(), g.terms) for g in gb]
    index = {m: i for i, m in enumerate(std)}
    dim = len(std)

    def nf_vector(terms: dict):
        red = _reduce_terms(terms, basis, field, drl_key)
        vec = [field.zero()] * dim
        for m, c in red.items():
            vec[index[m]] = c
        return vec

    last = tuple(0 if i != nvars - 1 else 1 for i in range(nvars))
    powers = [nf_vector({(0,) * nvars: field.one()})]
    current = {(0,) * nvars: field.one()}
    rows: list = []
    for k in range(1, dim + 2):
        current = {tuple(e + l for e, l in zip(m, last)): c for m, c in current.items()}
        current = _reduce_terms(current, basis, field, drl_key)
        powers.append([field.zero()] * dim)
        for m, c in current.items():
            powers[-1][index[m]] = c
        # test dependence of powers[0..k]
        mat = [powers[i] for i in range(k + 1)]
        from .linalg import nullspace
        ker = nullspace([[mat[r][c] for r in range(k + 1)] for c in range(dim)], field, ncols=k + 1)
        if ker:
            vec = ker[0]
            return vec
    raise NotZeroDimensional("no minimal polynomial found")


def projective_points_of_ideal(gens: list[MultiPoly], nvars: int, field: PrimeField, allow_ext: bool = True):
    """All projective points of V(gens) with coordinates in F_p (or F_{p^2}
    when allow_ext), via the standard cell decomposition; duplicates cannot
    occur.  Returns (points, complete)."""
    points = []
    complete = True
    for pivot in range(nvars):
        sub = []
        ok = True
        for g in gens:
            h = g
            for j in range(pivot):
                h = substitute_value(h, 0, field.zero(), field)
            # now variable 0 of h corresponds to x_pivot; set it to 1
            h = substitute_value(h, 0, field.one(), field)
            if h.nvars != nvars - pivot - 1:
                raise AssertionError("substitution bookkeeping")
            sub.append(h)
        sub = [s for s in sub if s.terms]
        tail = nvars - pivot - 1
        if tail == 0:
            if not sub:
                points.append(ProjPoint((0,) * pivot + (1,), field))
            continue
        if not sub:
            raise NotZeroDimensional("positive-dimensional cell")
        sols, comp = solve_affine(sub, tail, field, allow_ext)
        complete = complete and comp
        for coords, cf in sols:
            full = (0,) * pivot + (1,) + tuple(coords)
            if cf != field:
                full = tuple(cf.lift(c) if isinstance(c, int) else c for c in full)
            points.append(ProjPoint(full, cf))
    return points, complete


def sample_curve_points(gens: list[MultiPoly], nvars: int, field: PrimeField, want: int,
                        seed: int = 0, allow_ext: bool = True, max_slices: int = 60):
    """Distinct points on a positive-dimensional locus, harvested from
    hyperplane slices with seeded coefficients."""
    import random

    rng = random.Random(seed)
    found: list[ProjPoint] = []
    for trial in range(max_slices):
        coeffs = [field.random(rng) for _ in range(nvars)]
        if all(field.is_zero(c) for c in coeffs):
            continue
        h = MultiPoly(nvars, field, {
            tuple(1 if j == i else 0 for j in range(nvars)): c
            for i, c in enumerate(coeffs) if not field.is_zero(c)
        }, _clean=True)
        try:
            pts, _ = projective_points_of_ideal(gens + [h], nvars, field, allow_ext)
        except NotZeroDimensional:
            continue
        for pt in pts:
            if pt not in found:
                found.append(pt)
        if len(found) >= want:
            return found
    return found


def point_orbit_ideal(pt: ProjPoint, nvars: int, base: PrimeField) -> list[MultiPoly]:
    """Generators over F_p of the ideal of the Galois orbit of a point defined
    over F_p or F_{p^2}: all forms of degree <= 2 vanishing at the point
    (the conjugate vanishes automatically since coefficients are rational)."""
    from .poly import monomials_of_degree

    out = []
    degrees = (1, 2) if isinstance(pt.field, QuadraticExtension) else (1,)
    for d in degrees:
        monos = sorted(monomials_of_degree(nvars, d), key=drl_key, reverse=True)
        if isinstance(pt.field, QuadraticExtension):
            ext = pt.field
            rows = []
            for m in monos:
                v = ext.one()
                for x, e in zip(pt.coords, m):
                    for _ in range(e):
                        v = ext.mul(v, x)
                rows.append(v)
            # f(pt) = 0 over F_{p^2} gives two F_p-linear conditions
            mat = [[r[0] for r in rows], [r[1] for r in rows]]
            kernel_rows = _kernel_over_base(mat, base, len(monos))
        else:
            rows = []
            for m in monos:
                v = base.one()
                for x, e in zip(pt.coords, m):
                    for _ in range(e):
                        v = base.mul(v, x)
                rows.append(v)
            kernel_rows = _kernel_over_base([rows], base, len(monos))
        for vec in kernel_rows:
            terms = {m: c for m, c in zip(monos, vec) if not base.is_zero(c)}
            if terms:
                out.append(MultiPoly(nvars, base, terms, _clean=True))
    return out


def _kernel_over_base(rows, base, ncols):
    from .linalg import nullspace

    return nullspace([list(r) for r in rows], base, ncols=ncols)
