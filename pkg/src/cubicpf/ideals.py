"""Groebner machinery for homogeneous ideals: Buchberger with sugar selection
and pair pruning, division with quotients, ideal intersection / quotient /
saturation, Hilbert functions, and linear syzygies of quadric systems.

Saturation with respect to the irrelevant ideal intersects the five
single-variable saturations (each read off a permuted degrevlex basis);
module-level syzygy bases are deliberately avoided -- every syzygy the
pipeline needs is linear, so exact kernel computations in a fixed degree
suffice.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .fields import Field, QQ
from .linalg import nullspace
from .poly import (
    DegreeError,
    HomogeneousForm,
    MultiPoly,
    degree_dimension,
    drl_key,
    format_poly,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomials_of_degree,
)


# ---------------------------------------------------------------------------
# Term orders.  A key function maps an exponent tuple to a sortable tuple;
# max() under the key picks the leading monomial.
# ---------------------------------------------------------------------------

def elim_key(m: tuple) -> tuple:
    """Product order eliminating variable 0: compare its exponent first, then
    degrevlex on the remaining variables."""
    rest = m[1:]
    return (m[0], sum(rest)) + tuple(-e for e in reversed(rest))


# ---------------------------------------------------------------------------
# Raw polynomial helpers on term dicts (hot path).
# ---------------------------------------------------------------------------

def _lead(terms: dict, key) -> tuple:
    return max(terms, key=key)


def _make_canonical(terms: dict, fld: Field) -> dict:
    """Scalar-normalize: primitive integer content over Q, monic over F_p."""
    if not terms:
        return terms
    if fld is QQ or fld == QQ:
        from math import gcd
        num_gcd, den_lcm = 0, 1
        for c in terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        f = Fraction(den_lcm, num_gcd)
        return {m: c * f for m, c in terms.items()}
    lm = _lead(terms, drl_key)
    inv = fld.inv(terms[lm])
    p = fld.p
    if p is not None:
        return {m: c * inv % p for m, c in terms.items()}
    return {m: fld.mul(c, inv) for m, c in terms.items()}


def _reduce_terms(f: dict, basis: list, field: Field, key) -> dict:
    """Full remainder of f modulo basis = [(lm, lc, terms), ...].  Over Q the
    reduction is fraction-free up to a scalar (remainder is only defined up to
    scaling, callers normalize)."""
    p = field.p
    rem: dict = {}
    work = dict(f)
    while work:
        lm = max(work, key=key)
        reducer = None
        for blm, blc, bterms in basis:
            if monomial_divides(blm, lm):
                reducer = (blm, blc, bterms)
                break
        if reducer is None:
            rem[lm] = work.pop(lm)
            continue
        blm, blc, bterms = reducer
        shift = monomial_div(lm, blm)
        c = work[lm]
        if p is not None:
            factor = c * pow(blc, -1, p) % p
            for m, bc in bterms.items():
                mm = monomial_mul(m, shift)
                v = (work.get(mm, 0) - factor * bc) % p
                if v:
                    work[mm] = v
                else:
                    work.pop(mm, None)
        else:
            factor = field.div(c, blc)
            for m, bc in bterms.items():
                mm = monomial_mul(m, shift)
                v = field.sub(work.get(mm, field.zero()), field.mul(factor, bc))
                if field.is_zero(v):
                    work.pop(mm, None)
                else:
                    work[mm] = v
    return rem


def _spoly(f, g, field: Field, key):
    """S-polynomial of two (lm, lc, terms) records."""
    flm, flc, fterms = f
    glm, glc, gterms = g
    lcm = monomial_lcm(flm, glm)
    sf = monomial_div(lcm, flm)
    sg = monomial_div(lcm, glm)
    p = field.p
    out: dict = {}
    if p is not None:
        finv = pow(flc, -1, p)
        ginv = pow(glc, -1, p)
        for m, c in fterms.items():
            out[monomial_mul(m, sf)] = c * finv % p
        for m, c in gterms.items():
            mm = monomial_mul(m, sg)
            v = (out.get(mm, 0) - c * ginv) % p
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
    else:
        finv = field.inv(flc)
        ginv = field.inv(glc)
        for m, c in fterms.items():
            out[monomial_mul(m, sf)] = field.mul(c, finv)
        for m, c in gterms.items():
            mm = monomial_mul(m, sg)
            v = field.sub(out.get(mm, field.zero()), field.mul(c, ginv))
            if field.is_zero(v):
                out.pop(mm, None)
            else:
                out[mm] = v
    return out


def buchberger(generators: list[dict], field: Field, key=drl_key) -> list[dict]:
    """Reduced Groebner basis of the ideal generated by `generators` (term
    dicts) under the order `key`.  Pair selection follows the sugar strategy;
    coprime leading terms and chain-redundant pairs are pruned."""
    basis: list = []  # records (lm, lc, terms)
    sugars: list[int] = []

    def add_poly(terms: dict, sugar: int):
        terms = _make_canonical(terms, field)
        lm = max(terms, key=key)
        basis.append((lm, terms[lm], terms))
        sugars.append(sugar)
        idx = len(basis) - 1
        for j in range(idx):
            jlm = basis[j][0]
            if all(a == 0 or b == 0 for a, b in zip(jlm, lm)):
                continue  # product criterion
            lcm = monomial_lcm(jlm, lm)
            sug = max(sugars[j] + sum(monomial_div(lcm, jlm)),
                      sugar + sum(monomial_div(lcm, lm)))
            pairs[(j, idx)] = (sug, key(lcm), lcm)

    pairs: dict = {}
    seeds = [g for g in generators if g]
    seeds.sort(key=lambda t: key(max(t, key=key)))
    for g in seeds:
        red = _reduce_terms(g, basis, field, key)
        if red:
            add_poly(red, max(sum(m) for m in red))

    while pairs:
        (i, j) = min(pairs, key=lambda k: pairs[k][:2])
        sug, _, lcm = pairs.pop((i, j))
        # Chain criterion: skip when some k divides the lcm and both side
        # pairs have already been handled.
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if monomial_divides(basis[k][0], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], field, key)
        red = _reduce_terms(s, basis, field, key)
        if red:
            add_poly(red, sug)

    return _autoreduce([rec[2] for rec in basis], field, key)


def _autoreduce(polys: list[dict], field: Field, key) -> list[dict]:
    """Minimal reduced basis: no leading term divides another, every element
    fully reduced modulo the rest, scalar-canonical, sorted by leading term."""
    # Minimalize.
    recs = []
    for t in polys:
        if t:
            lm = max(t, key=key)
            recs.append((lm, t))
    recs.sort(key=lambda r: key(r[0]))
    minimal = []
    for lm, t in recs:
        if not any(monomial_divides(plm, lm) for plm, _ in minimal):
            minimal.append((lm, t))
    # Fully reduce each against the others until stable.
    changed = True
    current = [t for _, t in minimal]
    while changed:
        changed = False
        result = []
        for i, t in enumerate(current):
            others = [
                (max(u, key=key), u[max(u, key=key)], u)
                for j, u in enumerate(current)
                if j != i and u
            ]
            red = _reduce_terms(t, others, field, key)
            red = _make_canonical(red, field)
            if red != t:
                changed = True
            if red:
                result.append(red)
        current = result
    current.sort(key=lambda t: key(max(t, key=key)))
    return [_make_canonical(t, field) for t in current]


def divide_with_quotients(f: dict, basis: list[dict], field: Field, key=drl_key):
    """Multivariate division: f = sum q_i b_i + r with no term of r divisible
    by any leading term of the basis.  Plain field arithmetic, exact."""
    recs = [(max(b, key=key), b[max(b, key=key)], b) for b in basis if b]
    quots = [dict() for _ in basis]
    rem: dict = {}
    work = dict(f)
    while work:
        lm = max(work, key=key)
        for idx, (blm, blc, bterms) in enumerate(recs):
            if monomial_divides(blm, lm):
                shift = monomial_div(lm, blm)
                factor = field.div(work[lm], blc)
                q = quots[idx]
                q[shift] = field.add(q.get(shift, field.zero()), factor)
                for m, bc in bterms.items():
                    mm = monomial_mul(m, shift)
                    v = field.sub(work.get(mm, field.zero()), field.mul(factor, bc))
                    if field.is_zero(v):
                        work.pop(mm, None)
                    else:
                        work[mm] = v
                break
        else:
            rem[lm] = work.pop(lm)
    return quots, rem


# ---------------------------------------------------------------------------
# Graded ideals.
# ---------------------------------------------------------------------------

class HilbertData:
    """Degreewise quotient dimensions, the interpolated Hilbert polynomial,
    and the degree from which they agree."""

    def __init__(self, values: dict[int, int], polynomial: list[Fraction], regularity_bound: int):
        self.values = values
        self.polynomial = polynomial  # coefficients, ascending
        self.regularity_bound = regularity_bound

    def poly_at(self, m: int) -> Fraction:
        acc = Fraction(0)
        for i, c in enumerate(reversed(self.polynomial)):
            acc = acc * m + c
        return acc

    def dimension(self) -> int:
        """Projective dimension of the zero locus; -1 when empty."""
        if not self.polynomial:
            return -1
        return len(self.polynomial) - 1

    def variety_degree(self) -> int:
        """Leading coefficient times (dim!) -- the degree of the zero locus."""
        if not self.polynomial:
            return 0
        d = len(self.polynomial) - 1
        from math import factorial
        v = self.polynomial[-1] * factorial(d)
        if v.denominator != 1:
            raise ValueError("non-integral variety degree; ideal not stabilized")
        return int(v)

    def __repr__(self):
        return f"HilbertData(dim={self.dimension()}, poly={self.polynomial}, reg={self.regularity_bound})"


class StabilizationError(ValueError):
    """Hilbert values did not stabilize; retry with a larger degree bound."""


class GradedIdeal:
    """Homogeneous ideal with a cached reduced degrevlex Groebner basis."""

    def __init__(self, generators, nvars: int, field: Field, *, saturated: bool | None = None):
        gens: list[MultiPoly] = []
        for g in generators:
            p = g.poly if isinstance(g, HomogeneousForm) else g
            if not p.is_homogeneous():
                raise DegreeError("ideal generators must be homogeneous")
            if p.nvars != nvars or p.field != field:
                raise ValueError("generator ring mismatch")
            if p.terms:
                gens.append(p)
        self.generators = gens
        self.nvars = nvars
        self.field = field
        self.saturated = saturated  # True / False / None (unknown)
        self._gb: list[MultiPoly] | None = None
        self._hilbert: dict[int, HilbertData] = {}

    @property
    def groebner_basis(self) -> list[MultiPoly]:
        if self._gb is None:
            raw = buchberger([g.terms for g in self.generators], self.field, drl_key)
            self._gb = [MultiPoly(self.nvars, self.field, t, _clean=True) for t in raw]
        return self._gb

    def normal_form(self, f) -> MultiPoly:
        p = f.poly if isinstance(f, HomogeneousForm) else f
        basis = [(g.leading_monomial(), g.leading_coefficient(), g.terms) for g in self.groebner_basis]
        red = _reduce_terms(p.terms, basis, self.field, drl_key)
        return MultiPoly(self.nvars, self.field, red, _clean=True)

    def normal_form_with_quotients(self, f):
        """(quotients aligned with the Groebner basis, remainder) such that
        f = sum q_i g_i + r exactly."""
        p = f.poly if isinstance(f, HomogeneousForm) else f
        gb = self.groebner_basis
        quots, rem = divide_with_quotients(p.terms, [g.terms for g in gb], self.field, drl_key)
        return (
            [MultiPoly(self.nvars, self.field, q) for q in quots],
            MultiPoly(self.nvars, self.field, rem, _clean=True),
        )

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "GradedIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "GradedIdeal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit_ideal(self) -> bool:
        gb = self.groebner_basis
        return len(gb) == 1 and sum(gb[0].leading_monomial()) == 0

    def degree_piece_dim(self, d: int) -> int:
        """Quotient dimension in degree d, counted off the leading-term
        staircase of the Groebner basis."""
        lts = [g.leading_monomial() for g in self.groebner_basis]
        count = 0
        for m in monomials_of_degree(self.nvars, d):
            if not any(monomial_divides(lt, m) for lt in lts):
                count += 1
        return count

    def ideal_piece_dim(self, d: int) -> int:
        """Dimension of the ideal's own degree-d graded piece."""
        return degree_dimension(self.nvars, d) - self.degree_piece_dim(d)

    def hilbert(self, dmax: int = 12) -> HilbertData:
        if dmax in self._hilbert:
            return self._hilbert[dmax]
        values = {d: self.degree_piece_dim(d) for d in range(dmax + 1)}
        poly = _interpolate_tail(values, dmax)
        reg = dmax + 1
        d = dmax
        while d >= 0 and values[d] == _poly_at(poly, d):
            reg = d
            d -= 1
        data = HilbertData(values, poly, reg)
        self._hilbert[dmax] = data
        return data

    def graded_piece(self, d: int) -> list[MultiPoly]:
        """Deterministic basis of the ideal's degree-d piece (reduced via the
        staircase: multiples of Groebner leading terms, normal-formed)."""
        gb = self.groebner_basis
        seen = set()
        basis = []
        for g in gb:
            dg = g.degree()
            if dg > d:
                continue
            for shift in monomials_of_degree(self.nvars, d - dg):
                h = g.mul_term(shift, self.field.one())
                lm = h.leading_monomial()
                if lm in seen:
                    continue
                seen.add(lm)
                basis.append(h)
        # Row-reduce for a canonical echelon basis.
        return _echelon_polys(basis, self.nvars, self.field, d)

    def with_saturated_flag(self, flag: bool) -> "GradedIdeal":
        self.saturated = flag
        return self

    def __repr__(self):
        gens = ", ".join(format_poly(g) for g in self.generators[:4])
        more = ", ..." if len(self.generators) > 4 else ""
        return f"GradedIdeal({gens}{more})"


def _echelon_polys(polys: list[MultiPoly], nvars, field, d) -> list[MultiPoly]:
    if not polys:
        return []
    monos = sorted(monomials_of_degree(nvars, d), key=drl_key, reverse=True)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for p in polys:
        row = [field.zero()] * len(monos)
        for m, c in p.terms.items():
            row[index[m]] = c
        rows.append(row)
    from .linalg import rref
    red, pivots = rref(rows, field)
    out = []
    for r in red[: len(pivots)]:
        terms = {monos[i]: c for i, c in enumerate(r) if not field.is_zero(c)}
        if terms:
            out.append(MultiPoly(nvars, field, terms, _clean=True))
    return out


def _poly_at(coeffs: list[Fraction], m: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * m + c
    return acc


def _interpolate_tail(values: dict[int, int], dmax: int) -> list[Fraction]:
    """Newton interpolation through the last five values, verified on three
    earlier degrees; trailing zero coefficients are trimmed."""
    if dmax < 7:
        raise StabilizationError("need dmax >= 7 to interpolate the Hilbert polynomial")
    xs = list(range(dmax - 4, dmax + 1))
    ys = [Fraction(values[x]) for x in xs]
    # Newton forward-difference coefficients, then expand to monomial basis.
    n = len(xs)
    coefs = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / (xs[i] - xs[i - j])
    # poly(t) = c0 + c1 (t-x0) + c2 (t-x0)(t-x1) + ...
    poly = [Fraction(0)] * n
    acc = [Fraction(1)] + [Fraction(0)] * (n - 1)  # running product
    for j in range(n):
        for k in range(n):
            poly[k] += coefs[j] * acc[k]
        # multiply acc by (t - xs[j])
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += acc[k]
        for k in range(n):
            new[k] -= acc[k] * xs[j]
        acc = new
    while poly and poly[-1] == 0:
        poly.pop()
    for check in range(dmax - 7, dmax - 4):
        if check >= 0 and Fraction(values[check]) != _poly_at(poly, check):
            raise StabilizationError(
                f"Hilbert values not stabilized by degree {dmax}; raise the degree bound"
            )
    return poly


# ---------------------------------------------------------------------------
# Intersection, quotient, saturation.
# ---------------------------------------------------------------------------

def ideal_intersect(a: GradedIdeal, b: GradedIdeal) -> GradedIdeal:
    """I ∩ J via the auxiliary-variable trick: eliminate t from t*I + (1-t)*J."""
    nv = a.nvars
    fld = a.field
    gens = []
    one = fld.one()
    for g in a.generators:
        gens.append({(1,) + m: c for m, c in g.terms.items()})
    for h in b.generators:
        t: dict = {(0,) + m: c for m, c in h.terms.items()}
        for m, c in h.terms.items():
            mm = (1,) + m
            v = fld.sub(t.get(mm, fld.zero()), c)
            if fld.is_zero(v):
                t.pop(mm, None)
            else:
                t[mm] = v
        gens.append(t)
    gb = buchberger(gens, fld, elim_key)
    kept = []
    for t in gb:
        if all(m[0] == 0 for m in t):
            kept.append(MultiPoly(nv, fld, {m[1:]: c for m, c in t.items()}, _clean=True))
    return GradedIdeal(kept, nv, fld)


def colon_single(i: GradedIdeal, f: MultiPoly) -> GradedIdeal:
    """(I : f) = (I ∩ (f)) / f."""
    from .matrices import poly_exact_div
    principal = GradedIdeal([f], i.nvars, i.field)
    meet = ideal_intersect(i, principal)
    quots = [poly_exact_div(g, f) for g in meet.generators]
    return GradedIdeal(quots, i.nvars, i.field)


def ideal_quotient(i: GradedIdeal, j: GradedIdeal) -> GradedIdeal:
    """(I : J) = intersection of (I : g) over generators g of J.  After the
    first colon the definition is checked directly (cheap normal forms) so
    the remaining intersections are skipped whenever one colon already
    answers."""
    gens = [g for g in j.generators if g.terms]
    if not gens:
        raise ValueError("colon by the zero ideal")
    result = colon_single(i, gens[0])
    for g in gens[1:]:
        if all(i.contains(h * g) for h in result.generators):
            continue
        result = ideal_intersect(result, colon_single(i, g))
    return result


def variable_saturation(i: GradedIdeal, var: int) -> GradedIdeal:
    """(I : x_var^inf), read off a degrevlex basis in coordinates permuted so
    x_var is the cheapest variable (valid for homogeneous ideals)."""
    nv = i.nvars
    fld = i.field
    last = nv - 1
    if var == last:
        perm = list(range(nv))
    else:
        perm = list(range(nv))
        perm[var], perm[last] = perm[last], perm[var]

    def permute(terms: dict) -> dict:
        return {tuple(m[perm[k]] for k in range(nv)): c for m, c in terms.items()}

    gens = [permute(g.terms) for g in i.generators]
    gb = buchberger(gens, fld, drl_key)
    out = []
    for t in gb:
        k = min(m[last] for m in t)
        if k:
            t = {m[:last] + (m[last] - k,): c for m, c in t.items()}
        out.append(MultiPoly(nv, fld, permute(t), _clean=True))
    res = GradedIdeal(out, nv, fld)
    return res


def saturate(i: GradedIdeal, j: GradedIdeal | None = None) -> GradedIdeal:
    """Saturation (I : J^inf).  Default J is the irrelevant maximal ideal, for
    which the result is the intersection of the single-variable saturations
    (components survive unless their radical contains every variable)."""
    if j is None:
        parts = [variable_saturation(i, v) for v in range(i.nvars)]
        if all(i.equals(p) for p in parts):
            i.saturated = True
            return i
        distinct: list[GradedIdeal] = []
        for p in parts:
            if not any(p.equals(q) for q in distinct):
                distinct.append(p)
        result = distinct[0]
        for q in distinct[1:]:
            if q.contains_ideal(result):
                continue  # result ⊆ q, intersection unchanged
            if result.contains_ideal(q):
                result = q
                continue
            result = ideal_intersect(result, q)
        result.saturated = True
        return result
    current = i
    while True:
        nxt = ideal_quotient(current, j)
        if current.equals(nxt):
            current.saturated = None
            return current
        current = nxt


def ideal_sum(a: GradedIdeal, b: GradedIdeal) -> GradedIdeal:
    return GradedIdeal(a.generators + b.generators, a.nvars, a.field)


def irrelevant_ideal(nvars: int, field: Field) -> GradedIdeal:
    return GradedIdeal([MultiPoly.variable(k, nvars, field) for k in range(nvars)], nvars, field)


# ---------------------------------------------------------------------------
# Linear syzygies.
# ---------------------------------------------------------------------------

def linear_syzygies(forms: list, nvars: int | None = None, field: Field | None = None):
    """Basis of the space of tuples of linear forms (l_1, ..., l_k) with
    sum l_i q_i = 0, by an exact kernel computation in the degree (d+1) piece.
    Returns a list of tuples of MultiPoly linear forms."""
    polys = [f.poly if isinstance(f, HomogeneousForm) else f for f in forms]
    nv = nvars if nvars is not None else polys[0].nvars
    fld = field if field is not None else polys[0].field
    degs = {p.degree() for p in polys if p.terms}
    if len(degs) > 1:
        raise DegreeError("syzygy input must be equi-degree")
    d = degs.pop() if degs else 2
    target = sorted(monomials_of_degree(nv, d + 1), key=drl_key, reverse=True)
    index = {m: i for i, m in enumerate(target)}
    cols = []
    k = len(polys)
    for qi in range(k):
        for v in range(nv):
            col = [fld.zero()] * len(target)
            for m, c in polys[qi].terms.items():
                mm = tuple(e + (1 if t == v else 0) for t, e in enumerate(m))
                col[index[mm]] = fld.add(col[index[mm]], c)
            cols.append(col)
    matrix = [[cols[c][r] for c in range(len(cols))] for r in range(len(target))]
    kernel = nullspace(matrix, fld, ncols=len(cols))
    out = []
    for vec in kernel:
        tup = []
        for qi in range(k):
            terms = {}
            for v in range(nv):
                c = vec[qi * nv + v]
                if not fld.is_zero(c):
                    terms[tuple(1 if t == v else 0 for t in range(nv))] = c
            tup.append(MultiPoly(nv, fld, terms, _clean=True))
        out.append(tuple(tup))
    return out
