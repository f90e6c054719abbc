"""Classification of the singular locus of a cubic threefold in P^4:
cone apexes, linear factors, non-normal planes, double curves of first or
second type, isolated double points, and ADE analysis of hyperplane slices.
"""

from __future__ import annotations

import itertools
import random

from .fields import Field, FieldError, PrimeField, QQ, QuadraticExtension
from .ideals import (
    GradedIdeal,
    StabilizationError,
    buchberger,
    ideal_intersect,
    ideal_quotient,
    ideal_sum,
    saturate,
)
from .linalg import nullspace, rank as mat_rank, rref
from .matrices import poly_exact_div
from .points import (
    NotZeroDimensional,
    ProjPoint,
    projective_points_of_ideal,
    sample_curve_points,
    substitute_value,
)
from .poly import (
    HomogeneousForm,
    LinearChange,
    MultiPoly,
    apply_change,
    drl_key,
    monomials_of_degree,
    parse_form,
)
from .quadforms import quadric_rank


class ClassificationError(ValueError):
    pass


class UndeterminedFactorization(ClassificationError):
    """The linear-factor search was inconclusive over this field; the input
    cannot be routed safely."""


class CubicThreefold:
    def __init__(self, f: HomogeneousForm):
        if f.nvars != 5:
            raise ValueError("cubic threefold needs 5 homogeneous coordinates")
        if f.deg != 3 or f.is_zero():
            raise ValueError("defining form must be a nonzero cubic")
        self.form = f

    @property
    def field(self) -> Field:
        return self.form.field

    @classmethod
    def parse(cls, text: str, field: Field) -> "CubicThreefold":
        return cls(parse_form(text, 5, field, degree=3))

    def __repr__(self):
        from .poly import format_poly
        return f"CubicThreefold({format_poly(self.form.poly)})"


class TangentConeData:
    """F, moved so the point is [1:0:...:0], reads X0*q + c with q, c free of
    X0; the rank of q stratifies the double point."""

    __slots__ = ("point", "q", "c", "rank", "change")

    def __init__(self, point, q, c, rank, change):
        self.point = point
        self.q = q
        self.c = c
        self.rank = rank
        self.change = change

    def is_triple_point(self) -> bool:
        return self.q.is_zero()


DOUBLE_POINT_LABELS = {4: "conic node", 3: "conic node", 2: "binode", 1: "unode"}


class SegreReport:
    KINDS = ("Smooth", "IsolatedDoublePoints", "DoubleCurve", "Cone", "NonNormalPlane", "NonIntegral")

    def __init__(self, kind: str, **payload):
        assert kind in self.KINDS
        self.kind = kind
        self.payload = payload

    def __getattr__(self, name):
        try:
            return self.payload[name]
        except KeyError:
            raise AttributeError(name) from None

    def __repr__(self):
        return f"SegreReport({self.kind}, {sorted(self.payload)})"


class SliceReport:
    def __init__(self, hyperplane: MultiPoly, singular_points: list, scheme_degree: int, complete: bool):
        self.hyperplane = hyperplane
        self.singular_points = singular_points  # (ProjPoint in P^3 coords, ade label, milnor)
        self.scheme_degree = scheme_degree
        self.complete = complete


# ---------------------------------------------------------------------------
# Cone detection.
# ---------------------------------------------------------------------------

def cone_apex(x: CubicThreefold):
    """Directions v where every second partial of F vanishes, i.e. the locus
    of multiplicity-3 points.  Second partials of a cubic are linear, so the
    apex is the kernel of a 15x5 coefficient matrix.  Returns a basis of the
    apex subspace, or None when X is not a cone."""
    f = x.form
    fld = x.field
    rows = []
    for i in range(5):
        di = f.poly.partial(i)
        for j in range(i, 5):
            dij = di.partial(j)
            row = [dij.coefficient_of(tuple(1 if t == k else 0 for t in range(5))) for k in range(5)]
            rows.append(row)
    kernel = nullspace(rows, fld, ncols=5)
    if not kernel:
        return None
    return kernel


# ---------------------------------------------------------------------------
# Linear factors.
# ---------------------------------------------------------------------------

def _linear_form(vec, nvars, field) -> MultiPoly:
    return MultiPoly(nvars, field, {
        tuple(1 if j == i else 0 for j in range(nvars)): c
        for i, c in enumerate(vec) if not field.is_zero(c)
    }, _clean=True)


def _try_divide(f: MultiPoly, l: MultiPoly):
    try:
        return poly_exact_div(f, l)
    except (ValueError, ZeroDivisionError):
        return None


def _exhaustive_linear_factor(f: MultiPoly, field: PrimeField, seed: int):
    """Certified scan of every F_p-hyperplane class (p <= 31): numpy filter on
    random on-hyperplane samples, exact division on survivors."""
    import numpy as np

    p = field.p
    rng = np.random.default_rng(seed)
    terms = list(f.terms.items())
    nv = f.nvars
    survivors = []
    for pivot in range(nv):
        tail = nv - pivot - 1
        count = p ** tail
        ls = np.zeros((count, nv), dtype=np.int64)
        ls[:, pivot] = 1
        if tail:
            grids = np.indices((p,) * tail).reshape(tail, -1).T
            ls[:, pivot + 1:] = grids
        alive = np.ones(count, dtype=bool)
        for _ in range(4):
            if not alive.any():
                break
            idx = np.nonzero(alive)[0]
            xs = rng.integers(0, p, size=(len(idx), nv), dtype=np.int64)
            # force the point onto each hyperplane: x_pivot = -sum_{j>pivot} l_j x_j
            dot = np.zeros(len(idx), dtype=np.int64)
            for j in range(pivot + 1, nv):
                dot += ls[idx, j] * xs[:, j]
            xs[:, pivot] = (-dot) % p
            vals = np.zeros(len(idx), dtype=np.int64)
            for mono, coeff in terms:
                t = np.full(len(idx), int(coeff), dtype=np.int64)
                for j, e in enumerate(mono):
                    for _ in range(e):
                        t = t * xs[:, j] % p
                vals = (vals + t) % p
            alive[idx[vals != 0]] = False
        for row in np.nonzero(alive)[0]:
            survivors.append(tuple(int(c) for c in ls[row]))
    for vec in survivors:
        l = _linear_form(vec, nv, field)
        q = _try_divide(f, l)
        if q is not None:
            return l, q
    return None


def _ternary_linear_factors(cubic: MultiPoly, field: Field, height: int = 12):
    """All projective classes of linear factors of a ternary cubic.  Exhaustive
    over F_p; bounded-height integer scan over Q."""
    out = []
    if isinstance(field, PrimeField):
        p = field.p
        candidates = []
        for pivot in range(3):
            tail = 3 - pivot - 1
            for rest in itertools.product(range(p), repeat=tail):
                candidates.append((0,) * pivot + (1,) + rest)
    else:
        from math import gcd
        seen = set()
        candidates = []
        for a, b, c in itertools.product(range(-height, height + 1), repeat=3):
            if (a, b, c) == (0, 0, 0):
                continue
            g = gcd(gcd(abs(a), abs(b)), abs(c))
            vec = (a // g, b // g, c // g)
            first = next(v for v in vec if v != 0)
            if first < 0:
                vec = tuple(-v for v in vec)
            if vec not in seen:
                seen.add(vec)
                candidates.append(vec)
    for vec in candidates:
        l = MultiPoly(3, field, {
            tuple(1 if j == i else 0 for j in range(3)): field.from_int(v)
            for i, v in enumerate(vec) if not field.is_zero(field.from_int(v))
        })
        if not l.terms:
            continue
        if _try_divide(cubic, l) is not None:
            out.append(l)
    return out


def factor_off_linear(x: CubicThreefold, seed: int = 0):
    """Search for F = l * Q.  Returns ('found', (l, Q)), ('none', None), or
    ('undetermined', None).  Exhaustive (certified) over F_p with p <= 31;
    plane-restriction gluing otherwise, which certifies 'none' whenever some
    plane restriction has no linear factor."""
    f = x.form.poly
    fld = x.field
    if isinstance(fld, PrimeField) and fld.p <= 31:
        hit = _exhaustive_linear_factor(f, fld, seed)
        if hit is None:
            return "none", None
        return "found", hit
    rng = random.Random(seed)
    attempts = 6
    plane_data = []
    for _ in range(attempts):
        mat = [[fld.random(rng) for _ in range(3)] for _ in range(5)]
        if mat_rank([list(r) for r in mat], fld) != 3:
            continue
        targets = [
            MultiPoly(3, fld, {
                tuple(1 if t == j else 0 for t in range(3)): mat[i][j]
                for j in range(3) if not fld.is_zero(mat[i][j])
            }, _clean=True)
            for i in range(5)
        ]
        restricted = f.substitute(targets)
        if restricted.is_zero():
            continue
        factors = _ternary_linear_factors(restricted, fld)
        if not factors:
            return "none", None
        plane_data.append((mat, factors))
        if len(plane_data) == 2:
            break
    if len(plane_data) < 2:
        return "undetermined", None
    (mat_a, fac_a), (mat_b, fac_b) = plane_data
    for fa in fac_a:
        for fb in fac_b:
            cand = _glue_linear(f, mat_a, fa, mat_b, fb, fld)
            if cand is not None:
                return "found", cand
    return "undetermined", None


def _glue_linear(f, mat_a, fa, mat_b, fb, fld):
    """Find l with l|plane_a ~ fa and l|plane_b ~ fb, then verify l | f."""
    def lin_coeff(form, j):
        return form.coefficient_of(tuple(1 if t == j else 0 for t in range(3)))

    rows = []
    # unknowns: l_0..l_4, lambda, mu
    for j in range(3):
        row = [mat_a[i][j] for i in range(5)] + [fld.neg(lin_coeff(fa, j)), fld.zero()]
        rows.append(row)
    for j in range(3):
        row = [mat_b[i][j] for i in range(5)] + [fld.zero(), fld.neg(lin_coeff(fb, j))]
        rows.append(row)
    kernel = nullspace(rows, fld, ncols=7)
    for vec in kernel:
        l = _linear_form(vec[:5], 5, fld)
        if not l.terms:
            continue
        q = _try_divide(f, l)
        if q is not None:
            return l, q
    return None


# ---------------------------------------------------------------------------
# Singular scheme and tangent cones.
# ---------------------------------------------------------------------------

def singular_scheme(x: CubicThreefold) -> GradedIdeal:
    """Saturated ideal of Sing(X) (the Jacobian scheme)."""
    jac = GradedIdeal([g.poly for g in x.form.partials()], 5, x.field)
    return saturate(jac)


def move_point_to_origin(point: ProjPoint, nvars: int, field: Field) -> LinearChange:
    """Invertible change whose first column is the point, so the point becomes
    [1:0:...:0] in the new coordinates."""
    cols = [list(point.coords)]
    for k in range(nvars):
        e = [field.one() if i == k else field.zero() for i in range(nvars)]
        trial = cols + [e]
        m = [[trial[c][r] for c in range(len(trial))] for r in range(nvars)]
        if mat_rank(m, field) == len(trial):
            cols.append(e)
        if len(cols) == nvars:
            break
    matrix = [[cols[c][r] for c in range(nvars)] for r in range(nvars)]
    return LinearChange(matrix, field)


def tangent_cone_at(x: CubicThreefold, point: ProjPoint) -> TangentConeData:
    fld = point.field
    form = x.form if fld == x.field else HomogeneousForm(x.form.poly.lift_to(fld), 3)
    change = move_point_to_origin(point, 5, fld)
    moved = apply_change(form, change)
    cubic_coeff = moved.poly.coefficient_of((3, 0, 0, 0, 0))
    if not fld.is_zero(cubic_coeff):
        raise ClassificationError("point does not lie on the cubic")
    q_terms, c_terms = {}, {}
    for m, c in moved.poly.terms.items():
        if m[0] == 0:
            c_terms[m] = c
        elif m[0] == 1:
            q_terms[(0,) + m[1:]] = c
        else:
            raise ClassificationError("point is not singular on the cubic")
    q = HomogeneousForm(MultiPoly(5, fld, q_terms, _clean=True), 2)
    c = HomogeneousForm(MultiPoly(5, fld, c_terms, _clean=True), 3)
    return TangentConeData(point, q, c, quadric_rank(q), change)


def double_curve_type(x: CubicThreefold, curve: GradedIdeal, seed: int = 0, samples: int = 8) -> str:
    """'first' when some sampled point of the double curve has tangent-cone
    rank 3, 'second' when all sampled ranks are <= 2.  Rank drop is closed, so
    a single rank-3 sample certifies first type; the sample count exceeds the
    degree of the rank-drop locus on the parameter line/conic for second."""
    if not isinstance(x.field, PrimeField):
        raise ClassificationError("double-curve sampling needs a prime field")
    pts = sample_curve_points([g for g in curve.generators], 5, x.field, want=samples, seed=seed)
    if len(pts) < samples:
        raise ClassificationError(
            f"only {len(pts)} curve points found (need {samples}), even over the quadratic extension"
        )
    best = 0
    for pt in pts[:samples]:
        tc = tangent_cone_at(x, pt)
        if tc.rank > 3:
            raise ClassificationError("curve point with tangent-cone rank > 3; not a double curve")
        best = max(best, tc.rank)
    return "first" if best == 3 else "second"


# ---------------------------------------------------------------------------
# Classification.
# ---------------------------------------------------------------------------

def _linear_part(ideal: GradedIdeal) -> list[MultiPoly]:
    return [g for g in ideal.groebner_basis if g.degree() == 1]


def rational_forms_vanishing(points: list[ProjPoint], degree: int, nvars: int, base: PrimeField):
    """Forms of the given degree over F_p vanishing at every point (conjugate
    conditions included for quadratic-extension points)."""
    monos = sorted(monomials_of_degree(nvars, degree), key=drl_key, reverse=True)
    rows = []
    for pt in points:
        fld = pt.field
        evals = []
        for m in monos:
            v = fld.one()
            for x, e in zip(pt.coords, m):
                for _ in range(e):
                    v = fld.mul(v, x)
            evals.append(v)
        if isinstance(fld, QuadraticExtension):
            rows.append([v[0] for v in evals])
            rows.append([v[1] for v in evals])
        else:
            rows.append(evals)
    kernel = nullspace(rows, base, ncols=len(monos)) if rows else []
    out = []
    for vec in kernel:
        terms = {m: c for m, c in zip(monos, vec) if not base.is_zero(c)}
        if terms:
            out.append(MultiPoly(nvars, base, terms, _clean=True))
    return out


def _sample_locus_points(gens: list[MultiPoly], nvars: int, field: PrimeField, codim_to_cut: int,
                         want: int, seed: int, max_trials: int = 80):
    """Points on a positive-dimensional locus, from seeded linear slices that
    cut it down to dimension zero."""
    rng = random.Random(seed)
    found: list[ProjPoint] = []
    for _ in range(max_trials):
        slices = []
        for _ in range(codim_to_cut):
            coeffs = [field.random(rng) for _ in range(nvars)]
            h = _linear_form(coeffs, nvars, field)
            if h.terms:
                slices.append(h)
        if len(slices) != codim_to_cut:
            continue
        try:
            pts, _ = projective_points_of_ideal(gens + slices, nvars, field, allow_ext=True)
        except NotZeroDimensional:
            continue
        for pt in pts:
            if pt not in found:
                found.append(pt)
        if len(found) >= want:
            break
    return found


def _points_off_curve(sing: GradedIdeal, curve: GradedIdeal, field: PrimeField):
    """Singular points away from the curve: the part of the singular scheme
    surviving saturation by the curve ideal.  Returns (points, complete,
    away_part or None)."""
    away = saturate(sing, curve)
    if away.is_unit_ideal():
        return [], True, None
    hil = away.hilbert(12)
    if hil.dimension() != 0:
        return None, False, away  # curve candidate missed a 1-dimensional piece
    pts, complete = projective_points_of_ideal(away.generators, 5, field, allow_ext=True)
    return pts, complete, away


def classify(x: CubicThreefold, seed: int = 0) -> SegreReport:
    """Dispatch order: NonIntegral, Cone, NonNormalPlane, DoubleCurve,
    IsolatedDoublePoints, Smooth."""
    status, pair = factor_off_linear(x, seed=seed)
    if status == "undetermined":
        raise UndeterminedFactorization(
            "could not certify presence or absence of a linear factor over this field"
        )
    if status == "found":
        l, q = pair
        return SegreReport("NonIntegral", linear=l, quadric=q)
    apex = cone_apex(x)
    if apex is not None:
        return SegreReport("Cone", apex=apex)
    sing = singular_scheme(x)
    if sing.is_unit_ideal():
        return SegreReport("Smooth")
    hil = sing.hilbert(12)
    dim = hil.dimension()
    if dim == 2:
        plane = _extract_plane(x, sing, seed)
        return SegreReport("NonNormalPlane", plane=plane)
    if dim == 1:
        return _classify_double_curve(x, sing, hil, seed)
    if dim == 0:
        if not isinstance(x.field, PrimeField):
            raise ClassificationError("isolated-point analysis needs a prime field")
        pts, complete = projective_points_of_ideal(sing.generators, 5, x.field, allow_ext=True)
        ranked = []
        for pt in pts:
            tc = tangent_cone_at(x, pt)
            ranked.append((pt, tc.rank))
        return SegreReport(
            "IsolatedDoublePoints",
            points=ranked,
            scheme_degree=hil.variety_degree(),
            found_all=complete,
        )
    raise ClassificationError(f"unexpected singular dimension {dim}")


def _extract_plane(x: CubicThreefold, sing: GradedIdeal, seed: int) -> GradedIdeal:
    """The plane a non-normal cubic is double along.  The singular scheme may
    be non-reduced, so the plane is interpolated from sampled points of the
    locus and then certified exactly: every partial of F must lie in the
    plane ideal (multiplicity 2 along the plane)."""
    fld = x.field
    if not isinstance(fld, PrimeField):
        raise ClassificationError("plane extraction needs a prime field")
    pts = _sample_locus_points(sing.generators, 5, fld, codim_to_cut=2, want=8, seed=seed)
    lins = rational_forms_vanishing(pts, 1, 5, fld)
    if len(lins) != 2:
        raise ClassificationError(
            f"{len(lins)} independent linear forms vanish on the singular surface; expected a plane"
        )
    plane = GradedIdeal(lins, 5, fld, saturated=True)
    for g in x.form.partials():
        if not plane.contains(g.poly):
            raise ClassificationError("candidate plane is not a double plane of the cubic")
    return plane


def _classify_double_curve(x: CubicThreefold, sing: GradedIdeal, hil, seed: int) -> SegreReport:
    """The singular scheme can carry non-reduced structure, so the reduced
    curve is interpolated from sampled points (taxonomy curve ideals are
    generated in degrees <= 2) and certified: partials of F lie in the curve
    ideal, and every curve generator is in the radical of the singular scheme
    (so no singular locus escapes, up to recorded extra points)."""
    fld = x.field
    if not isinstance(fld, PrimeField):
        raise ClassificationError("double-curve analysis needs a prime field")
    extra: list[ProjPoint] = []
    curve = None
    for attempt in range(3):
        want = 10 + 6 * attempt
        pts = _sample_locus_points(sing.generators, 5, fld, codim_to_cut=1,
                                   want=want, seed=seed + attempt)
        if len(pts) < 5:
            raise ClassificationError("could not sample enough double-curve points")
        gens = rational_forms_vanishing(pts, 1, 5, fld) + rational_forms_vanishing(pts, 2, 5, fld)
        candidate = saturate(GradedIdeal(gens, 5, fld))
        for g in x.form.partials():
            if not candidate.contains(g.poly):
                raise ClassificationError("interpolated curve is not a double curve of the cubic")
        extra, complete, _away = _points_off_curve(sing, candidate, fld)
        if extra is None:
            continue  # sampling missed a curve component; take more slices
        if not complete:
            raise ClassificationError(
                "isolated singular points beyond the quadratic extension; cannot certify the report"
            )
        curve = candidate
        break
    if curve is None:
        raise ClassificationError("could not isolate the double curve from the singular scheme")
    chil = curve.hilbert(12)
    if chil.dimension() != 1:
        raise ClassificationError("interpolated singular curve has the wrong dimension")
    deg = chil.variety_degree()
    if chil.poly_at(0) != 1:
        raise ClassificationError(
            f"double curve of degree {deg} has Hilbert constant {chil.poly_at(0)}; outside the taxonomy"
        )
    if deg == 1:
        kind = "Line"
    elif deg == 2:
        kind = _conic_kind(curve, fld)
    elif deg == 3:
        if len(_linear_part(curve)) != 1:
            raise ClassificationError("degree-3 double curve is not three concurrent lines")
        kind = "ThreeConcurrentLines"
    elif deg == 4:
        kind = _quartic_kind(curve, fld, seed)
    else:
        raise ClassificationError(f"double curve of degree {deg} is outside the taxonomy")
    ctype = double_curve_type(x, curve, seed=seed)
    return SegreReport(
        "DoubleCurve",
        curve_kind=kind,
        type=ctype,
        curve=curve,
        extra_points=extra,
    )


def _conic_kind(curve: GradedIdeal, fld: Field) -> str:
    """Irreducible plane conic versus two incident lines, by the in-plane rank
    of the conic equation."""
    lins = _linear_part(curve)
    if len(lins) != 2:
        raise ClassificationError("degree-2 double curve does not span a plane")
    quads = [g for g in curve.groebner_basis if g.degree() == 2]
    plane = GradedIdeal(lins, 5, fld, saturated=True)
    inplane = None
    for q in quads:
        if not plane.contains(q):
            inplane = q
            break
    if inplane is None:
        raise ClassificationError("conic ideal lacks an in-plane quadric")
    # Restrict to plane coordinates: rank of the conic there.
    basis = nullspace([[l.coefficient_of(tuple(1 if t == k else 0 for t in range(5))) for k in range(5)] for l in lins], fld, ncols=5)
    targets = [
        MultiPoly(3, fld, {
            tuple(1 if t == j else 0 for t in range(3)): basis[j][i]
            for j in range(3) if not fld.is_zero(basis[j][i])
        }, _clean=True)
        for i in range(5)
    ]
    restricted = HomogeneousForm(inplane.substitute(targets), 2)
    r = quadric_rank(restricted)
    return "Conic" if r == 3 else "TwoLines"


def _quartic_kind(curve: GradedIdeal, fld: PrimeField, seed: int) -> str:
    """Rational quartic versus two conics meeting at a point: on a rational
    normal quartic no four points are coplanar, while a conic component
    carries coplanar four-tuples."""
    pts = sample_curve_points(curve.generators, 5, fld, want=10, seed=seed)
    if len(pts) < 5:
        raise ClassificationError("not enough quartic-curve points to decide the kind")
    for quad in itertools.combinations(range(len(pts)), 4):
        pfields = {pts[i].field for i in quad}
        if len(pfields) > 1:
            ext = next((f for f in pfields if isinstance(f, QuadraticExtension)), None)
            if ext is None or any(not (f == ext or isinstance(f, PrimeField)) for f in pfields):
                continue
            coords = [
                [c if isinstance(c, tuple) else ext.lift(c) for c in pts[i].coords] for i in quad
            ]
            work_field = ext
        else:
            coords = [list(pts[i].coords) for i in quad]
            work_field = pfields.pop()
        if mat_rank(coords, work_field) <= 3:
            return "TwoConicsMeeting"
    return "RationalQuartic"


# ---------------------------------------------------------------------------
# Hyperplane slices and ADE labels.
# ---------------------------------------------------------------------------

def restrict_to_hyperplane(f: HomogeneousForm, h: MultiPoly):
    """Coordinates on H = V(h): columns of a 5x4 basis matrix of ker(h).
    Returns (restricted 4-variable form, basis columns)."""
    fld = f.field
    coeffs = [[h.coefficient_of(tuple(1 if t == k else 0 for t in range(5))) for k in range(5)]]
    basis = nullspace(coeffs, fld, ncols=5)
    if len(basis) != 4:
        raise ClassificationError("hyperplane form must be a nonzero linear form")
    targets = [
        MultiPoly(4, fld, {
            tuple(1 if t == j else 0 for t in range(4)): basis[j][i]
            for j in range(4) if not fld.is_zero(basis[j][i])
        }, _clean=True)
        for i in range(5)
    ]
    return HomogeneousForm(f.poly.substitute(targets), f.deg), basis


def slice_singularities(x: CubicThreefold, h: MultiPoly, seed: int = 0) -> SliceReport:
    """Singular points of the cubic surface X ∩ V(h) with Milnor numbers and
    ADE labels (tangent-cone rank 3 gives A1; rank 2 with Milnor number k
    gives A_k).  The slice must have isolated singularities."""
    fld = x.field
    if not isinstance(fld, PrimeField):
        raise ClassificationError("slice analysis needs a prime field")
    surf, _ = restrict_to_hyperplane(x.form, h)
    jac = GradedIdeal([g.poly for g in surf.partials()], 4, fld)
    sing = saturate(jac)
    if sing.is_unit_ideal():
        return SliceReport(h, [], 0, True)
    hil = sing.hilbert(12)
    if hil.dimension() != 0:
        raise ClassificationError("slice has non-isolated singularities")
    degree = hil.variety_degree()
    pts, complete = projective_points_of_ideal(sing.generators, 4, fld, allow_ext=True)
    labeled = []
    for pt in pts:
        mu = _milnor_number(surf, pt)
        r = _surface_tangent_rank(surf, pt)
        if r == 3:
            ade = "A1"
        elif r == 2:
            ade = f"A{mu}"
        else:
            ade = "other"
        labeled.append((pt, ade, mu))
    return SliceReport(h, labeled, degree, complete)


def _surface_tangent_rank(surf: HomogeneousForm, pt: ProjPoint) -> int:
    fld = pt.field
    form = surf if fld == surf.field else HomogeneousForm(surf.poly.lift_to(fld), 3)
    change = move_point_to_origin(pt, 4, fld)
    moved = apply_change(form, change)
    q_terms = {}
    for m, c in moved.poly.terms.items():
        if m[0] == 1:
            q_terms[(0,) + m[1:]] = c
        elif m[0] >= 2 and not fld.is_zero(c):
            raise ClassificationError("slice point is not singular")
    q = HomogeneousForm(MultiPoly(4, fld, q_terms, _clean=True), 2)
    return quadric_rank(q)


def _milnor_number(surf: HomogeneousForm, pt: ProjPoint) -> int:
    """Local Milnor number: dimension of the Jacobian quotient of the affine
    local equation, isolated from the other critical points by saturating the
    affine Jacobian ideal away from them."""
    fld = pt.field
    form = surf if fld == surf.field else HomogeneousForm(surf.poly.lift_to(fld), 3)
    change = move_point_to_origin(pt, 4, fld)
    moved = apply_change(form, change)
    local = substitute_value(moved.poly, 0, fld.one(), fld)  # affine chart, point at origin
    grads = [local.partial(i) for i in range(3)]
    jac = [g for g in grads if g.terms]
    if not jac:
        raise ClassificationError("degenerate critical point")
    away = _affine_saturate_away_from_origin(jac, 3, fld)
    count = _affine_quotient_dimension(away, 3, fld)
    if count is None:
        raise ClassificationError("Milnor number is not finite")
    return count


def _affine_saturate_away_from_origin(gens: list[MultiPoly], nvars: int, fld: Field):
    """(J : A^inf) where A = (J : m^inf) collects the components of J away
    from the origin; the result is the origin-primary part of J."""
    maximal = [MultiPoly.variable(i, nvars, fld) for i in range(nvars)]
    away = _affine_saturate(gens, maximal, nvars, fld)
    return _affine_saturate(gens, away, nvars, fld)


def _affine_saturate(gens, by, nvars, fld):
    current = gens
    while True:
        nxt = _affine_quotient(current, by, nvars, fld)
        if _affine_equal(current, nxt, nvars, fld):
            return current
        current = nxt


def _affine_quotient(gens, by, nvars, fld):
    result = None
    for g in by:
        if not g.terms:
            continue
        single = _affine_colon_single(gens, g, nvars, fld)
        if result is None:
            result = single
        else:
            if all(_affine_member(h * g, gens, nvars, fld) for h in result):
                continue
            result = _affine_intersect(result, single, nvars, fld)
    return result if result is not None else gens


def _affine_colon_single(gens, g, nvars, fld):
    meet = _affine_intersect(gens, [g], nvars, fld)
    return [poly_exact_div(h, g) for h in meet]


def _affine_intersect(a, b, nvars, fld):
    from .ideals import elim_key
    exts = []
    for g in a:
        exts.append({(1,) + m: c for m, c in g.terms.items()})
    for h in b:
        t = {(0,) + m: c for m, c in h.terms.items()}
        for m, c in h.terms.items():
            mm = (1,) + m
            v = fld.sub(t.get(mm, fld.zero()), c)
            if fld.is_zero(v):
                t.pop(mm, None)
            else:
                t[mm] = v
        exts.append(t)
    gb = buchberger(exts, fld, elim_key)
    out = []
    for t in gb:
        if all(m[0] == 0 for m in t):
            out.append(MultiPoly(nvars, fld, {m[1:]: c for m, c in t.items()}, _clean=True))
    return out


def _affine_member(f: MultiPoly, gens, nvars, fld) -> bool:
    from .ideals import _reduce_terms
    gb = buchberger([g.terms for g in gens], fld, drl_key)
    basis = [(max(t, key=drl_key), t[max(t, key=drl_key)], t) for t in gb]
    return not _reduce_terms(f.terms, basis, fld, drl_key)


def _affine_equal(a, b, nvars, fld) -> bool:
    return all(_affine_member(g, b, nvars, fld) for g in a) and all(
        _affine_member(g, a, nvars, fld) for g in b
    )


def _affine_quotient_dimension(gens, nvars, fld):
    from .points import _standard_monomials
    gb = buchberger([g.terms for g in gens], fld, drl_key)
    lts = [max(t, key=drl_key) for t in gb]
    std = _standard_monomials(lts, nvars)
    return None if std is None else len(std)
