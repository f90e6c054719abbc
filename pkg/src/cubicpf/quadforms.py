"""Quadratic forms: Gram matrices, ranks, and product decompositions feeding
the 4x4 skew representation of a quadric.

Convention: the Gram matrix is symmetric with off-diagonal entries equal to
half the mixed coefficient, which is why characteristic 2 is excluded.
"""

from __future__ import annotations

from .fields import Field, FieldError
from .linalg import rank as mat_rank
from .poly import HomogeneousForm, MultiPoly


class SplitObstruction(FieldError):
    """The requested decomposition does not exist over the configured field
    (e.g. an anisotropic binary piece over Q). Retry over a different field."""


def gram_matrix(q: HomogeneousForm):
    if q.deg != 2:
        raise ValueError("Gram matrix needs a quadratic form")
    fld = q.field
    n = q.nvars
    half = fld.inv(fld.from_int(2))
    g = [[fld.zero() for _ in range(n)] for _ in range(n)]
    for m, c in q.poly.terms.items():
        idx = [i for i, e in enumerate(m) if e]
        if len(idx) == 1:
            i = idx[0]
            g[i][i] = c
        else:
            i, j = idx
            g[i][j] = fld.mul(c, half)
            g[j][i] = g[i][j]
    return g


def quadric_rank(q: HomogeneousForm) -> int:
    """Rank of the symmetric Gram matrix; zero form has rank 0."""
    if q.is_zero():
        return 0
    return mat_rank(gram_matrix(q), q.field)


def _form_from_vector(vec, nvars, field) -> MultiPoly:
    terms = {}
    for i, c in enumerate(vec):
        if not field.is_zero(c):
            terms[tuple(1 if j == i else 0 for j in range(nvars))] = c
    return MultiPoly(nvars, field, terms, _clean=True)


def diagonalize(q: HomogeneousForm):
    """Lagrange reduction: scalars d_k and independent linear forms l_k with
    q = sum d_k * l_k^2, len = rank(q)."""
    fld = q.field
    n = q.nvars
    g = gram_matrix(q)
    basis = [[fld.one() if i == j else fld.zero() for j in range(n)] for i in range(n)]
    out = []
    two = fld.from_int(2)

    def bilinear(u, v):
        s = fld.zero()
        for i in range(n):
            if fld.is_zero(u[i]):
                continue
            for j in range(n):
                s = fld.add(s, fld.mul(fld.mul(u[i], v[j]), g[i][j]))
        return s

    vectors = list(basis)
    while vectors:
        # Find a vector with nonzero self-pairing, creating one if needed.
        pivot = None
        for idx, v in enumerate(vectors):
            if not fld.is_zero(bilinear(v, v)):
                pivot = idx
                break
        if pivot is None:
            pair = None
            for a in range(len(vectors)):
                for b in range(a + 1, len(vectors)):
                    if not fld.is_zero(bilinear(vectors[a], vectors[b])):
                        pair = (a, b)
                        break
                if pair:
                    break
            if pair is None:
                break  # remaining space is in the radical
            a, b = pair
            vectors[a] = [fld.add(x, y) for x, y in zip(vectors[a], vectors[b])]
            pivot = a
        v = vectors.pop(pivot)
        d = bilinear(v, v)
        out.append((d, v))
        vectors = [
            [fld.sub(w[i], fld.mul(fld.div(bilinear(w, v), d), v[i])) for i in range(n)]
            for w in vectors
        ]
    # Convert dual-basis data to linear forms: q = sum d_k * (phi_k)^2 where
    # phi_k is the Gram pairing with v_k scaled by 1/d_k.
    forms = []
    for d, v in out:
        coeffs = []
        for i in range(n):
            s = fld.zero()
            for j in range(n):
                s = fld.add(s, fld.mul(v[j], g[j][i]))
            coeffs.append(fld.div(s, d))
        forms.append((d, _form_from_vector(coeffs, n, fld)))
    return forms


def quadric_split(q: HomogeneousForm):
    """Decompose q = sum_k a_k * b_k (+ gamma * c^2 when the rank is odd) with
    a_k, b_k, c linear.  Returns (pairs, tail) where pairs is a list of
    (a, b) MultiPoly pairs and tail is None or (gamma, c).

    Over F_p (p > 3) the count of summands is ceil(rank/2).  Over Q a rank-2
    block whose discriminant is not a square cannot be written as a single
    product; such blocks are kept as two scaled-square products and the count
    grows, which callers needing a 4x4 Pfaffian must treat as an obstruction.
    """
    fld = q.field
    if q.is_zero():
        return [], None
    diag = diagonalize(q)
    pairs = []
    squares = list(diag)  # remaining (d, l) square terms
    out_squares = []
    while len(squares) >= 2:
        (d1, l1), (d2, l2) = squares[0], squares[1]
        # d1*l1^2 + d2*l2^2 = (l1*s - t*l2)(l1*s' + t'*l2) iff -d1*d2 is a square.
        r = fld.sqrt(fld.neg(fld.mul(d1, d2)))
        if r is not None:
            # d1 l1^2 + d2 l2^2 = (d1 l1 + r l2)(l1 - (r/d1) l2)
            a = l1.scale(d1) + l2.scale(r)
            b = l1 - l2.scale(fld.div(r, d1))
            pairs.append((a, b))
            squares = squares[2:]
        else:
            out_squares.append(squares.pop(0))
    out_squares.extend(squares)
    tail = None
    leftover_pairs = []
    if out_squares:
        if len(out_squares) == 1:
            d, l = out_squares[0]
            s = fld.sqrt(d)
            if s is not None:
                tail = (fld.one(), l.scale(s))
            else:
                tail = (d, l)
        else:
            # Anisotropic leftovers (possible over Q): emit each square as a
            # degenerate product so reassembly stays exact.
            for d, l in out_squares:
                leftover_pairs.append((l.scale(d), l))
    return pairs + leftover_pairs, tail


def reassemble_split(pairs, tail, nvars, field) -> MultiPoly:
    total = MultiPoly.zero(nvars, field)
    for a, b in pairs:
        total = total + a * b
    if tail is not None:
        gamma, c = tail
        total = total + (c * c).scale(gamma)
    return total
