"""Sparse exact multivariate polynomials with degrevlex as the canonical order.

Monomials are exponent tuples; a polynomial is a dict {exponents: coefficient}
over a Field.  Everything is immutable after construction and safe to share.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .fields import Field, FieldError, QQ, PrimeField, QuadraticExtension


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DegreeError(ValueError):
    pass


def drl_key(m: tuple) -> tuple:
    """Sort key under which max() picks the degrevlex-leading monomial."""
    return (sum(m),) + tuple(-e for e in reversed(m))


def monomial_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))

def monomial_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))

def monomial_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))

def monomial_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d, in a fixed deterministic order."""
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


class MultiPoly:
    """Sparse polynomial over a fixed field; no zero coefficients are stored."""

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: Field, terms: dict | None = None, *, _clean=False):
        self.nvars = nvars
        self.field = field
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            self.terms = {m: c for m, c in terms.items() if not field.is_zero(c)}

    @classmethod
    def zero(cls, nvars, field):
        return cls(nvars, field, {}, _clean=True)

    @classmethod
    def constant(cls, nvars, field, c):
        z = (0,) * nvars
        return cls(nvars, field, {z: c})

    @classmethod
    def variable(cls, i, nvars, field):
        m = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, field, {m: field.one()}, _clean=True)

    @classmethod
    def from_int_terms(cls, nvars, field, int_terms: dict):
        return cls(nvars, field, {m: field.from_int(c) for m, c in int_terms.items()})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self) -> tuple:
        return max(self.terms, key=drl_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def __add__(self, other):
        fld = self.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.add(res.get(m, fld.zero()), c)
            if fld.is_zero(s):
                res.pop(m, None)
            else:
                res[m] = s
        return MultiPoly(self.nvars, fld, res, _clean=True)

    def __sub__(self, other):
        fld = self.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.sub(res.get(m, fld.zero()), c)
            if fld.is_zero(s):
                res.pop(m, None)
            else:
                res[m] = s
        return MultiPoly(self.nvars, fld, res, _clean=True)

    def __neg__(self):
        fld = self.field
        return MultiPoly(self.nvars, fld, {m: fld.neg(c) for m, c in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        fld = self.field
        p = fld.p
        res: dict = {}
        if p is not None:
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    res[m] = (res.get(m, 0) + c1 * c2) % p
            res = {m: c for m, c in res.items() if c}
        else:
            zero = fld.zero()
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    res[m] = fld.add(res.get(m, zero), fld.mul(c1, c2))
            res = {m: c for m, c in res.items() if not fld.is_zero(c)}
        return MultiPoly(self.nvars, fld, res, _clean=True)

    def scale(self, c):
        fld = self.field
        if fld.is_zero(c):
            return MultiPoly.zero(self.nvars, fld)
        return MultiPoly(self.nvars, fld, {m: fld.mul(c, v) for m, v in self.terms.items()}, _clean=True)

    def mul_term(self, mono: tuple, c):
        fld = self.field
        if fld.is_zero(c):
            return MultiPoly.zero(self.nvars, fld)
        return MultiPoly(
            self.nvars, fld,
            {monomial_mul(m, mono): fld.mul(c, v) for m, v in self.terms.items()},
            _clean=True,
        )

    def power(self, e: int):
        result = MultiPoly.constant(self.nvars, self.field, self.field.one())
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coefficient()))

    def coefficient_of(self, mono: tuple):
        return self.terms.get(mono, self.field.zero())

    def partial(self, i: int) -> "MultiPoly":
        fld = self.field
        res: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1:]
            dc = fld.mul(c, fld.from_int(e))
            if not fld.is_zero(dc):
                res[dm] = fld.add(res.get(dm, fld.zero()), dc) if dm in res else dc
        return MultiPoly(self.nvars, fld, res)

    def evaluate(self, coords, field: Field | None = None):
        """Evaluate at a point.  coords are elements of `field` (default: the
        polynomial's own field); coefficients are lifted when evaluating over
        the internal quadratic extension."""
        fld = field or self.field
        lift = (lambda c: fld.lift(c)) if isinstance(fld, QuadraticExtension) and fld != self.field else (lambda c: c)
        total = fld.zero()
        for m, c in self.terms.items():
            v = lift(c)
            for x, e in zip(coords, m):
                for _ in range(e):
                    v = fld.mul(v, x)
            total = fld.add(total, v)
        return total

    def substitute(self, targets: list["MultiPoly"]) -> "MultiPoly":
        """Substitute variable i -> targets[i]; targets share a common ring."""
        t0 = targets[0]
        out = MultiPoly.zero(t0.nvars, t0.field)
        for m, c in self.terms.items():
            piece = MultiPoly.constant(t0.nvars, t0.field, _convert(c, self.field, t0.field))
            for i, e in enumerate(m):
                if e:
                    piece = piece * targets[i].power(e)
            out = out + piece
        return out

    def lift_to(self, ext: QuadraticExtension) -> "MultiPoly":
        return MultiPoly(self.nvars, ext, {m: ext.lift(c) for m, c in self.terms.items()}, _clean=True)

    def normalize_content(self) -> "MultiPoly":
        """Over Q, scale to integral coefficients with content 1 and positive
        leading coefficient; over F_p, make monic.  Canonical representative
        of the scalar class."""
        if not self.terms:
            return self
        if self.field == QQ:
            from math import gcd
            num_gcd, den_lcm = 0, 1
            for c in self.terms.values():
                num_gcd = gcd(num_gcd, abs(c.numerator))
                den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
            factor = Fraction(den_lcm, num_gcd)
            if self.terms[self.leading_monomial()] < 0:
                factor = -factor
            return self.scale(factor)
        return self.monic()

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"


def _convert(c, src: Field, dst: Field):
    if src == dst:
        return c
    if isinstance(dst, QuadraticExtension) and dst.base == src:
        return dst.lift(c)
    raise FieldError(f"cannot convert coefficient between {src!r} and {dst!r}")


class HomogeneousForm:
    """A homogeneous polynomial with its degree pinned down."""

    __slots__ = ("poly", "deg")

    def __init__(self, poly: MultiPoly, degree: int | None = None):
        degs = {sum(m) for m in poly.terms}
        if len(degs) > 1:
            d1, d2 = sorted(degs)[:2]
            raise DegreeError(f"inhomogeneous polynomial: has terms of degree {d1} and {d2}")
        if not poly.terms:
            if degree is None:
                raise DegreeError("zero polynomial has no degree")
            self.deg = degree
        else:
            actual = degs.pop()
            if degree is not None and degree != actual:
                raise DegreeError(f"form has degree {actual}, expected {degree}")
            self.deg = actual
        self.poly = poly

    @property
    def nvars(self):
        return self.poly.nvars

    @property
    def field(self):
        return self.poly.field

    def is_zero(self):
        return self.poly.is_zero()

    def __eq__(self, other):
        return isinstance(other, HomogeneousForm) and self.poly == other.poly and self.deg == other.deg

    def __hash__(self):
        return hash((self.poly, self.deg))

    def __add__(self, other):
        if other.deg != self.deg:
            raise DegreeError(f"cannot add forms of degree {self.deg} and {other.deg}")
        return HomogeneousForm(self.poly + other.poly, self.deg)

    def __sub__(self, other):
        if other.deg != self.deg:
            raise DegreeError(f"cannot subtract forms of degree {self.deg} and {other.deg}")
        return HomogeneousForm(self.poly - other.poly, self.deg)

    def __neg__(self):
        return HomogeneousForm(-self.poly, self.deg)

    def __mul__(self, other):
        return HomogeneousForm(self.poly * other.poly, self.deg + other.deg)

    def scale(self, c):
        return HomogeneousForm(self.poly.scale(c), self.deg)

    def evaluate(self, coords, field=None):
        return self.poly.evaluate(coords, field)

    def partials(self) -> list["HomogeneousForm"]:
        """The gradient; Euler's identity sum(x_i * d_i f) = deg * f holds exactly."""
        d = max(self.deg - 1, 0)
        return [HomogeneousForm(self.poly.partial(i), d) for i in range(self.nvars)]

    def __repr__(self):
        return f"Form({format_poly(self.poly)}, deg={self.deg})"


class LinearChange:
    """Invertible linear substitution x_i -> sum_j m[i][j] x_j."""

    __slots__ = ("matrix", "field", "nvars")

    def __init__(self, matrix: list[list], field: Field):
        from .linalg import det as _det
        self.matrix = [list(row) for row in matrix]
        self.field = field
        self.nvars = len(matrix)
        if field.is_zero(_det(self.matrix, field)):
            raise FieldError("linear change of coordinates must be invertible")

    @classmethod
    def identity(cls, nvars, field):
        one, zero = field.one(), field.zero()
        return cls([[one if i == j else zero for j in range(nvars)] for i in range(nvars)], field)

    @classmethod
    def from_int_matrix(cls, rows, field):
        return cls([[field.from_int(c) for c in row] for row in rows], field)

    @classmethod
    def random(cls, nvars, field, rng):
        while True:
            m = [[field.random(rng) for _ in range(nvars)] for _ in range(nvars)]
            try:
                return cls(m, field)
            except FieldError:
                continue

    def then(self, other: "LinearChange") -> "LinearChange":
        """Composite change: applying the result equals applying self, then other."""
        from .linalg import mat_mul
        return LinearChange(mat_mul(self.matrix, other.matrix, self.field), self.field)

    def inverse(self) -> "LinearChange":
        from .linalg import mat_inv
        return LinearChange(mat_inv(self.matrix, self.field), self.field)

    def apply_to_point(self, coords):
        fld = self.field
        return [
            _dot(row, coords, fld)
            for row in self.matrix
        ]

    def __repr__(self):
        return f"LinearChange({self.matrix})"


def _dot(row, coords, fld):
    total = fld.zero()
    for a, b in zip(row, coords):
        total = fld.add(total, fld.mul(a, b))
    return total


def apply_change(f: HomogeneousForm, g: LinearChange) -> HomogeneousForm:
    """Substitute x_i -> sum_j g[i][j] x_j into f. Degree is preserved and
    apply_change(f, h.then(g)) == apply_change(apply_change(f, h), g)."""
    targets = [
        MultiPoly(f.nvars, f.field, {
            tuple(1 if k == j else 0 for k in range(f.nvars)): g.matrix[i][j]
            for j in range(f.nvars)
            if not f.field.is_zero(g.matrix[i][j])
        }, _clean=True)
        for i in range(f.nvars)
    ]
    return HomogeneousForm(f.poly.substitute(targets), f.deg)


# ---------------------------------------------------------------------------
# Parsing and printing.
#
# Grammar (whitespace-insensitive ASCII):
#   poly   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := coeff | var ['^' nat]
#   coeff  := nat ['/' nat]
#   var    := 'x' nat          (index < nvars)
# Juxtaposition is not multiplication: an explicit '*' is required.
# ---------------------------------------------------------------------------

def parse_poly(text: str, nvars: int, field: Field) -> MultiPoly:
    parser = _Parser(text, nvars, field)
    poly = parser.parse()
    return poly


def parse_form(text: str, nvars: int, field: Field, degree: int | None = None) -> HomogeneousForm:
    """Parse a homogeneous form. Rejects inhomogeneous input (reporting the two
    offending degrees) and the zero polynomial (which has no degree)."""
    return HomogeneousForm(parse_poly(text, nvars, field), degree)


class _Parser:
    def __init__(self, text: str, nvars: int, field: Field):
        self.text = text
        self.pos = 0
        self.nvars = nvars
        self.field = field

    def error(self, message):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def parse(self) -> MultiPoly:
        poly = MultiPoly.zero(self.nvars, self.field)
        sign = 1
        ch = self.peek()
        if ch in "+-":
            sign = -1 if ch == "-" else 1
            self.pos += 1
        while True:
            poly = poly + self.parse_term(sign)
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                self.error(f"expected '+' or '-', found {ch!r}")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return poly

    def parse_term(self, sign: int) -> MultiPoly:
        poly = MultiPoly.constant(self.nvars, self.field, self.field.from_int(sign))
        while True:
            poly = poly * self.parse_factor()
            if self.peek() == "*":
                self.pos += 1
                continue
            return poly

    def parse_factor(self) -> MultiPoly:
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            idx = self.parse_nat("variable index")
            if idx >= self.nvars:
                self.error(f"variable x{idx} out of range (nvars={self.nvars})")
            exp = 1
            if self.peek() == "^":
                self.pos += 1
                exp = self.parse_nat("exponent")
            mono = tuple(exp if j == idx else 0 for j in range(self.nvars))
            return MultiPoly(self.nvars, self.field, {mono: self.field.one()}, _clean=True)
        if ch.isdigit():
            num = self.parse_nat("coefficient")
            if self.peek() == "/":
                self.pos += 1
                den = self.parse_nat("denominator")
                if den == 0:
                    self.error("zero denominator")
                c = self.field.from_fraction(num, den)
            else:
                c = self.field.from_int(num)
            return MultiPoly.constant(self.nvars, self.field, c)
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def parse_nat(self, what) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error(f"expected {what}")
        return int(self.text[start:self.pos])


def format_monomial(m: tuple) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text: degrevlex-descending terms; parse(format(p)) == p."""
    if not p.terms:
        return "0"
    fld = p.field
    monos = sorted(p.terms, key=drl_key, reverse=True)
    out = []
    for i, m in enumerate(monos):
        c = p.terms[m]
        cs = fld.format(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        mono = format_monomial(m)
        if mono and cs == "1":
            body = mono
        elif mono:
            body = f"{cs}*{mono}"
        else:
            body = cs
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def format_form(f: HomogeneousForm) -> str:
    return format_poly(f.poly)


def all_monomials_upto(nvars: int, dmax: int):
    for d in range(dmax + 1):
        yield from monomials_of_degree(nvars, d)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    from math import comb
    return comb(n, k)


def degree_dimension(nvars: int, d: int) -> int:
    """Number of monomials of total degree d in nvars variables."""
    if d < 0:
        return 0
    return binomial(d + nvars - 1, nvars - 1)
