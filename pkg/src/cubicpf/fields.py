"""Exact coefficient fields: the rationals and prime fields F_p, p not in {2, 3}.

Elements are plain Python values (Fraction for Q, int in [0, p) for F_p,
coefficient pairs for the internal quadratic extension), so polynomials stay
lightweight dicts.  All arithmetic is routed through the field object.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface; concrete fields define the element representation."""

    # p is None for characteristic 0; prime fields expose it so hot loops can
    # inline modular arithmetic.
    p: int | None = None

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def format(self, a) -> str:
        return str(a)

    def sqrt(self, a):
        """A square root of a, or None when a is not a square."""
        raise NotImplementedError

    def random(self, rng):
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a


class RationalField(Field):
    p = None

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, num, den):
        if den == 0:
            raise FieldError("zero denominator")
        return Fraction(num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def format(self, a):
        return str(a)

    def sqrt(self, a):
        if a < 0:
            return None
        num, den = a.numerator, a.denominator
        rn = _isqrt_exact(num)
        rd = _isqrt_exact(den)
        if rn is None or rd is None:
            return None
        return Fraction(rn, rd)

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


class PrimeField(Field):
    """F_p with elements stored as ints in [0, p).  p = 2, 3 are rejected:
    Gram symmetrization needs 1/2 and the cubic normal-form moves degenerate
    in characteristic 3."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p in (2, 3):
            raise FieldError(f"characteristic {p} is not supported")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, num, den):
        d = den % self.p
        if d == 0:
            raise FieldError(f"denominator {den} vanishes mod {self.p}")
        return num * pow(d, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise FieldError("division by zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def sqrt(self, a):
        p = self.p
        a %= p
        if a == 0:
            return 0
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        return _tonelli_shanks(a, p)

    def nonresidue(self) -> int:
        p = self.p
        for c in range(2, p):
            if pow(c, (p - 1) // 2, p) == p - 1:
                return c
        raise FieldError("no quadratic nonresidue found")  # unreachable for p > 2

    def random(self, rng):
        return rng.randrange(self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def _tonelli_shanks(a: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class QuadraticExtension(Field):
    """F_{p^2} = F_p[w]/(w^2 - eps), eps a fixed nonresidue.  Elements are
    pairs (a, b) meaning a + b*w.  Internal: used when point sampling runs out
    of rational points; not part of the public field configuration."""

    def __init__(self, base: PrimeField):
        self.base = base
        self.eps = base.nonresidue()
        self.p = None  # disable the int fast path; elements are tuples

    def zero(self):
        return (0, 0)

    def one(self):
        return (1, 0)

    def from_int(self, n):
        return (n % self.base.p, 0)

    def lift(self, a):
        """Embed an F_p element."""
        return (a % self.base.p, 0)

    def add(self, a, b):
        p = self.base.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.base.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def mul(self, a, b):
        p = self.base.p
        return (
            (a[0] * b[0] + self.eps * a[1] * b[1]) % p,
            (a[0] * b[1] + a[1] * b[0]) % p,
        )

    def neg(self, a):
        p = self.base.p
        return (-a[0] % p, -a[1] % p)

    def inv(self, a):
        p = self.base.p
        n = (a[0] * a[0] - self.eps * a[1] * a[1]) % p  # norm
        if n == 0:
            raise FieldError("division by zero")
        ninv = pow(n, -1, p)
        return (a[0] * ninv % p, -a[1] * ninv % p)

    def is_zero(self, a):
        return a == (0, 0)

    def format(self, a):
        return f"{a[0]}+{a[1]}w"

    def sqrt(self, a):
        # Scan-free: solve (x + y w)^2 = a. Rarely needed; brute force on y.
        p = self.base.p
        for y in range(p):
            rest = self.sub(a, ((self.eps * y * y) % p, 0))
            if rest[1] == 0:
                x = self.base.sqrt(rest[0])
                if x is not None and (2 * x * y) % p == a[1]:
                    return (x, y)
        return None

    def random(self, rng):
        return (rng.randrange(self.base.p), rng.randrange(self.base.p))

    def __repr__(self):
        return f"GF({self.base.p}^2)"

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and other.base == self.base

    def __hash__(self):
        return hash(("GF2", self.base.p))


QQ = RationalField()


def parse_field(text: str) -> Field:
    """CLI field syntax: 'q' for the rationals, 'p:<prime>' for F_p."""
    t = text.strip().lower()
    if t == "q":
        return QQ
    if t.startswith("p:"):
        try:
            p = int(t[2:])
        except ValueError:
            raise FieldError(f"bad field spec {text!r}") from None
        return PrimeField(p)
    raise FieldError(f"bad field spec {text!r} (expected 'q' or 'p:<prime>')")
