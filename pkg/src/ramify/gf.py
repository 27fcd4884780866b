"""Exact arithmetic in small finite fields F_q with q = p^a.

A field is F_p[z]/(f) for a deterministic monic irreducible modulus f of
degree a: candidates are ordered by the integer index sum(c_i * p^i) of their
non-leading coefficient vector (c_0, ..., c_{a-1}) and the first irreducible
one wins, so every run of every build picks the same modulus.  Elements are
coefficient tuples in the power basis of z.

Field orders are capped at 2^20 (desk scale; everything in this library needs
q <= 16).  Multiplication, inversion and powering go through discrete-log
tables for orders up to 2^12 and fall back to polynomial arithmetic above
that.  p-th roots are Frobenius inverses, x^(1/p) = x^(p^(a-1)), so no
factoring is ever required.
"""

from __future__ import annotations

from .errors import DomainError

ORDER_CAP = 1 << 20
_TABLE_CAP = 1 << 12


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def p_power_exponent(q: int, p: int) -> int:
    """The exponent b with q = p^b, or raise DomainError."""
    b = 0
    m = q
    while m > 1 and m % p == 0:
        m //= p
        b += 1
    if m != 1 or b == 0:
        raise DomainError(f"{q} is not a positive power of {p}")
    return b


# ---------------------------------------------------------------------------
# Polynomials over F_p as coefficient tuples (ascending degree, trimmed).

def _ptrim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, mod, p):
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _ptrim(a[:dm])


def _pdivides(d, a, p):
    # does monic d divide a over F_p?
    return not _pmod(a, d, p)


def _is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for idx in range(p ** d):
            cand = _digits(idx, p, d) + (1,)
            if _pdivides(cand, poly, p):
                return False
    return True


def _digits(n, p, width):
    out = []
    for _ in range(width):
        out.append(n % p)
        n //= p
    return tuple(out)


def _smallest_irreducible(p, a):
    for idx in range(p ** a):
        cand = _digits(idx, p, a) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------

class Field:
    """The finite field F_{p^a} with its canonical modulus."""

    __slots__ = ("p", "a", "modulus", "_redux", "_exp", "_log", "_gen")

    def __init__(self, p: int, a: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if not isinstance(a, int) or a < 1:
            raise DomainError(f"extension degree {a} must be >= 1")
        if p ** a > ORDER_CAP:
            raise DomainError(f"field order {p}^{a} exceeds the cap {ORDER_CAP}")
        self.p = p
        self.a = a
        self.modulus = _smallest_irreducible(p, a)
        # reduction table for z^k, k = a .. 2a-2
        redux = []
        cur = _pmod((0,) * a + (1,), self.modulus, p) if a > 1 else ()
        for _ in range(a - 1):
            redux.append(cur + (0,) * (a - len(cur)))
            cur = _pmod(tuple([0] + list(cur)), self.modulus, p)
        self._redux = redux
        self._exp = None
        self._log = None
        self._gen = None
        if self.q <= _TABLE_CAP:
            self._build_tables()

    @property
    def q(self) -> int:
        return self.p ** self.a

    # -- element construction ------------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        """Element from an int (prime-field shorthand) or a coefficient list."""
        if isinstance(coeffs, FieldElement):
            if coeffs.field != self:
                raise DomainError("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, int):
            c = [0] * self.a
            c[0] = coeffs % self.p
            return FieldElement(self, tuple(c))
        c = list(coeffs)
        if len(c) > self.a:
            raise DomainError(f"coefficient vector longer than degree {self.a}")
        c = [int(x) % self.p for x in c] + [0] * (self.a - len(c))
        return FieldElement(self, tuple(c))

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.a)

    def one(self) -> "FieldElement":
        return self.element(1)

    def gen(self) -> "FieldElement":
        """The class of z (a root of the modulus)."""
        c = [0] * self.a
        if self.a > 1:
            c[1] = 1
        return FieldElement(self, tuple(c))

    def from_index(self, n: int) -> "FieldElement":
        return FieldElement(self, _digits(n, self.p, self.a))

    def index_of(self, x: "FieldElement") -> int:
        n = 0
        for c in reversed(x.coeffs):
            n = n * self.p + c
        return n

    def elements(self):
        """All q elements in index order."""
        for n in range(self.q):
            yield self.from_index(n)

    # -- core arithmetic on coefficient tuples --------------------------------

    def _mul_coeffs(self, ca, cb):
        p, a = self.p, self.a
        if a == 1:
            return ((ca[0] * cb[0]) % p,)
        out = [0] * (2 * a - 1)
        for i, ai in enumerate(ca):
            if ai:
                for j, bj in enumerate(cb):
                    out[i + j] = (out[i + j] + ai * bj) % p
        res = list(out[:a])
        for k in range(a, 2 * a - 1):
            c = out[k]
            if c:
                rd = self._redux[k - a]
                for j in range(a):
                    res[j] = (res[j] + c * rd[j]) % p
        return tuple(res)

    def _build_tables(self):
        g = self._find_generator()
        exp = []
        cur = self.one().coeffs
        for _ in range(self.q - 1):
            exp.append(cur)
            cur = self._mul_coeffs(cur, g)
        self._exp = exp
        self._log = {c: i for i, c in enumerate(exp)}
        self._gen = g

    def _find_generator(self):
        """Coefficient tuple of the smallest multiplicative generator."""
        n = self.q - 1
        rads = prime_factors(n)
        for idx in range(1, self.q):
            c = _digits(idx, self.p, self.a)
            if all(self._pow_coeffs(c, n // r) != self.one().coeffs for r in rads):
                return c
        raise AssertionError("cyclic group without generator")  # unreachable

    def _pow_coeffs(self, c, k):
        result = self.one().coeffs
        base = c
        while k:
            if k & 1:
                result = self._mul_coeffs(result, base)
            base = self._mul_coeffs(base, base)
            k >>= 1
        return result

    def multiplicative_generator(self) -> "FieldElement":
        if self._gen is None:
            self._gen = self._find_generator()
        return FieldElement(self, self._gen)

    def subfield_units(self, q_sub: int) -> list["FieldElement"]:
        """The q_sub - 1 nonzero elements of the subfield F_{q_sub}."""
        b = p_power_exponent(q_sub, self.p)
        if self.a % b != 0:
            raise DomainError(f"F_{q_sub} is not a subfield of F_{self.q}")
        g = self.multiplicative_generator()
        stride = (self.q - 1) // (q_sub - 1)
        h = g ** stride
        out, cur = [], self.one()
        for _ in range(q_sub - 1):
            out.append(cur)
            cur = cur * h
        return out

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p
                and self.a == other.a and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.a, self.modulus))

    def __repr__(self):
        return f"F_{self.q}"


class FieldElement:
    """An element of a Field, immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return None
        if other.field != self.field:
            raise DomainError("elements of different fields")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple(
            (x + y) % p for x, y in zip(self.coeffs, o.coeffs)))

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple(
            (x - y) % p for x, y in zip(self.coeffs, o.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-x) % p for x in self.coeffs))

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        F = self.field
        if F._log is not None:
            if not self or not o:
                return F.zero()
            i = F._log[self.coeffs] + F._log[o.coeffs]
            return FieldElement(F, F._exp[i % (F.q - 1)])
        return FieldElement(F, F._mul_coeffs(self.coeffs, o.coeffs))

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, k: int):
        F = self.field
        if not self:
            if k < 0:
                raise DomainError("inverse of zero")
            return F.one() if k == 0 else F.zero()
        if F._log is not None:
            i = (F._log[self.coeffs] * k) % (F.q - 1)
            return FieldElement(F, F._exp[i])
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(F, F._pow_coeffs(self.coeffs, k))

    def inverse(self) -> "FieldElement":
        if not self:
            raise DomainError("inverse of zero")
        return self ** (self.field.q - 2) if self.field._log is None \
            else FieldElement(self.field,
                              self.field._exp[(-self.field._log[self.coeffs])
                                              % (self.field.q - 1)])

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def pth_root(self) -> "FieldElement":
        """Inverse Frobenius: exact since the field is perfect."""
        return self ** (self.field.p ** (self.field.a - 1))

    def qth_root(self, q: int) -> "FieldElement":
        b = p_power_exponent(q, self.field.p)
        x = self
        for _ in range(b):
            x = x.pth_root()
        return x

    def sqrt(self) -> "FieldElement":
        """Square root; unique in characteristic 2."""
        if self.field.p != 2:
            raise DomainError("sqrt is only provided in characteristic 2")
        return self.pth_root()

    def multiplicative_order(self) -> int:
        if not self:
            raise DomainError("order of zero")
        n = self.field.q - 1
        for r in prime_factors(n):
            while n % r == 0 and self ** (n // r) == self.field.one():
                n //= r
        return n

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.a, self.coeffs))

    def __repr__(self):
        if self.field.a == 1:
            return f"{self.coeffs[0]}"
        return f"{list(self.coeffs)}"

    def to_json(self):
        return {"p": self.field.p, "a": self.field.a, "coeffs": list(self.coeffs)}


# ---------------------------------------------------------------------------
# Module-level operations.

_FIELD_CACHE: dict[tuple[int, int], Field] = {}


def field_create(p: int, a: int) -> Field:
    """F_{p^a} with the canonical (smallest) irreducible modulus."""
    key = (p, a)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = Field(p, a)
    return _FIELD_CACHE[key]


def root_of_unity(field: Field, m: int) -> FieldElement:
    """An element of multiplicative order exactly m; deterministic.

    Returns g^((q-1)/m) for the smallest multiplicative generator g, so the
    m-th roots of unity chosen here form a compatible system.
    """
    if m < 1:
        raise DomainError("m must be positive")
    if (field.q - 1) % m != 0:
        raise DomainError(f"no primitive {m}-th root of unity in F_{field.q}")
    if m == 1:
        return field.one()
    return field.multiplicative_generator() ** ((field.q - 1) // m)


def degree_over_prime(x: FieldElement) -> int:
    """[F_p(x) : F_p], the smallest d >= 1 with x^(p^d) = x."""
    y = x.frobenius()
    d = 1
    while y != x:
        y = y.frobenius()
        d += 1
    return d


def element_from_json(obj) -> FieldElement:
    field = field_create(int(obj["p"]), int(obj["a"]))
    return field.element(obj["coeffs"])
