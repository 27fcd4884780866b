"""Exact Laurent polynomials over a finite field.

A LaurentPoly is a finite sum of terms c * x^e with e in Z and c a nonzero
field element; poles at the germ's center are written as negative exponents.
Finite support stands in for the Laurent series of the underlying theory:
every computation here touches finitely many terms, and the nonnegative tail
is annihilated by standard-form reduction anyway.

The two operations beyond ring arithmetic are the p-power decomposition
r = sum_t (r_t)^(p^t) with p-free exponents in each r_t, and the prime-to-p
degree (the largest pole order among the r_t), which equals the conductor of
the associated degree-q cover once the equation is in standard form.
"""

from __future__ import annotations

from .errors import DomainError
from .gf import Field, FieldElement


class LaurentPoly:
    """Finite formal sum of c * x^e, exponents in Z; immutable."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        clean = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if not isinstance(c, FieldElement):
                    c = field.element(c)
                if c.field != field:
                    raise DomainError("coefficient from a different field")
                if c:
                    s = clean.get(e)
                    s = c if s is None else s + c
                    if s:
                        clean[int(e)] = s
                    else:
                        clean.pop(e, None)
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "LaurentPoly":
        return cls(field)

    @classmethod
    def monomial(cls, field: Field, exp: int, coeff=1) -> "LaurentPoly":
        return cls(field, {exp: field.element(coeff)})

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.field != self.field:
            raise DomainError("Laurent polynomials over different fields")
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            s = c if s is None else s + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LaurentPoly(self.field, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.field != self.field:
            raise DomainError("Laurent polynomials over different fields")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.field, out)

    def __rmul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers of Laurent polynomials")
        result = LaurentPoly.monomial(self.field, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: FieldElement) -> "LaurentPoly":
        if not c:
            return LaurentPoly.zero(self.field)
        return LaurentPoly(self.field, {e: co * c for e, co in self.terms.items()})

    def frobenius_power(self, t: int) -> "LaurentPoly":
        """self^(p^t), computed termwise (exact in characteristic p)."""
        pt = self.field.p ** t
        return LaurentPoly(self.field,
                           {e * pt: c ** pt for e, c in self.terms.items()})

    # -- access ----------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, tuple(sorted(
            (e, c.coeffs) for e, c in self.terms.items()))))

    def coeff(self, e: int) -> FieldElement:
        return self.terms.get(e, self.field.zero())

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def min_exponent(self) -> int:
        if not self.terms:
            raise DomainError("zero Laurent polynomial has no exponents")
        return min(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"({c!r})x^{e}" for e, c in sorted(self.terms.items())]
        return " + ".join(bits)

    def to_json(self):
        return {"terms": [[e, list(self.terms[e].coeffs)]
                          for e in sorted(self.terms)]}

    @classmethod
    def from_json(cls, field: Field, obj) -> "LaurentPoly":
        return cls(field, [(int(e), field.element(c)) for e, c in obj["terms"]])


# ---------------------------------------------------------------------------

def _p_adic_split(e: int, p: int) -> tuple[int, int]:
    # e = p^t * e0 with p not dividing e0; e != 0
    t = 0
    while e % p == 0:
        e //= p
        t += 1
    return t, e


def p_power_decompose(r: LaurentPoly) -> list[tuple[int, LaurentPoly]]:
    """Write r = sum_t (r_t)^(p^t) with every exponent of r_t prime to p.

    Canonical monomial-wise split: c x^e with e = p^t * e0 (p not dividing e0)
    contributes the p^t-th root of c times x^e0 to r_t; exponent-0 terms go to
    the t = 0 slot.  Returned ascending in t, empty slots omitted.
    """
    if not r:
        raise DomainError("cannot decompose the zero polynomial")
    p = r.field.p
    slots: dict[int, dict[int, FieldElement]] = {}
    for e, c in r.terms.items():
        if e == 0:
            t, e0 = 0, 0
        else:
            t, e0 = _p_adic_split(e, p)
        root = c
        for _ in range(t):
            root = root.pth_root()
        slots.setdefault(t, {})[e0] = root
    return [(t, LaurentPoly(r.field, slots[t])) for t in sorted(slots)]


def recompose(parts: list[tuple[int, LaurentPoly]], field: Field) -> LaurentPoly:
    """Inverse of p_power_decompose: sum of (r_t)^(p^t)."""
    out = LaurentPoly.zero(field)
    for t, rt in parts:
        out = out + rt.frobenius_power(t)
    return out


def prime_to_p_degree(r: LaurentPoly) -> int:
    """Largest pole order among the p-free pieces r_t of r.

    Positive for pole-type r, zero for constants, negative when every piece
    is supported in positive exponents.
    """
    parts = p_power_decompose(r)
    return max(-rt.min_exponent() for _, rt in parts)
