"""Covers given by v^q - v = r(x) over the germ at x = 0.

The datum is the p-power degree q, a Laurent polynomial r over a coefficient
field containing F_q, the tame degree m of the base step (p not dividing m),
and for m > 1 the scalar z in F_q^* by which the order-m generator conjugates
the translation group.  Pole exponents are stored as negative powers of x;
accordingly the equivariance congruence and the conductor congruence are both
stated on pole orders (the exponent of x^(-1)).

Standard-form reduction absorbs the image of d -> d^q - d: nonnegative
exponents vanish into it, and a term c*x^(-q*l) is traded for its q-th root
at x^(-l).  Over a finite (hence perfect) coefficient field the q-th root is
already available, which is how the finite inseparable base changes of the
theory are modelled without ever enlarging the ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError
from .gf import FieldElement, degree_over_prime, p_power_exponent
from .laurent import LaurentPoly, prime_to_p_degree


@dataclass(frozen=True)
class ASCover:
    """v^q - v = r(x), with optional tame action scalar z (present iff m > 1)."""

    q: int
    r: LaurentPoly
    m: int = 1
    z: FieldElement | None = None

    def __post_init__(self):
        F = self.r.field
        b = p_power_exponent(self.q, F.p)  # q a power of char(F)
        if F.a % b != 0:
            raise DomainError(f"F_{self.q} does not embed in the coefficient field F_{F.q}")
        if self.m < 1 or self.m % F.p == 0:
            raise DomainError(f"tame degree {self.m} must be positive and prime to {F.p}")
        if self.m == 1:
            if self.z is not None:
                raise DomainError("z is only part of the datum when m > 1")
        else:
            if self.z is None:
                raise DomainError("m > 1 requires the action scalar z")
            if self.z.field != F:
                raise DomainError("z must live in the coefficient field")
            if not self.z or self.z ** self.q != self.z:
                raise DomainError("z must lie in F_q^*")
            if degree_over_prime(self.z) != b:
                raise DomainError("action not irreducible: [F_p(z):F_p] != a")

    @property
    def field(self):
        return self.r.field

    def to_json(self):
        doc = {"q": self.q, "m": self.m, "r": self.r.to_json(),
               "field": {"p": self.field.p, "a": self.field.a}}
        doc["z"] = list(self.z.coeffs) if self.z is not None else None
        return doc


def standard_form_poly(r: LaurentPoly, q: int) -> LaurentPoly:
    """Reduce r modulo the image of d -> d^q - d to its standard form.

    Drops all terms with exponent >= 0, then repeatedly replaces c*x^(-q*l)
    by c^(1/q)*x^(-l) until no exponent is divisible by q.  Terminates since
    each replacement strictly shrinks a pole; the result may be zero (the
    cover is then disconnected/trivial).
    """
    F = r.field
    p_power_exponent(q, F.p)
    terms = {e: c for e, c in r.terms.items() if e < 0}
    while True:
        bad = [e for e in terms if e % q == 0]
        if not bad:
            break
        e = bad[0]
        c = terms.pop(e)
        e2 = e // q
        root = c.qth_root(q)
        s = terms.get(e2)
        s = root if s is None else s + root
        if s:
            terms[e2] = s
        else:
            terms.pop(e2, None)
    return LaurentPoly(F, terms)


def standard_form(cover: ASCover) -> LaurentPoly:
    return standard_form_poly(cover.r, cover.q)


def conductor(cover: ASCover) -> int:
    """The unique break of the cover: prime-to-p degree of the standard form.

    Raises DomainError on a zero standard form (disconnected cover).
    """
    sf = standard_form(cover)
    if not sf:
        raise DomainError("disconnected cover, conductor undefined")
    s = prime_to_p_degree(sf)
    assert s >= 1 and s % cover.field.p != 0
    return s


def is_isomorphic(c1: ASCover, c2: ASCover) -> tuple[bool, FieldElement | None]:
    """Isomorphism test: standard forms agree up to a scalar in F_q^*.

    The witness scalar is returned when the covers are isomorphic.  The
    additive d^q - d ambiguity is absorbed by standard-form reduction, so only
    the q - 1 subfield scalars need scanning.
    """
    if c1.q != c2.q:
        raise DomainError("covers of different degree")
    if c1.field != c2.field:
        raise DomainError("covers over different coefficient fields")
    s1 = standard_form(c1)
    s2 = standard_form(c2)
    if not s1 and not s2:
        return True, c1.field.one()
    if not s1 or not s2:
        return False, None
    for zeta in c1.field.subfield_units(c1.q):
        if s1.scale(zeta) == s2:
            return True, zeta
    return False, None


def s_iota(q: int, m: int, z: FieldElement) -> int:
    """The unique s in [1, m] with zeta_m^s = z, for the canonical zeta_m.

    Verifies the two structural facts of a valid datum: gcd(m, s) equals
    m / ord(z) (the kernel size of the conjugation action) and z generates
    F_q over F_p (irreducibility of the action).
    """
    from .gf import root_of_unity

    F = z.field
    if m < 1 or m % F.p == 0:
        raise DomainError(f"tame degree {m} must be positive and prime to {F.p}")
    b = p_power_exponent(q, F.p)
    if not z:
        raise DomainError("z must be a unit")
    zeta = root_of_unity(F, m)
    s = None
    power = zeta
    for k in range(1, m + 1):
        if power == z:
            s = k
            break
        power = power * zeta
    if s is None:
        raise DomainError("ord(z) does not divide m")
    assert gcd(m, s) == m // z.multiplicative_order()
    if degree_over_prime(z) != b:
        raise DomainError("action not irreducible: [F_p(z):F_p] != a")
    return s


def check_equivariance(cover: ASCover, s_iota_value: int, strict: bool = True) -> bool:
    """True iff every pole order of r is congruent to s_iota mod m.

    With strict=True, also checks that standard-form reduction preserved the
    congruence class (true for any consistent (q, m, s_iota) datum) and raises
    DomainError when it did not.
    """
    m = cover.m
    ok = all((-e - s_iota_value) % m == 0 for e in cover.r.terms)
    if strict and ok:
        sf = standard_form(cover)
        if any((-e - s_iota_value) % m != 0 for e in sf.terms):
            raise DomainError(
                "standard-form reduction broke the exponent congruence; "
                "the (q, m, s_iota) datum is inconsistent")
    return ok


def is_connected(cover: ASCover) -> bool:
    """Connectedness for degree-p covers: the standard form is nonzero."""
    if cover.q != cover.field.p:
        raise DomainError("connectedness is only decided for q = p")
    return bool(standard_form(cover))


def modify_cover(q: int, r_phi: LaurentPoly, r_alpha: LaurentPoly, m: int,
                 sigma: Fraction) -> tuple[LaurentPoly, bool]:
    """Deform the cover equation by r_alpha and test the conductor bound.

    Returns (r_phi + r_alpha, flag) where the flag reports whether the
    degree-q cover cut out by r_alpha alone has conductor at most m*sigma,
    the criterion for the deformation to be equiramified.  A trivializable
    r_alpha (zero standard form) deforms nothing and passes vacuously.
    """
    if r_alpha.field != r_phi.field:
        raise DomainError("deformation term over a different field")
    sf = standard_form_poly(r_alpha, q)
    if not sf:
        return r_phi + r_alpha, True
    cond = prime_to_p_degree(sf)
    return r_phi + r_alpha, Fraction(cond) <= Fraction(m) * Fraction(sigma)


def cover_from_json(obj) -> ASCover:
    from .errors import SchemaError
    from .gf import field_create

    try:
        field = field_create(int(obj["field"]["p"]), int(obj["field"]["a"]))
        r = LaurentPoly.from_json(field, obj["r"])
        z = obj.get("z")
        zel = field.element(z) if z is not None else None
        return ASCover(q=int(obj["q"]), r=r, m=int(obj.get("m", 1)), z=zel)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed cover document: {exc}") from exc
