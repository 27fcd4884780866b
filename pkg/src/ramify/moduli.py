"""Dimension counts for equiramified deformation spaces.

The building block is the count

    n(q, m, s_iota, sigma) = #{ l >= 1 : q does not divide l,
                                l / gcd(l, q) <= m * sigma,
                                l = s_iota  (mod m) },

one factor per irreducible piece of the reduced filtration.  The deepest
piece gives the lower bound for the moduli dimension, the sum over pieces the
upper bound; the sum is exact for products of irreducible pieces (reducible
case), and for abelian p-groups the exact value is the jump sum
sigma - floor(sigma/p).  Conductors sigma are exact rationals throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from .errors import DomainError
from .gf import prime_factors
from .ramfilt import ReducedFiltration, schmid_violations


@dataclass(frozen=True)
class DimensionReport:
    n_list: tuple[int, ...]
    lower_bound: int
    upper_bound: int
    exact: int | None = None
    rule: str | None = None

    def __post_init__(self):
        if self.lower_bound > self.upper_bound:
            raise DomainError("lower bound exceeds upper bound")
        if self.exact is not None and not (
                self.lower_bound <= self.exact <= self.upper_bound):
            raise DomainError("exact dimension outside the proven bounds")

    def to_json(self):
        return {"n": list(self.n_list), "lower": self.lower_bound,
                "upper": self.upper_bound, "exact": self.exact,
                "rule": self.rule}


def _p_of(q: int) -> int:
    primes = prime_factors(q)
    if len(primes) != 1:
        raise DomainError(f"{q} is not a prime power")
    return primes[0]


def n_count(q: int, m: int, s_iota: int, sigma) -> int:
    """Exact cardinality of the moduli coordinate set, by enumeration.

    Any qualifying l has gcd(l, q) <= q/p (since q does not divide l), so
    l <= (q/p) * m * sigma bounds the search; the bound is asserted sharp by
    construction of the loop.
    """
    sigma = Fraction(sigma)
    p = _p_of(q)
    if m < 1 or m % p == 0:
        raise DomainError(f"tame degree {m} must be positive and prime to {p}")
    if not 1 <= s_iota <= m:
        raise DomainError(f"s_iota = {s_iota} outside [1, {m}]")
    if sigma <= 0:
        raise DomainError("sigma must be positive")
    bound = floor(Fraction(q, p) * m * sigma)
    count = 0
    for ell in range(1, bound + 1):
        if ell % q == 0:
            continue
        if Fraction(ell, gcd(ell, q)) > m * sigma:
            continue
        if (ell - s_iota) % m != 0:
            continue
        count += 1
    return count


def dim_abelian(p: int, factor_jumps: list[list[int]]) -> int:
    """Exact dimension for an abelian p-group: sum of sigma - floor(sigma/p).

    factor_jumps lists the ascending integral upper jumps of each cyclic
    factor; every list must satisfy the cyclic jump constraint.
    """
    total = 0
    for jumps in factor_jumps:
        bad = schmid_violations(p, jumps)
        if bad:
            raise DomainError("; ".join(bad))
        total += sum(s - s // p for s in jumps)
    return total


def dim_bounds(reduced: ReducedFiltration) -> DimensionReport:
    """Per-piece counts n_i, with bounds [n_r, sum n_i] for the dimension."""
    m = reduced.tame
    p = reduced.p
    ns = []
    for q, sigma, si in reduced.pieces:
        n = n_count(q, m, si, sigma)
        if m == 1 and q == p:
            # closed form agrees with the enumeration when the piece is Z/p
            assert n == floor(sigma) - floor(sigma / p)
        ns.append(n)
    return DimensionReport(tuple(ns), ns[-1], sum(ns))


def dim_reducible(pieces, m: int) -> int:
    """Exact dimension when the group is a product of irreducible pieces.

    pieces: iterable of (q_i, s_iota_i, sigma_i).  The upper bound of
    dim_bounds is attained, so the answer is the plain sum of counts.
    """
    return sum(n_count(q, m, si, sigma) for q, si, sigma in pieces)


def multiplicative_order(p: int, m: int) -> int:
    """ord of p in (Z/m)^*; equals [F_p(zeta_m) : F_p]."""
    if m == 1:
        return 1
    if gcd(p, m) != 1:
        raise DomainError(f"{p} and {m} are not coprime")
    c, val = 1, p % m
    while val != 1:
        val = (val * p) % m
        c += 1
    return c


def dim_ordinary(p: int, e: int, m: int) -> int:
    """Exact dimension e/c in the ordinary case, c = ord of p mod m."""
    c = multiplicative_order(p, m)
    if e < 1 or e % c != 0:
        raise DomainError(
            f"inconsistent ordinary datum: c = {c} does not divide e = {e}")
    return e // c
