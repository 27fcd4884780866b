"""Ramification filtrations as pure break data.

A filtration is encoded by its total order |I| = p^e * m, its tame part m,
and an ascending break list [(jump, order)], where `order` is the size of the
group at and below that jump: |I_t| = order_i for t in the half-open interval
(previous jump, this jump].  Below the first break (and at 0) the group is all
of I; above the last break it is trivial.  No abstract groups are stored --
every formula here consumes only jumps, orders and indices.

All jump arithmetic is exact rational (fractions.Fraction); jumps like 3/2
must round-trip exactly through the Herbrand transition functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .gf import prime_factors

LOWER = "lower"
UPPER = "upper"


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RamFiltration:
    total_order: int
    tame: int
    numbering: str
    breaks: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        if self.numbering not in (LOWER, UPPER):
            raise DomainError(f"numbering must be '{LOWER}' or '{UPPER}'")
        if self.total_order < 1 or self.tame < 1:
            raise DomainError("orders must be positive")
        brk = tuple((_as_fraction(j), int(o)) for j, o in self.breaks)
        object.__setattr__(self, "breaks", brk)
        prev = Fraction(0)
        prev_o = None
        for j, o in brk:
            if j <= prev:
                raise DomainError("jumps must be strictly ascending and positive")
            if o < 2:
                raise DomainError("break orders must be at least 2")
            if prev_o is not None and o >= prev_o:
                raise DomainError("break orders must strictly decrease")
            prev, prev_o = j, o

    @property
    def wild_order(self) -> int:
        if self.total_order % self.tame != 0:
            raise DomainError("tame part does not divide the total order")
        return self.total_order // self.tame

    def residue_char(self) -> int | None:
        """The prime p with wild part p^e, or None for a tame filtration."""
        w = self.wild_order
        if w == 1:
            return None
        primes = prime_factors(w)
        if len(primes) != 1:
            raise DomainError(f"wild part {w} is not a prime power")
        return primes[0]

    def order_at(self, t: Fraction) -> int:
        """|I_t| for t > 0 (|I_0| is the total order)."""
        t = _as_fraction(t)
        if t <= 0:
            return self.total_order
        for j, o in self.breaks:
            if t <= j:
                return o
        return 1

    def to_json(self):
        return {"total_order": self.total_order, "tame": self.tame,
                "numbering": self.numbering,
                "breaks": [[j.numerator, j.denominator, o]
                           for j, o in self.breaks]}

    @classmethod
    def from_json(cls, obj) -> "RamFiltration":
        from .errors import SchemaError
        try:
            breaks = tuple((Fraction(int(n), int(d)), int(o))
                           for n, d, o in obj["breaks"])
            return cls(int(obj["total_order"]), int(obj["tame"]),
                       str(obj["numbering"]), breaks)
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed filtration document: {exc}") from exc


@dataclass(frozen=True)
class ReducedFiltration:
    """Jump data refined so that every piece is an irreducible tame module.

    pieces: ascending list of (q_i, upper jump, s_iota_i) with q_i the order
    of the i-th irreducible piece.
    """

    tame: int
    pieces: tuple[tuple[int, Fraction, int], ...]

    def __post_init__(self):
        if self.tame < 1:
            raise DomainError("tame part must be positive")
        pieces = tuple((int(q), _as_fraction(s), int(si)) for q, s, si in self.pieces)
        object.__setattr__(self, "pieces", pieces)
        if not pieces:
            raise DomainError("a reduced filtration needs at least one piece")
        primes = set()
        prev = None
        for q, sigma, si in pieces:
            primes.update(prime_factors(q))
            if q < 2:
                raise DomainError("piece orders must be at least 2")
            if sigma <= 0:
                raise DomainError("jumps must be positive")
            if prev is not None and sigma < prev:
                raise DomainError("reduced jumps must ascend weakly")
            if not 1 <= si <= self.tame:
                raise DomainError("s_iota out of range [1, m]")
            prev = sigma
        if len(primes) != 1:
            raise DomainError("piece orders must be powers of one prime")

    @property
    def p(self) -> int:
        return prime_factors(self.pieces[0][0])[0]

    def to_json(self):
        return {"tame": self.tame,
                "pieces": [{"q": q, "sigma": [s.numerator, s.denominator],
                            "s_iota": si} for q, s, si in self.pieces]}

    @classmethod
    def from_json(cls, obj) -> "ReducedFiltration":
        from .errors import SchemaError
        try:
            pieces = tuple(
                (int(pc["q"]),
                 Fraction(int(pc["sigma"][0]), int(pc["sigma"][1])),
                 int(pc["s_iota"]))
                for pc in obj["pieces"])
            return cls(int(obj["tame"]), pieces)
        except (KeyError, TypeError, IndexError) as exc:
            raise SchemaError(f"malformed reduced filtration: {exc}") from exc


# ---------------------------------------------------------------------------
# Herbrand transition functions.

def herbrand_phi(filt: RamFiltration, c_tilde) -> Fraction:
    """phi(c) = integral_0^c dt / (I_0 : I_t); piecewise linear, exact."""
    if filt.numbering != LOWER:
        raise DomainError("herbrand_phi expects a lower-numbered filtration")
    c = _as_fraction(c_tilde)
    if c < 0:
        raise DomainError("negative argument to phi")
    total = Fraction(filt.total_order)
    acc = Fraction(0)
    prev = Fraction(0)
    for j, o in filt.breaks:
        if c <= j:
            return acc + (c - prev) * o / total
        acc += (j - prev) * o / total
        prev = j
    return acc + (c - prev) / total


def herbrand_psi(filt: RamFiltration, c) -> Fraction:
    """The inverse of phi: psi(c) = integral_0^c (I^0 : I^t) dt."""
    if filt.numbering != LOWER:
        raise DomainError("herbrand_psi expects a lower-numbered filtration")
    cc = _as_fraction(c)
    if cc < 0:
        raise DomainError("negative argument to psi")
    total = Fraction(filt.total_order)
    acc_sigma = Fraction(0)
    acc_j = Fraction(0)
    for j, o in filt.breaks:
        sigma = herbrand_phi(filt, j)
        if cc <= sigma:
            return acc_j + (cc - acc_sigma) * total / o
        acc_j, acc_sigma = j, sigma
    return acc_j + (cc - acc_sigma) * total


def lower_to_upper(filt: RamFiltration) -> RamFiltration:
    """Upper jumps sigma_i = phi(j_i) with the same order data."""
    if filt.numbering != LOWER:
        raise DomainError("filtration is not lower-numbered")
    breaks = tuple((herbrand_phi(filt, j), o) for j, o in filt.breaks)
    return RamFiltration(filt.total_order, filt.tame, UPPER, breaks)


def upper_to_lower(filt: RamFiltration) -> RamFiltration:
    """Exact inverse of lower_to_upper."""
    if filt.numbering != UPPER:
        raise DomainError("filtration is not upper-numbered")
    total = Fraction(filt.total_order)
    breaks = []
    prev_sigma = Fraction(0)
    prev_j = Fraction(0)
    for sigma, o in filt.breaks:
        j = prev_j + (sigma - prev_sigma) * total / o
        breaks.append((j, o))
        prev_sigma, prev_j = sigma, j
    return RamFiltration(filt.total_order, filt.tame, LOWER, tuple(breaks))


def jumps_with_multiplicity(filt: RamFiltration) -> list[Fraction]:
    """Each jump repeated log_p of its quotient order, ascending."""
    p = filt.residue_char()
    if p is None:
        return []
    out = []
    orders = [o for _, o in filt.breaks] + [1]
    for (j, o), o_next in zip(filt.breaks, orders[1:]):
        quot = o // o_next
        mult = 0
        while quot > 1:
            if quot % p != 0:
                raise DomainError("quotient at a jump is not a p-power")
            quot //= p
            mult += 1
        out.extend([j] * mult)
    return out


# ---------------------------------------------------------------------------
# Validation.

def schmid_violations(p: int, upper_jumps: list) -> list[str]:
    """The cyclic-cover constraint on consecutive upper jumps.

    Each consecutive pair must satisfy sigma' = p*sigma, or sigma' > p*sigma
    with p not dividing sigma'.  Jumps must be positive integers with the
    first one prime to p.
    """
    out = []
    js = [_as_fraction(j) for j in upper_jumps]
    for j in js:
        if j.denominator != 1 or j <= 0:
            out.append(f"upper jump {j} is not a positive integer")
    if any(j.denominator != 1 for j in js):
        return out
    ints = [int(j) for j in js]
    if ints and ints[0] % p == 0:
        out.append(f"first upper jump {ints[0]} is divisible by p")
    for a, b in zip(ints, ints[1:]):
        if b == p * a:
            continue
        if b > p * a and b % p != 0:
            continue
        out.append(f"consecutive upper jumps ({a}, {b}) violate the cyclic constraint")
    return out


def validate(filt: RamFiltration, abelian: bool = False,
             cyclic: bool = False) -> list[str]:
    """All detectable violations as strings; an empty list means valid."""
    out = []
    if filt.total_order % filt.tame != 0:
        return [f"tame part {filt.tame} does not divide |I| = {filt.total_order}"]
    wild = filt.total_order // filt.tame
    try:
        p = filt.residue_char()
    except DomainError as exc:
        return [str(exc)]
    if not filt.breaks:
        if wild != 1:
            out.append("wild part is nontrivial but there are no breaks")
        return out
    if p is None:
        out.append("breaks present but the wild part is trivial")
        return out
    if filt.breaks[0][1] != wild:
        out.append(f"first break order {filt.breaks[0][1]} != wild part {wild} "
                   "(tame quotient |I_0|/|I_1| = m fails)")
    orders = [o for _, o in filt.breaks] + [1]
    for (j, o), o_next in zip(filt.breaks, orders[1:]):
        quot, ok = o, o % o_next == 0
        if ok:
            quot = o // o_next
            while quot > 1 and quot % p == 0:
                quot //= p
        if not ok or quot != 1:
            out.append(f"quotient at jump {j} is not a positive power of {p}")
    if filt.numbering == LOWER:
        for j, _ in filt.breaks:
            if j.denominator != 1:
                out.append(f"lower jump {j} is not an integer")
            elif int(j) % p == 0:
                out.append(f"p | {j} for a lower jump")
    if abelian or cyclic:
        upper = filt if filt.numbering == UPPER else None
        if upper is None:
            try:
                upper = lower_to_upper(filt)
            except DomainError as exc:
                out.append(f"cannot convert to upper numbering: {exc}")
                return out
        for sigma, _ in upper.breaks:
            if sigma.denominator != 1:
                out.append(f"abelian filtration has non-integral upper jump {sigma}")
    if cyclic:
        try:
            if any(m2 != 1 for m2 in _multiplicities(filt, p)):
                out.append("cyclic filtration has a jump of multiplicity > 1")
            upper = filt if filt.numbering == UPPER else lower_to_upper(filt)
            sigmas = [j for j, _ in upper.breaks]
            out.extend(schmid_violations(p, sigmas))
        except DomainError:
            pass  # quotient problems were already reported above
    return out


def _multiplicities(filt: RamFiltration, p: int) -> list[int]:
    orders = [o for _, o in filt.breaks] + [1]
    out = []
    for (_, o), o_next in zip(filt.breaks, orders[1:]):
        quot, mult = o // o_next, 0
        while quot > 1:
            quot //= p
            mult += 1
        out.append(mult)
    return out


# ---------------------------------------------------------------------------
# Reduction to irreducible pieces.

def reduce(filt: RamFiltration, piece_sizes: list[list[int]],
           s_iotas: list[int] | None = None) -> ReducedFiltration:
    """Refine each jump into caller-supplied irreducible piece orders.

    piece_sizes has one list per break; the orders in the i-th list must
    multiply to the quotient order at the i-th jump.  The jump is emitted once
    per piece.  s_iotas (one per emitted piece, in order) defaults to all 1,
    which is only permitted for tame part m = 1.
    """
    if filt.numbering != UPPER:
        raise DomainError("reduce expects an upper-numbered filtration")
    p = filt.residue_char()
    if p is None:
        raise DomainError("nothing to reduce in a tame filtration")
    if len(piece_sizes) != len(filt.breaks):
        raise DomainError("need one piece list per break")
    orders = [o for _, o in filt.breaks] + [1]
    pieces = []
    for (sigma, o), o_next, sizes in zip(filt.breaks, orders[1:], piece_sizes):
        quot = o // o_next
        prod = 1
        for q in sizes:
            prod *= q
        if prod != quot or not sizes:
            raise DomainError(
                f"piece sizes {sizes} do not multiply to the quotient {quot} "
                f"at jump {sigma}")
        for q in sizes:
            pieces.append((q, sigma))
    if s_iotas is None:
        if filt.tame != 1:
            raise DomainError("s_iota values are required when m > 1")
        s_iotas = [1] * len(pieces)
    if len(s_iotas) != len(pieces):
        raise DomainError("need one s_iota per emitted piece")
    return ReducedFiltration(filt.tame,
                             tuple((q, sigma, si)
                                   for (q, sigma), si in zip(pieces, s_iotas)))


def last_piece_s_iota(filt: RamFiltration, last_piece_order: int) -> int:
    """s_iota of the deepest piece from the last lower jump: j_e / |P-bar| mod m.

    Only the last piece admits this shortcut; it requires |P|/q_r to divide
    the last lower jump.
    """
    if filt.numbering != LOWER:
        raise DomainError("expects a lower-numbered filtration")
    if not filt.breaks:
        raise DomainError("no wild breaks")
    j_e = filt.breaks[-1][0]
    if j_e.denominator != 1:
        raise DomainError("last lower jump is not an integer")
    pbar = filt.wild_order // last_piece_order
    val = Fraction(int(j_e), pbar)
    if val.denominator != 1:
        raise DomainError("last jump is not divisible by the quotient order")
    m = filt.tame
    return (int(val) - 1) % m + 1
