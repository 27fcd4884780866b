"""Finite-precision Laurent series with exact precision bookkeeping.

A TruncatedSeries holds terms with exponents strictly below `prec`; anything
at or above `prec` is unknown, so a series represents f + O(T^prec).  Every
operation computes the precision of its result from the valuations of its
inputs (product: min(p1 + v2, p2 + v1); inverse of valuation-v: p - 2v; ...),
so results never claim more accuracy than the inputs support.  Coefficients
are exact finite-field elements; there is no rounding anywhere, only honest
truncation.

ram_index records how the series variable relates to the coordinate downstairs
(T^ram_index ~ base uniformizer, up to a unit); it is bookkeeping only and is
carried through arithmetic unchanged.
"""

from __future__ import annotations

from .errors import DomainError, PrecisionError
from .gf import Field, FieldElement


class TruncatedSeries:
    __slots__ = ("field", "terms", "prec", "ram_index")

    def __init__(self, field: Field, terms, prec: int, ram_index: int = 1):
        self.field = field
        self.prec = int(prec)
        self.ram_index = ram_index
        clean = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if e < self.prec and c:
                    clean[int(e)] = c
        self.terms = clean

    @classmethod
    def zero(cls, field: Field, prec: int, ram_index: int = 1):
        return cls(field, {}, prec, ram_index)

    @classmethod
    def monomial(cls, field: Field, exp: int, prec: int, coeff=None,
                 ram_index: int = 1):
        c = field.one() if coeff is None else coeff
        return cls(field, {exp: c}, prec, ram_index)

    @classmethod
    def constant(cls, field: Field, value: FieldElement, prec: int,
                 ram_index: int = 1):
        return cls(field, {0: value}, prec, ram_index)

    # -- structure -------------------------------------------------------------

    def valuation(self) -> int | None:
        """Exact valuation, or None when the series is 0 + O(T^prec)."""
        return min(self.terms) if self.terms else None

    def val_floor(self) -> int:
        """A lower bound for the valuation, usable even for apparent zeros."""
        return min(self.terms) if self.terms else self.prec

    def leading(self) -> tuple[int, FieldElement]:
        v = self.valuation()
        if v is None:
            raise PrecisionError("valuation not determined at this precision")
        return v, self.terms[v]

    def is_zero_to_precision(self) -> bool:
        return not self.terms

    def same_terms(self, other: "TruncatedSeries") -> bool:
        return self.terms == other.terms

    def truncate(self, prec: int) -> "TruncatedSeries":
        return TruncatedSeries(self.field, self.terms, min(self.prec, prec),
                               self.ram_index)

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other):
        if other.field != self.field:
            raise DomainError("series over different fields")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        prec = min(self.prec, other.prec)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            s = c if s is None else s + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return TruncatedSeries(self.field, t, prec, self.ram_index)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TruncatedSeries(self.field,
                               {e: -c for e, c in self.terms.items()},
                               self.prec, self.ram_index)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        prec = min(self.prec + other.val_floor(), other.prec + self.val_floor())
        out: dict[int, FieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= prec:
                    continue
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return TruncatedSeries(self.field, out, prec, self.ram_index)

    def __rmul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: FieldElement) -> "TruncatedSeries":
        if not c:
            return TruncatedSeries.zero(self.field, self.prec, self.ram_index)
        return TruncatedSeries(self.field,
                               {e: co * c for e, co in self.terms.items()},
                               self.prec, self.ram_index)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by T^k (exact)."""
        return TruncatedSeries(self.field,
                               {e + k: c for e, c in self.terms.items()},
                               self.prec + k, self.ram_index)

    def inverse(self) -> "TruncatedSeries":
        """Series inverse by term recursion; needs a determined valuation.

        A unit known to relative precision R keeps R correct coefficients in
        its inverse, so the absolute precision drops from p to p - 2v.
        """
        v = self.valuation()
        if v is None:
            raise PrecisionError("cannot invert an (apparent) zero series")
        rel = self.prec - v  # number of known coefficients
        lead_inv = self.terms[v].inverse()
        # u = self / lead / T^v is 1 + higher; invert u by recursion
        u = {e - v: c * lead_inv for e, c in self.terms.items()}
        inv = {0: self.field.one()}
        for n in range(1, rel):
            acc = self.field.zero()
            for k, ck in u.items():
                if 0 < k <= n and (n - k) in inv:
                    acc = acc + ck * inv[n - k]
            if acc:
                inv[n] = -acc
        out = {e - v: c * lead_inv for e, c in inv.items()}
        return TruncatedSeries(self.field, out, self.prec - 2 * v, self.ram_index)

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.monomial(self.field, 0, self.prec,
                                          ram_index=self.ram_index)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        if not self.terms:
            return f"O(T^{self.prec})"
        bits = [f"({self.terms[e]!r})T^{e}" for e in sorted(self.terms)]
        return " + ".join(bits) + f" + O(T^{self.prec})"


def compose(f: TruncatedSeries, tau: TruncatedSeries) -> TruncatedSeries:
    """f(tau) for tau of positive valuation, by Horner over f's exponents.

    The tail of f beyond its precision contributes O(tau^f.prec), so the
    result is capped at val(tau) * f.prec.
    """
    vt = tau.valuation()
    if vt is None or vt < 1:
        raise DomainError("composition needs a substitution of valuation >= 1")
    cap = vt * f.prec
    field = f.field
    if not f.terms:
        return TruncatedSeries.zero(field, cap, f.ram_index)
    exps = sorted(f.terms, reverse=True)
    acc = TruncatedSeries.constant(field, f.terms[exps[0]], tau.prec)
    for e_prev, e in zip(exps, exps[1:]):
        acc = acc * tau ** (e_prev - e)
        acc = acc + TruncatedSeries.constant(field, f.terms[e], acc.prec)
    acc = acc * tau ** exps[-1]
    return TruncatedSeries(f.field, acc.terms, min(acc.prec, cap), f.ram_index)
