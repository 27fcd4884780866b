"""Towers of degree-p steps over a tame base, and their invariants.

The heart of the module is an independent oracle for lower jumps: it builds a
uniformizer at the top of the tower step by step, re-expands every variable as
a truncated series in it, and reads each group element's jump off the
valuation of g(T) - T.  This uses nothing but series arithmetic, so it
cross-checks the conductor formulas computed elsewhere from Laurent-polynomial
normal forms.

Per step with (reduced) pole order j prime to p, the new uniformizer is
T_new = T_old^alpha * y^beta where alpha*p - beta*j = 1 and alpha is the
minimal nonnegative solution.  Writing tau = T^p s^beta and eta = T^-j s^-alpha
for one unknown unit s turns the step equation eta^p - eta = f(tau) into the
fixed-point form

    s = lead(f)^-1 * (1 - T^(j(p-1)) s^(alpha(p-1)) - T^(jp) s^(alpha p) f_tail(tau))

whose right side gains at least one order of T per iteration, so the unit is
found by plain iteration with no root extractions.  Steps whose right-hand
side has a p-divisible pole are first reduced by subtracting d^p - d for
monomial d (exact, since the coefficient field is perfect).

Genus comes from the Riemann-Hurwitz formula for a one-point totally ramified
cover of a genus-0 base; the p-rank from the Deuring-Shafarevich count in the
variant gamma - 1 = |P|(gamma_base - 1) + sum_b (|P| - |P|/e_b), pinned by its
gamma = 0 test cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PrecisionError
from .gf import Field, FieldElement, root_of_unity
from .laurent import LaurentPoly, prime_to_p_degree
from .ramfilt import LOWER, RamFiltration, jumps_with_multiplicity
from .ascover import standard_form_poly
from .series import TruncatedSeries, compose

# ---------------------------------------------------------------------------
# Multivariate Laurent polynomials in the tower variables.
# A monomial key is a sorted tuple of (variable, exponent) pairs.

VarPoly = dict


def vp_const(field: Field, c: FieldElement) -> VarPoly:
    return {(): c} if c else {}


def vp_var(field: Field, name: str, exp: int = 1) -> VarPoly:
    return {((name, exp),): field.one()}


def vp_add(a: VarPoly, b: VarPoly) -> VarPoly:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vp_scale(a: VarPoly, c: FieldElement) -> VarPoly:
    if not c:
        return {}
    return {k: co * c for k, co in a.items()}


def _mono_mul(k1, k2):
    exps = dict(k1)
    for var, e in k2:
        e2 = exps.get(var, 0) + e
        if e2:
            exps[var] = e2
        else:
            exps.pop(var, None)
    return tuple(sorted(exps.items()))


def vp_mul(a: VarPoly, b: VarPoly) -> VarPoly:
    out: VarPoly = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = _mono_mul(k1, k2)
            c = c1 * c2
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def vp_pow(field: Field, a: VarPoly, n: int) -> VarPoly:
    if n < 0:
        raise DomainError("negative power of a multivariate polynomial")
    result = vp_const(field, field.one())
    base = a
    while n:
        if n & 1:
            result = vp_mul(result, base)
        base = vp_mul(base, base)
        n >>= 1
    return result


def vp_subst(field: Field, a: VarPoly, images: dict[str, VarPoly]) -> VarPoly:
    """Substitute images for variables; exponents must be nonnegative unless
    the variable maps to itself."""
    out: VarPoly = {}
    for k, c in a.items():
        term = vp_const(field, c)
        for var, e in k:
            img = images[var]
            if e < 0:
                if img != vp_var(field, var):
                    raise DomainError(
                        f"cannot substitute into a negative power of {var}")
                term = vp_mul(term, {((var, e),): field.one()})
            else:
                term = vp_mul(term, vp_pow(field, img, e))
        out = vp_add(out, term)
    return out


def vp_eval(a: VarPoly, env: dict[str, TruncatedSeries], field: Field,
            prec: int) -> TruncatedSeries:
    out = TruncatedSeries.zero(field, prec)
    for k, c in a.items():
        term = TruncatedSeries.constant(field, c, prec)
        for var, e in k:
            if var not in env:
                raise DomainError(f"unknown variable {var}")
            term = term * env[var] ** e
        out = out + term
    return out


def vp_variables(a: VarPoly) -> set[str]:
    return {var for k in a for var, _ in k}


def vp_from_json(field: Field, expr) -> VarPoly:
    from .errors import SchemaError
    out: VarPoly = {}
    try:
        for coeffs, exps in expr:
            c = field.element(coeffs)
            k = tuple(sorted((str(v), int(e)) for v, e in exps.items() if int(e)))
            out = vp_add(out, {k: c} if c else {})
    except (TypeError, ValueError, KeyError) as exc:
        raise SchemaError(f"malformed expression: {exc}") from exc
    return out


# ---------------------------------------------------------------------------
# Tower data.

@dataclass(frozen=True)
class TowerStep:
    var: str
    rhs: VarPoly  # right-hand side of  var^p - var = rhs


@dataclass(frozen=True)
class TowerSpec:
    """Degree-p steps over the germ coordinate x (tame base step u = x^m)."""

    field: Field
    m: int
    steps: tuple[TowerStep, ...]

    def __post_init__(self):
        if self.m < 1 or self.m % self.field.p == 0:
            raise DomainError("tame degree must be positive and prime to p")
        known = {"x"}
        for step in self.steps:
            if step.var in known:
                raise DomainError(f"duplicate variable {step.var}")
            extra = vp_variables(step.rhs) - known
            if extra:
                raise DomainError(f"step {step.var} uses undeclared {extra}")
            known.add(step.var)

    @property
    def wild_order(self) -> int:
        return self.field.p ** len(self.steps)

    @property
    def total_order(self) -> int:
        return self.m * self.wild_order


class GeneratorAction:
    """An automorphism given by var -> var + shift, shifts in earlier variables."""

    def __init__(self, tower: TowerSpec, shifts: dict[str, VarPoly],
                 name: str = ""):
        self.name = name
        field = tower.field
        order = ["x"] + [s.var for s in tower.steps]
        images = {"x": vp_var(field, "x")}
        for i, var in enumerate(order[1:], start=1):
            sh = shifts.get(var, {})
            allowed = set(order[:i])
            extra = vp_variables(sh) - allowed
            if extra:
                raise DomainError(f"shift of {var} uses later variables {extra}")
            for k in sh:
                if any(e < 0 for _, e in k):
                    raise DomainError("shifts must be polynomial (exponents >= 0)")
            images[var] = vp_add(vp_var(field, var), sh)
        if "x" in shifts and shifts["x"]:
            raise DomainError("the base coordinate cannot be shifted")
        unknown = set(shifts) - set(order)
        if unknown:
            raise DomainError(f"shifts for undeclared variables {unknown}")
        self.images = images

    @classmethod
    def _raw(cls, images, name=""):
        obj = cls.__new__(cls)
        obj.images = images
        obj.name = name
        return obj

    def key(self):
        return tuple(sorted(
            (var, tuple(sorted((k, c.coeffs) for k, c in img.items())))
            for var, img in self.images.items()))


def _compose(field: Field, g: GeneratorAction, h: GeneratorAction) -> GeneratorAction:
    """(g o h)(var) = g(h(var))."""
    images = {var: vp_subst(field, img, g.images)
              for var, img in h.images.items()}
    return GeneratorAction._raw(images, name=f"{g.name}*{h.name}")


def _identity(tower: TowerSpec) -> GeneratorAction:
    field = tower.field
    images = {"x": vp_var(field, "x")}
    for s in tower.steps:
        images[s.var] = vp_var(field, s.var)
    return GeneratorAction._raw(images, name="1")


def close_group(tower: TowerSpec, generators) -> list[GeneratorAction]:
    """Close the generators under composition; must hit p^(#steps) exactly."""
    field = tower.field
    expected = tower.wild_order
    ident = _identity(tower)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for a in frontier:
            for g in generators:
                c = _compose(field, g, a)
                k = c.key()
                if k not in seen:
                    if len(seen) >= expected:
                        raise DomainError(
                            "generator closure exceeds the declared order "
                            f"{expected}")
                    seen[k] = c
                    fresh.append(c)
        frontier = fresh
    if len(seen) != expected:
        raise DomainError(
            f"generators produce a group of order {len(seen)}, expected {expected}")
    return list(seen.values())


# ---------------------------------------------------------------------------
# Series expansion of the tower.

def _peel(f: TruncatedSeries, p: int):
    """Reduce p-divisible pole orders by subtracting d^p - d for monomials d.

    Returns (reduced series with p-free pole, accumulated d).  Raises
    DomainError when no pole survives (the step is not totally ramified) and
    PrecisionError when the leading term cannot be seen at this precision.
    """
    field = f.field
    d_total = None
    while True:
        if f.is_zero_to_precision():
            raise PrecisionError(
                "step right-hand side vanished to working precision")
        v = f.valuation()
        if v >= 0:
            raise DomainError(
                "step is not totally ramified: right-hand side has no pole "
                "after reduction")
        if (-v) % p != 0:
            return f, d_total
        c = f.terms[v]
        root = c.pth_root()
        d = TruncatedSeries.monomial(field, v // p, f.prec, coeff=root)
        d_p = TruncatedSeries.monomial(field, v, f.prec, coeff=c)
        f = f - d_p + d
        d_total = d if d_total is None else d_total + d


def _uniformizer_exponents(p: int, j: int) -> tuple[int, int]:
    """Minimal alpha >= 0 with alpha*p = 1 mod j; beta = (alpha*p - 1)/j."""
    alpha = 0
    while (alpha * p - 1) % j != 0:
        alpha += 1
    return alpha, (alpha * p - 1) // j


# Raw coefficient-dict arithmetic at a fixed exponent modulus.  The unit
# iteration below is a T-adic contraction, so the accuracy of its fixed point
# is limited only by the truncation of f, not by how precision rules compound
# across iterations; working at one modulus keeps that accuracy.

def _dmul(a, b, cap):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e >= cap:
                continue
            c = c1 * c2
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _dinv(field, a, cap):
    v = min(a)
    lead_inv = a[v].inverse()
    u = {e - v: c * lead_inv for e, c in a.items()}
    rel = cap + v  # unit coefficients needed on [0, rel)
    inv = {0: field.one()}
    for n in range(1, max(rel, 1)):
        acc = field.zero()
        for k, ck in u.items():
            if 0 < k <= n and (n - k) in inv:
                acc = acc + ck * inv[n - k]
        if acc:
            inv[n] = -acc
    return {e - v: c * lead_inv for e, c in inv.items() if e - v < cap}


def _dpow(field, a, n, cap):
    if n < 0:
        return _dpow(field, _dinv(field, a, cap + 1), -n, cap)
    result = {0: field.one()}
    base = dict(a)
    while n:
        if n & 1:
            result = _dmul(result, base, cap)
        base = _dmul(base, base, cap)
        n >>= 1
    return result


def _dtail_at(field, tail, tau, cap):
    """Horner evaluation of a one-variable Laurent tail at tau, mod T^cap."""
    exps = sorted(tail, reverse=True)
    acc = {0: tail[exps[0]]}
    for e_prev, e in zip(exps, exps[1:]):
        acc = _dmul(acc, _dpow(field, tau, e_prev - e, cap), cap)
        c = tail[e]
        s = acc.get(0)
        s = c if s is None else s + c
        if s:
            acc[0] = s
        else:
            acc.pop(0, None)
    return _dmul(acc, _dpow(field, tau, exps[-1], cap), cap)


def _solve_unit(f: TruncatedSeries, j: int, alpha: int, beta: int,
                prec: int) -> TruncatedSeries:
    """The unit s making tau = T^p s^beta, eta = T^-j s^-alpha solve the step.

    The truncation of f contributes an error of O(T^(p*prec(f) + jp)) to the
    fixed-point equation, which bounds the honest precision of s.
    """
    field = f.field
    p = field.p
    c = f.terms[-j]
    cinv = c.inverse()
    cap = min(prec, p * f.prec + j * p)
    if cap < 1:
        raise PrecisionError("no usable precision left for the step solve")
    tail = {e: co for e, co in f.terms.items() if e != -j}
    s = {0: cinv}
    for _ in range(cap + 8):
        tau = {e + p: co for e, co in _dpow(field, s, beta, cap).items()
               if e + p < cap}
        bracket = {0: field.one()}
        mid = _dpow(field, s, alpha * (p - 1), cap)
        for e, co in mid.items():
            e2 = e + j * (p - 1)
            if e2 >= cap:
                continue
            cur = bracket.get(e2)
            cur = -co if cur is None else cur - co
            if cur:
                bracket[e2] = cur
            else:
                bracket.pop(e2, None)
        if tail:
            top = _dmul(_dpow(field, s, alpha * p, cap),
                        _dtail_at(field, tail, tau, cap), cap)
            for e, co in top.items():
                e2 = e + j * p
                if e2 >= cap:
                    continue
                cur = bracket.get(e2)
                cur = -co if cur is None else cur - co
                if cur:
                    bracket[e2] = cur
                else:
                    bracket.pop(e2, None)
        s_new = {e: co * cinv for e, co in bracket.items()}
        if s_new == s:
            return TruncatedSeries(field, s, cap)
        s = s_new
    raise PrecisionError("unit iteration failed to converge")


@dataclass(frozen=True)
class _StepChart:
    """How one step's uniformizer was built: T_new = T_old^alpha * y'^beta
    with y' = y - D(T_old) for the peel correction D (None when no peel)."""
    var: str
    pole_order: int
    alpha: int
    beta: int
    peel: tuple | None  # ((exponent, coefficient), ...) in T_old units


def _expand_tower(tower: TowerSpec, prec: int):
    """Expansions of all tower variables in the top uniformizer.

    Returns (env, charts) where charts records, step by step, how the top
    uniformizer is assembled from the tower variables.
    """
    field = tower.field
    p = field.p
    env = {"x": TruncatedSeries.monomial(field, 1, prec)}
    charts = []
    for step in tower.steps:
        f = vp_eval(step.rhs, env, field, prec)
        f, d_total = _peel(f, p)
        j = -f.valuation()
        alpha, beta = _uniformizer_exponents(p, j)
        s = _solve_unit(f, j, alpha, beta, prec)
        tau = TruncatedSeries.monomial(field, p, s.prec) * s ** beta
        eta = TruncatedSeries.monomial(field, -j, s.prec) * s ** (-alpha)
        # consistency: the defining monomial of the new uniformizer is T itself
        t_check = tau ** alpha * eta ** beta
        if not (t_check - TruncatedSeries.monomial(field, 1, t_check.prec)
                ).is_zero_to_precision():
            raise PrecisionError("uniformizer relation failed to close")
        new_env = {name: compose(ser, tau) for name, ser in env.items()}
        y_series = eta
        peel_terms = None
        if d_total is not None:
            y_series = eta + compose(d_total, tau)
            peel_terms = tuple(sorted(d_total.terms.items()))
        new_env[step.var] = y_series
        env = new_env
        charts.append(_StepChart(step.var, j, alpha, beta, peel_terms))
    ram_index = p ** len(tower.steps)
    for name in env:
        env[name] = TruncatedSeries(field, env[name].terms, env[name].prec,
                                    ram_index)
    return env, charts


def _uniformizer_image(g: GeneratorAction, env, charts, field: Field,
                       prec: int) -> TruncatedSeries:
    """The series of g(T) for the top uniformizer T, following the charts."""
    cur = env["x"]
    for chart in charts:
        y_ser = vp_eval(g.images[chart.var], env, field, prec)
        if chart.peel is not None:
            corr = TruncatedSeries.zero(field, y_ser.prec)
            for e, c in chart.peel:
                corr = corr + (cur ** e).scale(c)
            y_ser = y_ser - corr
        cur = cur ** chart.alpha * y_ser ** chart.beta
    return cur


def _check_generators(tower: TowerSpec, generators, env, prec: int):
    """Each generator must preserve every step equation as a series identity."""
    field = tower.field
    p = field.p
    for g in generators:
        g_env = {var: vp_eval(img, env, field, prec)
                 for var, img in g.images.items()}
        for step in tower.steps:
            lhs = g_env[step.var] ** p - g_env[step.var]
            rhs = vp_eval(step.rhs, g_env, field, prec)
            if not (lhs - rhs).is_zero_to_precision():
                raise DomainError(
                    f"generator {g.name or '?'} does not preserve the "
                    f"equation of step {step.var}")


@dataclass(frozen=True)
class OracleRun:
    filtration: RamFiltration
    precision: int
    element_jumps: tuple[int, ...]
    pole_orders: tuple[int, ...]


def oracle_run(tower: TowerSpec, generators, precision: int = 200) -> OracleRun:
    """Lower jumps by direct valuation of g(T) - T for every group element.

    Starts with a small working precision and doubles on PrecisionError up to
    the given cap.
    """
    gens = list(generators)
    if not tower.steps:
        filt = RamFiltration(tower.m, tower.m, LOWER, ())
        return OracleRun(filt, 0, (), ())
    if not gens:
        raise DomainError("wild steps declared but no generators supplied")
    work = min(32, precision)
    while True:
        try:
            return _oracle_attempt(tower, gens, work)
        except PrecisionError as exc:
            if work >= precision:
                raise DomainError(
                    f"oracle precision cap {precision} exhausted: {exc}") from exc
            work = min(2 * work, precision)


def _oracle_attempt(tower, gens, work):
    field = tower.field
    env, charts = _expand_tower(tower, work)
    pole_orders = tuple(c.pole_order for c in charts)
    _check_generators(tower, gens, env, work)
    work_prec = min(s.prec for s in env.values())
    group = close_group(tower, gens)
    ident = _identity(tower)
    t_series = _uniformizer_image(ident, env, charts, field, work_prec)
    check = t_series - TruncatedSeries.monomial(field, 1, t_series.prec)
    if not check.is_zero_to_precision():
        raise PrecisionError("identity does not reproduce the uniformizer")
    jumps = []
    ident_key = ident.key()
    for g in group:
        if g.key() == ident_key:
            continue
        g_t = _uniformizer_image(g, env, charts, field, work_prec)
        diff = g_t - t_series
        v = diff.valuation()
        if v is None:
            raise PrecisionError(
                f"val(g(T) - T) not determined for {g.name or 'an element'}")
        if v < 2:
            raise DomainError(
                "a group element moves the uniformizer with valuation < 2; "
                "the tower is not totally wildly ramified as declared")
        jumps.append(v - 1)
    breaks = []
    for j in sorted(set(jumps)):
        order = 1 + sum(1 for x in jumps if x >= j)
        breaks.append((Fraction(j), order))
    filt = RamFiltration(tower.total_order, tower.m, LOWER, tuple(breaks))
    return OracleRun(filt, work, tuple(sorted(jumps)), tuple(pole_orders))


def oracle_lower_jumps(tower: TowerSpec, generators,
                       precision: int = 200) -> RamFiltration:
    return oracle_run(tower, generators, precision).filtration


def analytic_step_jumps(tower: TowerSpec) -> list[int]:
    """Per-step jumps from Laurent normal forms, no series expansion.

    Each step's right-hand side is folded to a one-variable Laurent polynomial
    in the current uniformizer using the declared valuations of the earlier
    variables, then reduced to standard form.  Leading cancellations deeper
    than the coefficient sums are invisible here; the oracle is authoritative.
    """
    field = tower.field
    p = field.p
    vals = {"x": 1}
    jumps = []
    for step in tower.steps:
        folded = LaurentPoly.zero(field)
        for k, c in step.rhs.items():
            e = sum(exp * vals[var] for var, exp in k)
            folded = folded + LaurentPoly(field, {e: c})
        sf = standard_form_poly(folded, p)
        if not sf:
            raise DomainError(
                f"analytic jump of step {step.var} undetermined "
                "(right-hand side reduces to zero at leading order)")
        j = prime_to_p_degree(sf)
        if j < 1:
            raise DomainError(f"step {step.var} is not totally ramified")
        jumps.append(j)
        vals = {name: v * p for name, v in vals.items()}
        vals[step.var] = -j
    return jumps


# ---------------------------------------------------------------------------
# Genus and p-rank.

def genus_rh(total_order: int, filt: RamFiltration) -> int:
    """Riemann-Hurwitz genus of a one-point totally ramified cover of a
    genus-0 germ: 2g - 2 = -2|I| + sum_{i>=0} (|I_i| - 1)."""
    if filt.numbering != LOWER:
        raise DomainError("genus needs the lower-numbered filtration")
    if total_order != filt.total_order:
        raise DomainError("group order disagrees with the filtration")
    acc = total_order - 1
    prev = Fraction(0)
    for j, o in filt.breaks:
        if j.denominator != 1:
            raise DomainError("lower jumps must be integers")
        acc += (int(j) - int(prev)) * (o - 1)
        prev = j
    rhs = -2 * total_order + acc
    if rhs % 2 != 0 or rhs < -2:
        raise DomainError(f"inconsistent filtration: 2g - 2 = {rhs}")
    return (rhs + 2) // 2


def p_rank_ds(p_part_order: int, base_p_rank: int,
              branch_wild_orders) -> int:
    """Deuring-Shafarevich p-rank for a p-group cover.

    Variant adopted: gamma - 1 = |P| (gamma_base - 1) + sum over branch
    points of (|P| - |P|/e_b), where e_b is the wild inertia order at b.
    For one totally ramified point on a rational base this yields gamma = 0,
    the pinned test value.
    """
    if p_part_order < 1:
        raise DomainError("group order must be positive")
    acc = p_part_order * (base_p_rank - 1)
    for e in branch_wild_orders:
        if e < 1 or p_part_order % e != 0:
            raise DomainError(f"inertia order {e} does not divide |P| = {p_part_order}")
        acc += p_part_order - p_part_order // e
    gamma = acc + 1
    if gamma < 0:
        raise DomainError(f"inconsistent data: negative p-rank {gamma}")
    return gamma


# ---------------------------------------------------------------------------
# The order-8 quaternion family in characteristic 2.

@dataclass(frozen=True)
class FiberReport:
    params: tuple
    connected: bool
    stage: str | None = None
    top_jump: int | None = None
    jumps: tuple | None = None
    genus: int | None = None
    leading: tuple | None = None

    def to_json(self):
        return {
            "a": [list(a.coeffs) for a in self.params],
            "connected": self.connected,
            "disconnected_at": self.stage,
            "top_jump": self.top_jump,
            "jumps": list(self.jumps) if self.jumps else None,
            "genus": self.genus,
        }


def quaternion_tower(field: Field, a1=None, a2=None, a3=None):
    """The three-step tower v^2-v = (1+a1)/x; w^2-w = v + a2/x; y^2-y = w^3 + a3/x
    with its two standard order-4 generators.  Needs a cube root of unity in
    the coefficient field."""
    if field.p != 2:
        raise DomainError("the quaternion family lives in characteristic 2")
    zero = field.zero()
    a1 = zero if a1 is None else a1
    a2 = zero if a2 is None else a2
    a3 = zero if a3 is None else a3
    zeta3 = root_of_unity(field, 3)
    one = field.one()
    x_inv = vp_var(field, "x", -1)
    steps = (
        TowerStep("v", vp_scale(x_inv, one + a1)),
        TowerStep("w", vp_add(vp_var(field, "v"), vp_scale(x_inv, a2))),
        TowerStep("y", vp_add(vp_var(field, "w", 3), vp_scale(x_inv, a3))),
    )
    tower = TowerSpec(field, 1, steps)
    mu = GeneratorAction(tower, {
        "w": vp_const(field, one),
        "y": vp_add(vp_var(field, "w"), vp_const(field, zeta3)),
    }, name="mu")
    tau = GeneratorAction(tower, {
        "v": vp_const(field, one),
        "w": vp_const(field, zeta3),
        "y": vp_add(vp_scale(vp_var(field, "w"), zeta3 + one),
                    vp_const(field, zeta3)),
    }, name="tau")
    return tower, [mu, tau]


def evaluate_quaternion_fiber(a1: FieldElement, a2: FieldElement,
                              a3: FieldElement) -> FiberReport:
    """Connectedness, top jump and genus of one fiber of the family.

    Implements the normalization pipeline: the first step is disconnected iff
    a1 = 1 (char 2); with c1^2 = a2/(a1+1) and c2 = 1 + c1 + c1^2 the second
    step is disconnected iff c2 = 0; otherwise the top equation is rewritten
    in the uniformizer of the normalized middle step and reduced to standard
    form, whose leading terms sit at pole orders 5 and 3 with coefficients
    c3^2 c4 and c4^3 + c3^(3/2).
    """
    field = a1.field
    if field.p != 2:
        raise DomainError("characteristic 2 required")
    if a2.field != field or a3.field != field:
        raise DomainError("parameters from different fields")
    one = field.one()
    params = (a1, a2, a3)
    if a1 == one:
        return FiberReport(params, connected=False, stage="V")
    ratio = a2 / (a1 + one)
    c1 = ratio.sqrt()
    c2 = one + c1 + c1 * c1
    if not c2:
        assert ratio * ratio + ratio + one == field.zero()
        return FiberReport(params, connected=False, stage="W")
    c3 = c1 / c2
    c4 = one + c3
    # germ coordinate at the ramified point: pole order k of w1^k is exponent -k
    w_of_w1 = LaurentPoly(field, {-2: c3, -1: c4})
    v_of_w1 = LaurentPoly(field, {-2: c2.inverse(), -1: c2.inverse()})
    u_of_w1 = (v_of_w1 * v_of_w1 + v_of_w1).scale((one + a1).inverse())
    rhs = w_of_w1 ** 3 + u_of_w1.scale(a3)
    sf = standard_form_poly(rhs, 2)
    lead5 = sf.coeff(-5)
    lead3 = sf.coeff(-3)
    assert lead5 == c3 * c3 * c4
    assert lead3 == c4 ** 3 + (c3 ** 3).sqrt()
    top = prime_to_p_degree(sf)
    assert top == (5 if c3 * c4 else 3)
    filt = RamFiltration(8, 1, LOWER, ((Fraction(1), 8), (Fraction(top), 2)))
    genus = genus_rh(8, filt)
    return FiberReport(params, connected=True, top_jump=top,
                       jumps=(1, 1, top), genus=genus,
                       leading=(lead5, lead3))


def quaternion_oracle_jumps(field: Field, a1=None, a2=None, a3=None,
                            precision: int = 200) -> list:
    """Oracle jumps of one quaternion fiber (with multiplicity)."""
    tower, gens = quaternion_tower(field, a1, a2, a3)
    filt = oracle_lower_jumps(tower, gens, precision)
    return [int(j) for j in jumps_with_multiplicity(filt)]


# ---------------------------------------------------------------------------
# JSON ingestion.

def tower_from_json(obj) -> tuple[TowerSpec, list[GeneratorAction]]:
    from .errors import SchemaError
    from .gf import field_create
    try:
        field = field_create(int(obj["field"]["p"]), int(obj["field"]["a"]))
        steps = tuple(TowerStep(str(s["var"]), vp_from_json(field, s["rhs"]))
                      for s in obj["steps"])
        tower = TowerSpec(field, int(obj.get("m", 1)), steps)
        gens = []
        for i, g in enumerate(obj.get("generators", [])):
            shifts = {str(v): vp_from_json(field, ex)
                      for v, ex in g.get("shifts", {}).items()}
            gens.append(GeneratorAction(tower, shifts,
                                        name=str(g.get("name", f"g{i}"))))
        return tower, gens
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed tower document: {exc}") from exc
