"""Command-line front end: JSON problem documents in, JSON reports out.

Commands: standard-form, jumps, dimension, verify, quaternion-demo.  Input is
a file or '-' (stdin); output likewise.  Every emitted number is exact --
rationals appear as [numerator, denominator] pairs.  Exit codes: 0 success,
1 domain error, 2 parse/schema error; failures emit a machine-readable error
object on the output channel.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import ascover, moduli, ramfilt, tower
from .errors import DomainError, SchemaError
from .gf import field_create
from .ramfilt import RamFiltration, ReducedFiltration

PROG = "ramify"


def _read_document(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def _write_document(obj, path: str) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _frac(x: Fraction):
    return [x.numerator, x.denominator]


# ---------------------------------------------------------------------------
# Subcommands.

def cmd_standard_form(doc) -> dict:
    cover = ascover.cover_from_json(doc)
    sf = ascover.standard_form(cover)
    out = {"standard_form": sf.to_json()}
    if sf:
        out["conductor"] = ascover.conductor(cover)
    else:
        out["conductor"] = None
    if cover.q == cover.field.p:
        out["connected"] = ascover.is_connected(cover)
    return out


def cmd_jumps(doc, direction: str) -> dict:
    filt = RamFiltration.from_json(doc)
    if direction == "to-upper":
        converted = ramfilt.lower_to_upper(filt)
    elif direction == "to-lower":
        converted = ramfilt.upper_to_lower(filt)
    else:
        raise SchemaError(f"unknown direction {direction}")
    return {
        "filtration": converted.to_json(),
        "jumps_with_multiplicity":
            [_frac(j) for j in ramfilt.jumps_with_multiplicity(converted)],
        "violations": ramfilt.validate(converted),
    }


def cmd_dimension(doc) -> dict:
    structure = doc.get("structure") or {}
    kind = structure.get("kind", "general")
    if kind not in ("general", "abelian", "reducible", "ordinary"):
        raise SchemaError(f"unknown structure kind {kind!r}")
    reduced = None
    if "pieces" in doc:
        reduced = ReducedFiltration.from_json(doc)
    exact = None
    rule = None
    if kind == "abelian":
        try:
            p = int(structure["p"])
            factors = [[int(j) for j in f] for f in structure["factors"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"abelian structure needs p and factors: {exc}")
        exact = moduli.dim_abelian(p, factors)
        rule = "abelian"
        if reduced is None:
            # one piece of order p per jump of every cyclic factor
            pieces = tuple((p, Fraction(j), 1)
                           for f in factors for j in sorted(f))
            reduced = ReducedFiltration(1, tuple(sorted(pieces, key=lambda t: t[1])))
    if reduced is None:
        raise SchemaError("dimension document needs pieces (or an abelian structure)")
    report = moduli.dim_bounds(reduced)
    if kind == "reducible":
        exact = moduli.dim_reducible(
            [(q, si, s) for q, s, si in reduced.pieces], reduced.tame)
        rule = "reducible"
    elif kind == "ordinary":
        p = reduced.p
        e = sum(_log_p(q, p) for q, _, _ in reduced.pieces)
        exact = moduli.dim_ordinary(p, e, reduced.tame)
        rule = "ordinary"
        if exact != moduli.dim_reducible(
                [(q, si, s) for q, s, si in reduced.pieces], reduced.tame):
            raise DomainError("ordinary formula disagrees with the piece sum; "
                              "the datum is not ordinary")
    if exact is not None:
        report = moduli.DimensionReport(report.n_list, report.lower_bound,
                                        report.upper_bound, exact, rule)
    return report.to_json()


def _log_p(q: int, p: int) -> int:
    b = 0
    while q > 1:
        q //= p
        b += 1
    return b


def cmd_verify(doc, precision: int) -> dict:
    tw, gens = tower.tower_from_json(doc)
    run = tower.oracle_run(tw, gens, precision)
    oracle_jumps = [int(j) for j in
                    ramfilt.jumps_with_multiplicity(run.filtration)]
    try:
        analytic = tower.analytic_step_jumps(tw)
    except DomainError:
        analytic = None
    agree = analytic is not None and sorted(analytic) == sorted(oracle_jumps)
    if not tw.steps:
        agree = analytic == []
    out = {
        "oracle_jumps": oracle_jumps,
        "analytic_jumps": analytic,
        "agree": agree,
        "filtration": run.filtration.to_json(),
        "precision_used": run.precision,
        "genus": None,
        "p_rank": None,
    }
    if tw.m == 1 and tw.steps:
        out["genus"] = tower.genus_rh(tw.total_order, run.filtration)
        out["p_rank"] = tower.p_rank_ds(tw.wild_order, 0, [tw.wild_order])
    return out


def _fiber_row(q_size: int, i1: int, a3_indices) -> list[dict]:
    field = field_create(2, _log_p(q_size, 2))
    a1 = field.from_index(i1)
    rows = []
    for i2 in range(q_size):
        a2 = field.from_index(i2)
        for i3 in a3_indices:
            a3 = field.from_index(i3)
            rep = tower.evaluate_quaternion_fiber(a1, a2, a3)
            rows.append(rep.to_json())
    return rows


def cmd_quaternion_demo(field_size: int, sweep: bool, parallel: bool) -> dict:
    if field_size not in (2, 4, 16):
        raise SchemaError("field size must be one of 2, 4, 16")
    a = _log_p(field_size, 2)
    if 2 ** a != field_size:
        raise SchemaError("field size must be a power of 2")
    field = field_create(2, a)
    a3_indices = list(range(field_size)) if sweep else [0]
    rows: list[dict] = []
    worker_args = [(field_size, i1, a3_indices) for i1 in range(field_size)]
    if parallel:
        try:
            from concurrent.futures import ProcessPoolExecutor
            with ProcessPoolExecutor() as pool:
                for chunk in pool.map(_fiber_row_star, worker_args):
                    rows.extend(chunk)
        except OSError:
            rows = []
    if not rows:
        for args in worker_args:
            rows.extend(_fiber_row(*args))
    strata = {
        "disconnected": sum(1 for r in rows if not r["connected"]),
        "genus1": sum(1 for r in rows if r["genus"] == 1),
        "genus2": sum(1 for r in rows if r["genus"] == 2),
    }
    family = _equiramified_family_check(field)
    return {"field": field_size, "count": len(rows), "fibers": rows,
            "strata": strata, "family": family}


def _fiber_row_star(args):
    return _fiber_row(*args)


def _equiramified_family_check(field) -> dict:
    """The a2 = 0 two-parameter family: all fibers have jumps (1,1,3), and
    the varying steps (the first step cover and the top-step modifier, both
    covers of the base germ) distinguish every pair of fibers."""
    from .ascover import ASCover, is_isomorphic
    from .laurent import LaurentPoly

    one = field.one()
    zero = field.zero()
    fibers = []
    for i1 in range(field.q):
        a1 = field.from_index(i1)
        if a1 == one:
            continue  # disconnected column, not a deformation of the base fiber
        for i3 in range(field.q):
            a3 = field.from_index(i3)
            rep = tower.evaluate_quaternion_fiber(a1, zero, a3)
            v_cover = ASCover(2, LaurentPoly(field, {-1: one + a1}))
            top_modifier = ASCover(2, LaurentPoly(field, {-1: a3}))
            fibers.append(((i1, i3), rep, v_cover, top_modifier))
    all_jumps = all(rep.connected and rep.jumps == (1, 1, 3)
                    for _, rep, _, _ in fibers)
    distinct = True
    for i in range(len(fibers)):
        for k in range(i + 1, len(fibers)):
            same_v, _ = is_isomorphic(fibers[i][2], fibers[k][2])
            same_t, _ = is_isomorphic(fibers[i][3], fibers[k][3])
            if same_v and same_t:
                distinct = False
    return {"size": len(fibers), "all_jumps_1_1_3": all_jumps,
            "pairwise_distinct": distinct}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog=PROG,
        description="Ramification invariants, normal forms and moduli "
                    "dimensions for wildly ramified covers of curve germs.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def io_args(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", default="-", help="JSON file or - for stdin")
        sp.add_argument("--output", default="-", help="JSON file or - for stdout")

    sp = sub.add_parser("standard-form",
                        help="normal form, conductor and connectedness of a cover")
    io_args(sp)

    sp = sub.add_parser("jumps", help="convert a filtration between numberings")
    sp.add_argument("--direction", choices=["to-upper", "to-lower"],
                    required=True)
    io_args(sp)

    sp = sub.add_parser("dimension",
                        help="moduli dimension bounds from a reduced filtration")
    io_args(sp)

    sp = sub.add_parser("verify",
                        help="series-valuation oracle vs normal-form jumps")
    sp.add_argument("--precision", type=int, default=200,
                    help="series precision cap for the oracle")
    io_args(sp)

    sp = sub.add_parser("quaternion-demo",
                        help="the order-8 family over F_2/F_4/F_16")
    sp.add_argument("--field-size", type=int, default=16)
    sp.add_argument("--sweep", action="store_true",
                    help="sweep all parameter triples (else a3 = 0 plane)")
    sp.add_argument("--parallel", action="store_true")
    io_args(sp, needs_input=False)

    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    output = getattr(ns, "output", "-")
    try:
        if ns.cmd == "standard-form":
            result = cmd_standard_form(_read_document(ns.input))
        elif ns.cmd == "jumps":
            result = cmd_jumps(_read_document(ns.input), ns.direction)
        elif ns.cmd == "dimension":
            result = cmd_dimension(_read_document(ns.input))
        elif ns.cmd == "verify":
            result = cmd_verify(_read_document(ns.input), ns.precision)
        elif ns.cmd == "quaternion-demo":
            result = cmd_quaternion_demo(ns.field_size, ns.sweep, ns.parallel)
        else:  # pragma: no cover
            raise SchemaError(f"unknown command {ns.cmd}")
    except SchemaError as exc:
        _write_document({"error": {"code": 2, "type": "schema",
                                   "message": str(exc)}}, output)
        return 2
    except DomainError as exc:
        _write_document({"error": {"code": 1, "type": "domain",
                                   "message": str(exc)}}, output)
        return 1
    _write_document(result, output)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
