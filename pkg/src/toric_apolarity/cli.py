"""Batch command-line front end.

One job per invocation; human-readable tables by default, one
self-contained JSON record per result with ``--format records``.  Every
numeric claim carries its provenance: exact, mod-p lower bound, or
heuristic-stabilized.  Exit codes: 0 success, 1 mathematical refusal,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .abelian import DegreeClass
from .apolarity import (ApolarForm, DegreeBox, apolar_contains, check_symmetry,
                        hilbert_grid)
from .bounds import best_bounds, bound_report, catalecticant
from .errors import InputError, ParseError, Refusal
from .fan import load_fan
from .ideals import IdealGens, cactus_certificate, length_estimate
from .ring import Side, _format_monomial, basis as graded_basis, format_poly, parse_poly
from .secant import (DEFAULT_PRIME, DEFAULT_TRIALS, LaurentFamily,
                     limit_certificate, parse_laurent, terracini_determinant_check,
                     terracini_probe, verify_decomposition)

EXACT = "exact"
MODP = "mod-p lower bound"
HEURISTIC = "heuristic-stabilized"


# --- shared argument parsing ---------------------------------------------

def parse_degree(text: str, group) -> DegreeClass:
    """Degree syntax: free coordinates comma-separated, torsion residues
    after a semicolon, e.g. ``5,2`` or ``6;0``."""
    text = text.strip()
    free_part, _, tors_part = text.partition(";")
    try:
        free = [int(x) for x in free_part.split(",")] if free_part else []
        tors = [int(x) for x in tors_part.split(",")] if tors_part else []
    except ValueError as exc:
        raise ParseError(f"bad degree {text!r}") from exc
    if len(free) != group.free_rank:
        raise ParseError(f"degree {text!r}: expected {group.free_rank} "
                         f"free coordinates")
    if tors and len(tors) != len(group.torsion_orders):
        raise ParseError(f"degree {text!r}: expected "
                         f"{len(group.torsion_orders)} torsion residues")
    if not tors:
        tors = [0] * len(group.torsion_orders)
    return DegreeClass(group, tuple(free), tuple(tors))


def parse_box(text: str, group) -> DegreeBox:
    """Box syntax: one inclusive ``lo..hi`` range per free coordinate,
    comma-separated; torsion residues are enumerated in full."""
    ranges = []
    for piece in text.strip().split(","):
        lo, sep, hi = piece.partition("..")
        if not sep:
            lo = hi = piece
        try:
            ranges.append((int(lo), int(hi)))
        except ValueError as exc:
            raise ParseError(f"bad box component {piece!r}") from exc
    if len(ranges) != group.free_rank:
        raise ParseError(f"box {text!r}: expected {group.free_rank} ranges")
    return DegreeBox(group, tuple(ranges))


def parse_ideal(text: str, fan) -> IdealGens:
    gens = [parse_poly(piece, fan.var_names, Side.PRIMAL, fan)
            for piece in text.split(",") if piece.strip()]
    if not gens:
        raise ParseError("empty ideal generator list")
    return IdealGens(fan, gens)


def parse_form(text: str, fan) -> ApolarForm:
    return ApolarForm(fan, parse_poly(text, fan.dual_var_names, Side.DUAL, fan))


def read_terms_file(path, fan):
    """Lines of ``coefficient | c1, c2, ...`` with rational entries."""
    terms = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        coeff_text, sep, coord_text = line.partition("|")
        if not sep:
            raise ParseError(f"terms line lacks '|': {line!r}")
        try:
            coeff = Fraction(coeff_text.strip())
            coords = [Fraction(c.strip()) for c in coord_text.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad terms line {line!r}") from exc
        if len(coords) != len(fan.rays):
            raise ParseError(f"expected {len(fan.rays)} coordinates: {line!r}")
        terms.append((coeff, coords))
    if not terms:
        raise ParseError(f"no terms in {path}")
    return terms


def read_family_file(path, fan) -> LaurentFamily:
    """Like a terms file, after a ``params: l, m`` header; entries are
    Laurent monomials in the parameters (``l^-1*m^-1`` style)."""
    params = None
    terms = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if params is None:
            head, sep, rest = line.partition(":")
            if head.strip() != "params" or not sep:
                raise ParseError("family file must start with 'params: ...'")
            params = tuple(p.strip() for p in rest.split(",") if p.strip())
            continue
        coeff_text, sep, coord_text = line.partition("|")
        if not sep:
            raise ParseError(f"family line lacks '|': {line!r}")
        coeff = parse_laurent(coeff_text.strip(), params)
        coords = tuple(parse_laurent(c.strip(), params)
                       for c in coord_text.split(","))
        if len(coords) != len(fan.rays):
            raise ParseError(f"expected {len(fan.rays)} coordinates: {line!r}")
        terms.append((coeff, coords))
    if params is None or not terms:
        raise ParseError(f"no family terms in {path}")
    return LaurentFamily(params, tuple(terms))


# --- output ----------------------------------------------------------------

def degree_json(degree: DegreeClass):
    return {"free": list(degree.free), "torsion": list(degree.torsion)}


def emit(args, record: dict, lines):
    if args.format == "records":
        print(json.dumps(record, sort_keys=True, separators=(",", ":")))
    else:
        for line in lines:
            print(line)


def format_param_monomial(expo, params) -> str:
    parts = []
    for name, e in zip(params, expo):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def residue_string(coeff, expo, mono, params, names) -> str:
    pieces = []
    if coeff != 1:
        pieces.append(str(coeff))
    p = format_param_monomial(expo, params)
    if p != "1":
        pieces.append(p)
    m = _format_monomial(mono, names)
    if m:
        pieces.append(m)
    return "*".join(pieces) if pieces else "1"


# --- subcommands ------------------------------------------------------------

def cmd_classgroup(args):
    fan = load_fan(args.fan)
    table = " ".join(f"{n}={d}" for n, d in zip(fan.var_names, fan.var_degrees))
    record = {
        "command": "classgroup",
        "class_group": {"free_rank": fan.class_group.free_rank,
                        "torsion_orders": list(fan.class_group.torsion_orders)},
        "degrees": {n: degree_json(d)
                    for n, d in zip(fan.var_names, fan.var_degrees)},
        "completeness": fan.check_complete().value,
        "provenance": EXACT,
    }
    emit(args, record, [f"Cl = {fan.class_group}; deg {table}",
                        f"completeness: {fan.check_complete().value} [{EXACT}]"])
    return 0


def cmd_basis(args):
    fan = load_fan(args.fan)
    degree = parse_degree(args.degree, fan.class_group)
    mons = graded_basis(fan, degree)
    names = fan.dual_var_names if args.dual else fan.var_names
    strings = [_format_monomial(m, names) or "1" for m in mons]
    record = {"command": "basis", "degree": degree_json(degree),
              "side": "dual" if args.dual else "primal",
              "dimension": len(mons), "monomials": strings,
              "provenance": EXACT}
    emit(args, record, [f"dim = {len(mons)} [{EXACT}]", " ".join(strings)])
    return 0


def _grid_lines(fan, grid, box):
    lines = []
    group = fan.class_group
    tors_axes = [range(d) for d in group.torsion_orders]
    from itertools import product as iproduct
    for tors in iproduct(*tors_axes):
        if group.torsion_orders:
            lines.append(f"torsion class {tors}:")
        if group.free_rank == 2:
            (alo, ahi), (blo, bhi) = box.free_ranges
            for b in range(bhi, blo - 1, -1):
                row = [grid.values[DegreeClass(group, (a, b), tors)]
                       for a in range(alo, ahi + 1)]
                lines.append("  " + " ".join(f"{v:3d}" for v in row))
        else:
            for degree in box:
                if degree.torsion == tors:
                    lines.append(f"  h{degree} = {grid.values[degree]}")
    return lines


def cmd_hilbert(args):
    fan = load_fan(args.fan)
    form = parse_form(args.form, fan)
    box = parse_box(args.box, fan.class_group)
    grid = hilbert_grid(form, box)
    verdict = check_symmetry(form, box)
    record = {
        "command": "hilbert",
        "form": format_poly(form.poly, fan.dual_var_names),
        "form_degree": degree_json(form.degree),
        "values": [{"degree": degree_json(d), "value": v}
                   for d, v in sorted(grid.values.items(),
                                      key=lambda kv: (kv[0].free, kv[0].torsion))],
        "symmetry": "PASS" if verdict.ok else f"FAIL at {verdict.witness}",
        "provenance": EXACT,
    }
    lines = [f"Hilbert function of the apolar algebra [{EXACT}]"]
    lines += _grid_lines(fan, grid, box)
    lines.append(f"symmetry: {'PASS' if verdict.ok else f'FAIL at {verdict.witness}'}")
    emit(args, record, lines)
    return 0


def _bound_lines(report):
    lines = [f"border rank >= {report.border} [{EXACT}]",
             f"rank >= {report.rank} [{EXACT}]"]
    if report.cactus is not None:
        lines.append(f"cactus rank >= {report.cactus} [{EXACT}]")
    else:
        lines.append("cactus bound suppressed (class is not Cartier)")
    return lines


def cmd_cat(args):
    fan = load_fan(args.fan)
    form = parse_form(args.form, fan)
    degree = parse_degree(args.beta, fan.class_group)
    matrix = catalecticant(form, degree)
    report = bound_report(form, degree)
    record = {
        "command": "cat",
        "degree": degree_json(degree),
        "shape": list(matrix.shape),
        "rank": matrix.rank,
        "cartier": report.cartier,
        "bounds": {"border": report.border, "rank": report.rank,
                   "cactus": report.cactus},
        "provenance": EXACT,
    }
    lines = [f"catalecticant is {matrix.shape[0]} x {matrix.shape[1]}, "
             f"rank {matrix.rank} [{EXACT}]"]
    lines += _bound_lines(report)
    emit(args, record, lines)
    return 0


def cmd_bounds(args):
    fan = load_fan(args.fan)
    form = parse_form(args.form, fan)
    box = parse_box(args.box, fan.class_group)
    sweep = best_bounds(form, box)
    record = {
        "command": "bounds",
        "border": {"value": sweep.border,
                   "at": degree_json(sweep.border_at) if sweep.border_at else None},
        "rank": {"value": sweep.rank,
                 "at": degree_json(sweep.rank_at) if sweep.rank_at else None},
        "cactus": {"value": sweep.cactus,
                   "at": degree_json(sweep.cactus_at) if sweep.cactus_at else None},
        "provenance": EXACT,
    }
    lines = [f"border rank >= {sweep.border} at {sweep.border_at} [{EXACT}]",
             f"rank >= {sweep.rank} at {sweep.rank_at} [{EXACT}]",
             f"cactus rank >= {sweep.cactus} at {sweep.cactus_at} "
             f"(Cartier classes only) [{EXACT}]"]
    emit(args, record, lines)
    return 0


def cmd_contains(args):
    fan = load_fan(args.fan)
    form = parse_form(args.form, fan)
    ideal = parse_ideal(args.ideal, fan)
    ok = apolar_contains(ideal, form)
    record = {"command": "contains", "contained": ok, "provenance": EXACT}
    emit(args, record, [f"ideal contained in the annihilator: {ok} [{EXACT}]"])
    return 0


def cmd_length(args):
    fan = load_fan(args.fan)
    ideal = parse_ideal(args.ideal, fan)
    ample = parse_degree(args.ample, fan.class_group)
    est = length_estimate(ideal, ample, window=args.window, max_k=args.max_k)
    record = {
        "command": "length",
        "value": est.value,
        "stabilized": est.stabilized,
        "samples": [list(s) for s in est.samples],
        "window": est.window,
        "provenance": HEURISTIC,
    }
    lines = [f"length estimate = {est.value} [{HEURISTIC}] "
             f"(stabilized: {est.stabilized}, window {est.window})",
             "samples: " + " ".join(f"k={k}:{d}" for k, d in est.samples),
             "valid if the scheme is zero-dimensional and the ideal is "
             "saturated in high degrees"]
    emit(args, record, lines)
    return 0


def cmd_cactus_cert(args):
    fan = load_fan(args.fan)
    form = parse_form(args.form, fan)
    ideal = parse_ideal(args.ideal, fan)
    ample = parse_degree(args.ample, fan.class_group)
    cert = cactus_certificate(form, ideal, ample, window=args.window,
                              max_k=args.max_k,
                              reduced_asserted=args.assert_reduced)
    record = {
        "command": "cactus-cert",
        "contained": True,
        "cactus_bound": cert.cactus_bound,
        "rank_bound": cert.rank_bound,
        "stabilized": cert.length.stabilized,
        "samples": [list(s) for s in cert.length.samples],
        "provenance": HEURISTIC,
    }
    lines = [f"containment: OK [{EXACT}]",
             f"length = {cert.length.value} [{HEURISTIC}] "
             f"(stabilized: {cert.length.stabilized})",
             f"cactus rank <= {cert.cactus_bound}"]
    if cert.rank_bound is not None:
        lines.append(f"rank <= {cert.rank_bound} (scheme asserted reduced)")
    lines.append("valid if the scheme is zero-dimensional and the ideal is "
                 "saturated in high degrees")
    emit(args, record, lines)
    return 0


def cmd_decompose_check(args):
    fan = load_fan(args.fan)
    form = parse_form(args.form, fan)
    terms = read_terms_file(args.terms, fan)
    chk = verify_decomposition(form, terms)
    record = {"command": "decompose-check", "exact": chk.ok,
              "residual": format_poly(chk.residual, fan.dual_var_names),
              "provenance": EXACT}
    lines = [f"decomposition exact: {chk.ok} [{EXACT}]"]
    if not chk.ok:
        lines.append(f"residual: {format_poly(chk.residual, fan.dual_var_names)}")
    emit(args, record, lines)
    return 0


def cmd_limit_cert(args):
    fan = load_fan(args.fan)
    form = parse_form(args.form, fan)
    family = read_family_file(args.family, fan)
    cert = limit_certificate(form, family)
    record = {
        "command": "limit-cert",
        "status": cert.status,
        "terms": cert.term_count,
        "residue": [residue_string(c, expo, mono, family.params,
                                   fan.dual_var_names)
                    for expo, mono, c in cert.residue],
        "defect": [f"{c}*{_format_monomial(m, fan.dual_var_names)}"
                   for m, c in cert.constant_defect],
        "provenance": EXACT,
    }
    lines = [f"certificate: {cert.status} [{EXACT}]"]
    if cert.valid:
        lines.append(f"border rank <= {cert.term_count}")
        lines.append("residue: " + " + ".join(
            residue_string(c, expo, mono, family.params, fan.dual_var_names)
            for expo, mono, c in cert.residue))
    else:
        lines.append("parameter-free defect: " + " + ".join(
            f"{c}*{_format_monomial(m, fan.dual_var_names)}"
            for m, c in cert.constant_defect))
    emit(args, record, lines)
    return 0


def _parse_pins(text):
    if text is None:
        return None
    return tuple(int(x) for x in text.split(",") if x.strip())


def cmd_terracini(args):
    fan = load_fan(args.fan)
    degree = parse_degree(args.degree, fan.class_group)
    probe = terracini_probe(fan, degree, args.r, prime=args.prime,
                            trials=args.trials, seed=args.seed,
                            pins=_parse_pins(args.pins))
    record = {
        "command": "terracini",
        "degree": degree_json(degree),
        "points": probe.points,
        "prime": probe.prime,
        "seed": probe.seed,
        "trials": probe.trials,
        "pins": list(probe.pins),
        "ranks": list(probe.ranks),
        "rank": probe.rank,
        "dim_estimate": probe.dim_estimate,
        "fills_space": probe.fills_space,
        "degenerate": probe.degenerate,
        "assumes": "class is basepoint-free (user-asserted)",
        "provenance": MODP,
    }
    lines = [f"tangent-stack rank = {probe.rank} over Z/{probe.prime} "
             f"[{MODP}] (trials {probe.trials}, seed {probe.seed}, "
             f"pins {list(probe.pins)})",
             f"secant dimension estimate = {probe.dim_estimate}; "
             f"fills P^{probe.ambient_dim - 1}: {probe.fills_space}",
             "rank over Z/p lower-bounds rank over Q; "
             "assumes the class is basepoint-free (user-asserted)"]
    if probe.degenerate:
        lines.append("warning: all trials stayed below the expected cap "
                     "(degenerate samples)")
    emit(args, record, lines)
    return 0


def cmd_det_check(args):
    fan = load_fan(args.fan)
    degree = parse_degree(args.degree, fan.class_group)
    try:
        assignment = [Fraction(x) for x in args.at.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad assignment {args.at!r}") from exc
    value = terracini_determinant_check(fan, degree, args.r, assignment,
                                        prime=args.prime,
                                        pins=_parse_pins(args.pins))
    field = f"Z/{args.prime}" if args.prime else "Q"
    record = {"command": "det-check", "degree": degree_json(degree),
              "points": args.r, "field": field, "determinant": str(value),
              "provenance": EXACT}
    emit(args, record, [f"determinant over {field} = {value} [{EXACT}]"])
    return 0


# --- driver -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toric-apolarity",
        description="Exact apolarity, catalecticant bounds, and secant "
                    "probes on simplicial toric varieties.")
    parser.add_argument("--format", choices=("table", "records"),
                        default="table")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("fan", help="fan file (JSON)")
        p.set_defaults(fn=fn)
        return p

    add("classgroup", cmd_classgroup,
        help="class group and variable degree table")

    p = add("basis", cmd_basis, help="monomial basis of a graded piece")
    p.add_argument("--degree", required=True)
    p.add_argument("--dual", action="store_true",
                   help="print dual-side variable names")

    p = add("hilbert", cmd_hilbert,
            help="Hilbert grid of an apolar algebra with symmetry check")
    p.add_argument("--form", required=True)
    p.add_argument("--box", required=True)

    p = add("cat", cmd_cat, help="catalecticant matrix rank and bounds")
    p.add_argument("--form", required=True)
    p.add_argument("--beta", required=True)

    p = add("bounds", cmd_bounds, help="best bounds over a degree box")
    p.add_argument("--form", required=True)
    p.add_argument("--box", required=True)

    p = add("contains", cmd_contains, help="apolarity containment verdict")
    p.add_argument("--form", required=True)
    p.add_argument("--ideal", required=True,
                   help="comma-separated generators")

    p = add("length", cmd_length, help="length estimate of a subscheme")
    p.add_argument("--ideal", required=True)
    p.add_argument("--ample", required=True)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--max-k", type=int, default=12)

    p = add("cactus-cert", cmd_cactus_cert,
            help="containment plus length: cactus-rank upper bound")
    p.add_argument("--form", required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--ample", required=True)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--max-k", type=int, default=12)
    p.add_argument("--assert-reduced", action="store_true")

    p = add("decompose-check", cmd_decompose_check,
            help="verify an exact point decomposition")
    p.add_argument("--form", required=True)
    p.add_argument("--terms", required=True, help="terms file")

    p = add("limit-cert", cmd_limit_cert,
            help="symbolic limit certificate for a border-rank bound")
    p.add_argument("--form", required=True)
    p.add_argument("--family", required=True, help="family file")

    p = add("terracini", cmd_terracini,
            help="randomized secant-dimension probe")
    p.add_argument("--degree", required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pins", default=None,
                   help="comma-separated pinned variable indices")

    p = add("det-check", cmd_det_check,
            help="tangent-stack determinant at an explicit assignment")
    p.add_argument("--degree", required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--at", required=True,
                   help="comma-separated values for the free chart parameters")
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--pins", default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except Refusal as exc:
        print(f"refused [{exc.name}]: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"input error [{exc.name}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
