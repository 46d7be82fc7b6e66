"""Command-line entry point.

Exit status is 0 on success, 1 when the input is invalid (unparsable file,
failed validation, failed duality hypotheses) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .complex import ComplexError, FilteredComplex, StageSequence, rips_bifiltration, validate
from .cupalg import CupAlgebra, all_generator_products, cohomology_decomposition
from .duality import duality_report
from .grading import GradingError, leq
from .homology import COHOMOLOGY, HOMOLOGY, betti_table
from .io import (FscError, PointsError, barcode_json, cup_report_json, duality_json, emit_fsc, emit_json,
                 emit_svg, parse_fsc, parse_points, presentation_json, product_json)
from .linalg import FieldError, check_prime
from .presentation import PInterval, barcode, compute_presentation


class InputError(Exception):
    pass


def _grid(text: str):
    if ".." not in text:
        raise argparse.ArgumentTypeError("grid must look like LO..HI, e.g. 0,0..2,3")
    lo, hi = text.split("..", 1)
    try:
        lo = tuple(int(x) for x in lo.replace(",", " ").split())
        hi = tuple(int(x) for x in hi.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if len(lo) != len(hi) or not lo:
        raise argparse.ArgumentTypeError("grid corners need equal arity")
    if any(a > b for a, b in zip(lo, hi)):
        raise argparse.ArgumentTypeError("grid lower corner exceeds upper corner")
    return lo, hi


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except (ValueError, FieldError):
        raise argparse.ArgumentTypeError(f"field must be a prime, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_prime, default=None, help="prime coefficient field (default 2)")
    red = common.add_mutually_exclusive_group()
    red.add_argument("--reduced", dest="reduced", action="store_true", default=None,
                     help="reduced (co)homology (default for module computations)")
    red.add_argument("--unreduced", dest="reduced", action="store_false", help="unreduced (co)homology")
    common.add_argument("--dim", type=int, action="append", help="homological degree; repeatable")
    common.add_argument("--input", "-i", help=".fsc input file")
    common.add_argument("--output", "-o", help="output file (default stdout)")
    common.add_argument("--svg", help="also write an SVG barcode to this path")
    common.add_argument("--grid", type=_grid, help="grid of interest LO..HI, e.g. 0,0..2,3")
    common.add_argument("--theory", choices=(HOMOLOGY, COHOMOLOGY), default=None)
    common.add_argument("--infinite", action="store_true", help="emit -inf/+inf for unbounded bar ends")

    parser = argparse.ArgumentParser(prog="cayleypers", description="Persistent (co)homology over Cayley gradings")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check a filtration")
    sub.add_parser("compute", parents=[common], help="persistent Betti table")
    sub.add_parser("present", parents=[common], help="generators and relations")
    sub.add_parser("barcode", parents=[common], help="one-parameter barcodes")
    sub.add_parser("cup", parents=[common], help="cup-spaces and generator products")
    sub.add_parser("duality", parents=[common], help="persistent Poincare duality on a stage sequence")
    rips = sub.add_parser("rips", parents=[common], help="weighted Vietoris-Rips bifiltration to .fsc")
    rips.add_argument("--points", required=True, help="CSV of x1,...,xd,weight rows")
    rips.add_argument("--weights", type=_floats, required=True, help="weight levels, comma separated")
    rips.add_argument("--scales", type=_floats, required=True, help="scale levels, comma separated")
    rips.add_argument("--max-dim", type=int, default=2)
    rips.add_argument("--tol", type=float, default=1e-6, help="absolute slack in level comparisons")
    return parser


def _load(args):
    if not args.input:
        raise InputError("--input is required")
    try:
        obj = parse_fsc(Path(args.input).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(str(exc)) from None
    if args.grid is not None:
        if not isinstance(obj, FilteredComplex):
            raise InputError("--grid applies to graded filtrations only")
        if len(args.grid[0]) != obj.grading.arity:
            raise InputError("--grid arity does not match the file")
        obj = obj.restrict_grid(*args.grid)
    return obj


def _field(args, obj) -> int:
    return args.field or getattr(obj, "field", None) or 2


def _filtration(args) -> FilteredComplex:
    fc = _load(args)
    if not isinstance(fc, FilteredComplex):
        raise InputError("expected a graded filtration, got a stage sequence")
    rep = validate(fc)
    if not rep:
        msg = "; ".join(f"{s} @ {g}: {why}" for s, g, why in rep.problems[:10])
        raise InputError(f"invalid filtration: {msg}")
    return fc


def _dims(args, fc) -> List[int]:
    if args.dim:
        return sorted(set(args.dim))
    top = max(fc.dimension, 0)
    return list(range(0, max(top, 1)))


def _meta(args, **extra) -> dict:
    meta = {"command": args.command, "version": __version__}
    meta.update(extra)
    return meta


def _write(args, payload: bytes) -> None:
    if args.output:
        Path(args.output).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))


def cmd_validate(args) -> int:
    fc = _load(args)
    if isinstance(fc, StageSequence):
        _write(args, emit_json({"meta": _meta(args, valid=True, stages=len(fc))}))
        return 0
    rep = validate(fc)
    problems = [{"simplex": list(s), "grade": list(g) if g else None, "problem": why} for s, g, why in rep.problems]
    _write(args, emit_json({"meta": _meta(args, valid=rep.ok, problems=problems, grid=[list(x) for x in fc.grid])}))
    return 0 if rep.ok else 1


def cmd_compute(args) -> int:
    fc = _filtration(args)
    field = _field(args, fc)
    reduced = True if args.reduced is None else args.reduced
    theory = args.theory or HOMOLOGY
    dims = args.dim and sorted(set(args.dim)) or list(range(0, fc.dimension + 1))
    table = betti_table(fc, dims, field, reduced, theory)
    for row in table:
        row["theory"] = theory
    _write(args, emit_json({"meta": _meta(args, field=field, reduced=reduced, theory=theory,
                                          grid=[list(x) for x in fc.grid]),
                            "betti_table": table}))
    return 0


def cmd_present(args) -> int:
    fc = _filtration(args)
    field = _field(args, fc)
    reduced = True if args.reduced is None else args.reduced
    theory = args.theory or HOMOLOGY
    gens, rels = [], []
    for p in _dims(args, fc):
        j = presentation_json(compute_presentation(fc, p, field, theory, reduced))
        gens.extend(j["generators"])
        rels.extend(j["relations"])
    _write(args, emit_json({"meta": _meta(args, field=field, reduced=reduced, theory=theory,
                                          grid=[list(x) for x in fc.grid]),
                            "generators": gens, "relations": rels}))
    return 0


def _need_one_parameter(fc):
    if fc.grading.arity != 1:
        raise InputError("this command needs a one-parameter filtration")


def cmd_barcode(args) -> int:
    fc = _filtration(args)
    _need_one_parameter(fc)
    field = _field(args, fc)
    reduced = True if args.reduced is None else args.reduced
    theory = args.theory or HOMOLOGY
    dims = args.dim and sorted(set(args.dim)) or list(range(0, fc.dimension + 1))
    bars: List[PInterval] = []
    for p in dims:
        bars.extend(barcode(fc, p, field, theory, reduced))
    if args.svg:
        Path(args.svg).write_bytes(emit_svg(bars, fc.grid, f"{theory} barcode, GF({field})"))
    _write(args, emit_json({"meta": _meta(args, field=field, reduced=reduced, theory=theory,
                                          grid=[list(x) for x in fc.grid]),
                            "barcodes": barcode_json(bars, fc.grid, args.infinite)}))
    return 0


def cmd_cup(args) -> int:
    fc = _filtration(args)
    field = _field(args, fc)
    alg = CupAlgebra(fc, field)
    grades = list(fc.grid_grades())
    reports = [cup_report_json(alg.cup_space(a, b)) for a in grades for b in grades if leq(fc.grading, a, b)]
    result = {"meta": _meta(args, field=field, reduced=False, theory=COHOMOLOGY,
                            grid=[list(x) for x in fc.grid]),
              "cup_reports": reports}
    if fc.grading.arity == 1:
        dec = cohomology_decomposition(fc, field)
        bars = [b for p in sorted(dec) if p >= 1 for b in dec[p]]
        products = [product_json(ps, fc.grid, args.infinite) for ps in all_generator_products(dec, alg)]
        result["barcodes"] = barcode_json(bars, fc.grid, args.infinite)
        result["meta"]["products"] = products
        if args.svg:
            Path(args.svg).write_bytes(emit_svg(bars, fc.grid, f"cohomology generators, GF({field})"))
    _write(args, emit_json(result))
    return 0


def cmd_duality(args) -> int:
    seq = _load(args)
    if not isinstance(seq, StageSequence):
        raise InputError("duality needs a stage sequence (stage/map blocks)")
    field = _field(args, seq)
    reports = []
    for i in range(len(seq)):
        for j in range(i, len(seq)):
            reports.append(duality_json(duality_report(seq, i, j, field)))
    _write(args, emit_json({"meta": _meta(args, field=field, reduced=False, stages=len(seq)),
                            "duality_reports": reports}))
    return 0 if all(r["holds"] for r in reports) else 1


def cmd_rips(args) -> int:
    try:
        cloud = parse_points(Path(args.points).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(str(exc)) from None
    fc = rips_bifiltration(cloud, args.weights, args.scales, args.max_dim, args.tol)
    if args.field:
        fc.field = args.field
    text = "# weighted Vietoris-Rips bifiltration (weight index, scale index)\n" + emit_fsc(fc)
    _write(args, text.encode("utf-8"))
    return 0


COMMANDS = {"validate": cmd_validate, "compute": cmd_compute, "present": cmd_present, "barcode": cmd_barcode,
            "cup": cmd_cup, "duality": cmd_duality, "rips": cmd_rips}


def dispatch(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (InputError, FscError, PointsError, ComplexError, GradingError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())
