"""Command-line entry point: analyze / rescale / formulas.

Exit codes: 0 success, 1 validation or input error (including an oracle
mismatch), 2 when a cap or enumeration budget is exceeded. Rationals travel
through JSON as strings so nothing is ever contaminated by floating point.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .closedforms import (
    CantorParams,
    bhm_max_formula,
    bhm_min_formula,
    isolated_point_bound,
    x_max_location,
    x_min_location,
)
from .dimcalc import DimensionReport, ISOLATED, UNDECIDED, assemble_report, \
    dim_at_zero
from .errors import (
    BudgetExceeded,
    CapExceeded,
    FinitypeError,
    InputDocumentError,
    Mismatch,
    PathExplosion,
    ValidationError,
)
from .exactfield import NumberField
from .ifsmodel import (
    Ifs,
    Model,
    binomial_convolution_probabilities,
    rescale,
    uniform_probabilities,
    validate,
)
from .loopclasses import classify_all
from .netgraph import build_graph, export_dot
from .oracle import check_graph_against_oracle


# ----------------------------------------------------------------------------
# input documents
# ----------------------------------------------------------------------------

def _frac(value, where):
    try:
        if isinstance(value, str) or isinstance(value, int):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise InputDocumentError(f"{where}: expected a rational string, got {value!r}")


def parse_document(doc: dict) -> Ifs:
    """Input document -> raw IFS; errors carry the offending field."""
    if not isinstance(doc, dict):
        raise InputDocumentError("document root must be a JSON object")
    try:
        rho = doc["rho"]
    except KeyError:
        raise InputDocumentError("rho: missing")
    if not isinstance(rho, dict) or "minpoly" not in rho or "interval" not in rho:
        raise InputDocumentError("rho: need an object with minpoly and interval")
    minpoly = rho["minpoly"]
    if not isinstance(minpoly, list) or not all(isinstance(c, int) for c in minpoly):
        raise InputDocumentError("rho.minpoly: expected a list of integers")
    interval = rho["interval"]
    if not isinstance(interval, list) or len(interval) != 2:
        raise InputDocumentError("rho.interval: expected [lo, hi]")
    lo = _frac(interval[0], "rho.interval[0]")
    hi = _frac(interval[1], "rho.interval[1]")
    field = NumberField(minpoly, (lo, hi))

    trans = doc.get("translations")
    if not isinstance(trans, list) or not trans:
        raise InputDocumentError("translations: expected a non-empty list")
    elements = []
    for i, coeffs in enumerate(trans):
        if not isinstance(coeffs, list) or not coeffs:
            raise InputDocumentError(
                f"translations[{i}]: expected a coefficient array")
        if len(coeffs) > field.degree:
            raise InputDocumentError(
                f"translations[{i}]: {len(coeffs)} coefficients for a field "
                f"of degree {field.degree}")
        elements.append(field.element(
            [_frac(c, f"translations[{i}][{j}]") for j, c in enumerate(coeffs)]))

    m = len(elements) - 1
    probs = doc.get("probabilities")
    if probs == "uniform":
        p = uniform_probabilities(m)
    elif isinstance(probs, dict) and set(probs) == {"binomial_convolution"}:
        k = probs["binomial_convolution"]
        if not isinstance(k, int) or k != m:
            raise InputDocumentError(
                f"probabilities.binomial_convolution: must equal the map "
                f"count minus one ({m})")
        p = binomial_convolution_probabilities(m)
    elif isinstance(probs, list):
        if len(probs) != m + 1:
            raise InputDocumentError(
                f"probabilities: {len(probs)} weights for {m + 1} maps")
        p = tuple(_frac(q, f"probabilities[{i}]") for i, q in enumerate(probs))
    else:
        raise InputDocumentError(
            'probabilities: expected an array, "uniform", or '
            '{"binomial_convolution": m}')
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputDocumentError("name: expected a string")
    return Ifs(field=field, translations=tuple(elements), probabilities=p,
               name=name)


def document_from_ifs(ifs: Ifs) -> dict:
    return {
        "name": ifs.name,
        "rho": {"minpoly": list(ifs.field.minpoly),
                "interval": [str(q) for q in ifs.field._orig]},
        "translations": [[str(Fraction(c)) for c in t.coeffs]
                         for t in ifs.translations],
        "probabilities": [str(q) for q in ifs.probabilities],
    }


# ----------------------------------------------------------------------------
# output documents
# ----------------------------------------------------------------------------

def _r10(x):
    if x is None:
        return None
    return float(f"{x:.10g}")


def _pair(p):
    return None if p is None else [_r10(p[0]), _r10(p[1])]


def report_to_document(report: DimensionReport, parameters: dict) -> dict:
    classes = []
    for cs in report.classes:
        lc = cs.loop_class
        classes.append({
            "members": list(lc.members),
            "is_essential": lc.is_essential,
            "is_maximal": lc.is_maximal,
            "simple_loop": lc.is_simple_loop,
            "positivity": lc.positivity.verdict.value if lc.positivity else None,
            "certified_interval": cs.certified_interval,
            "spectral_range_inner": _pair(cs.spectral_inner),
            "spectral_range_outer": _pair(cs.spectral_outer),
            "dim_inner": _pair(cs.dim_inner),
            "dim_outer": _pair(cs.dim_outer),
            "exact_point": _r10(cs.exact_point),
            "min_cycle": list(cs.min_cycle) if cs.min_cycle else None,
            "max_cycle": list(cs.max_cycle) if cs.max_cycle else None,
            "cycle_len": cs.cycle_len,
            "bound_len": cs.bound_len,
        })
    return {
        "tool": "finitype",
        "version": __version__,
        "parameters": parameters,
        "cv_count": report.cv_count,
        "essential_size": report.essential_size,
        "dim_at_zero": _r10(report.dim_zero),
        "supported_by_theory": report.model.supported,
        "classes": classes,
        "isolated_points": [
            {"value": _r10(p.value), "status": p.status,
             "classes": [list(c) for c in p.classes]}
            for p in report.isolated],
        "global_inner": [list(map(_r10, iv)) for iv in report.global_inner],
        "global_outer": [list(map(_r10, iv)) for iv in report.global_outer],
    }


def _fmt(x):
    return f"{x:.10g}"


def _fmt_iv(p):
    return f"[{_fmt(p[0])}, {_fmt(p[1])}]"


def render_text(report: DimensionReport, graph=None, show_matrices=False) -> str:
    """Human-readable report mirroring the per-class layout of the JSON."""
    model = report.model
    lines = []
    name = model.ifs.name or "unnamed system"
    lines.append(f"# {name}")
    if not model.supported:
        lines.append("!! UNSUPPORTED-BY-THEORY: irregular weights; interval "
                     "conclusions below are not backed by the theory")
    lines.append(f"contraction rho = {model.rho().to_decimal(10)}, "
                 f"{model.m + 1} maps")
    lines.append(f"The reduced transition graph has {report.cv_count} reduced "
                 f"characteristic vectors.")
    if graph is not None and len(graph) <= 60:
        for i in range(1, len(graph) + 1):
            lines.append(f"  vector {i}: {graph.cv(i).describe()}")
        if show_matrices:
            for e in graph.edges:
                rows = "; ".join(" ".join(str(v) for v in row)
                                 for row in e.matrix)
                mult = f" x{e.multiplicity}" if e.multiplicity > 1 else ""
                lines.append(f"  T({e.parent},{e.child}){mult} = [{rows}]")
    lines.append("")
    lines.append(f"local dimension at the endpoints: {_fmt(report.dim_zero)}")

    ess = report.essential
    others = [c for c in report.classes if not c.loop_class.is_essential]
    lines.append("")
    lines.append(f"The essential class is: {ess.loop_class.label()}.")
    lines.extend(_class_block(ess))
    lines.append("")
    lines.append(f"There are {len(others)} additional maximal loops.")
    for cs in others:
        lines.append("")
        lines.append(f"Maximal loop class: {cs.loop_class.label()}.")
        lines.extend(_class_block(cs))

    lines.append("")
    pieces = [f"{_fmt_iv(iv)}" if iv[1] - iv[0] > 1e-9 else
              "{" + _fmt(iv[0]) + "}" for iv in report.global_outer]
    lines.append("global dimension set bracket (outer): " +
                 " U ".join(pieces))
    point_like = [iv for iv in report.global_outer if iv[1] - iv[0] <= 1e-9]
    if len(point_like) == len(report.global_outer):
        vals = ", ".join(_fmt(iv[0]) for iv in report.global_outer)
        lines.append(f"The set of local dimensions consists of "
                     f"{len(point_like)} distinct points: {vals}.")
    iso = [p for p in report.isolated if p.status == ISOLATED]
    und = [p for p in report.isolated if p.status == UNDECIDED]
    if iso:
        for p in iso:
            lines.append(f"Isolated point: {_fmt(p.value)} "
                         f"(attained by {', '.join(str(list(c)) for c in p.classes)}).")
    else:
        lines.append("No isolated point.")
    for p in und:
        lines.append(f"UNDECIDED point: {_fmt(p.value)} lies inside an outer "
                     f"bracket but outside every certified interval.")
    return "\n".join(lines) + "\n"


def _class_block(cs) -> list[str]:
    lc = cs.loop_class
    lines = []
    if lc.positivity is not None:
        if lc.positive:
            kind = "essential class" if lc.is_essential else "maximal loop class"
            lines.append(f"The {kind} is of positive type.")
            lines.append(f"A positive product arises along the path "
                         f"{list(lc.positivity.witness)}.")
        elif lc.positivity.verdict.value == "NOT_POSITIVE":
            lines.append("The class is not of positive type.")
        else:
            lines.append("Positivity undecided within the search budget.")
    if lc.is_simple_loop:
        lines.append("The class is a simple loop.")
        lines.append(f"Its per-step spectral value is exactly "
                     f"{_fmt(cs.exact_point_per_step)}; these points have "
                     f"local dimension {_fmt(cs.exact_point)}.")
    else:
        lines.append("The class is not a simple loop.")
    if cs.spectral_inner:
        lines.append(f"Cycle search (length <= {cs.cycle_len}) shows the "
                     f"per-step spectral range includes "
                     f"{_fmt_iv(cs.spectral_inner)}.")
        lines.append(f"  minimum from the loop {list(cs.min_cycle)}, maximum "
                     f"from the loop {list(cs.max_cycle)}")
        lines.append(f"  giving local dimensions that include "
                     f"{_fmt_iv((cs.dim_inner[0], cs.dim_inner[1]))}.")
    if cs.spectral_outer:
        lines.append(f"Pseudo-norm products of length {cs.bound_len} confine "
                     f"the per-step spectral range to "
                     f"{_fmt_iv(cs.spectral_outer)}.")
        lines.append(f"  so these local dimensions are contained in "
                     f"{_fmt_iv((cs.dim_outer[0], cs.dim_outer[1]))}.")
    if not cs.certified_interval and not lc.is_simple_loop:
        lines.append("Outer bounds only (NOT CERTIFIED as an interval).")
    return ["  " + ln for ln in lines]


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="finitype",
        description="Exact transition-graph analysis of finite-type "
                    "self-similar measures")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="full graph + dimension analysis")
    an.add_argument("--input", required=True, help="input document (JSON)")
    an.add_argument("--max-cvs", type=int, default=10000)
    an.add_argument("--cycle-len", type=int, default=10)
    an.add_argument("--bound-len", type=int, default=8)
    an.add_argument("--subset", default=None,
                    help="comma-separated 1-based column indices for the "
                         "restricted lower norm (default: largest valid set)")
    an.add_argument("--oracle-level", type=int, default=0,
                    help="cross-check the graph against brute enumeration "
                         "up to this level")
    an.add_argument("--json", dest="json_out", default=None,
                    help="write the full report document here")
    an.add_argument("--dot", dest="dot_out", default=None,
                    help="write the graph in DOT format here")
    an.add_argument("--text", action="store_true",
                    help="print the full text report")
    an.add_argument("--matrices", action="store_true",
                    help="include primitive matrices in the text report")
    an.add_argument("--allow-irregular", action="store_true",
                    help="accept irregular weights (results unsupported "
                         "by the theory)")

    rs = sub.add_parser("rescale", help="rescale translations to [0, 1]")
    rs.add_argument("--input", required=True)

    fm = sub.add_parser("formulas", help="closed-form Cantor predictions")
    fm.add_argument("--R", type=int, required=True)
    fm.add_argument("--m", type=int, required=True)
    return ap


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputDocumentError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise InputDocumentError(f"{path} is not valid JSON: {e}")


def _cmd_analyze(args) -> int:
    doc = _load_json(args.input)
    ifs = parse_document(doc)
    model = validate(ifs, allow_irregular=args.allow_irregular)
    for w in model.warnings:
        print(f"warning: {w}", file=sys.stderr)
    graph = build_graph(model, cap_cvs=args.max_cvs)
    classes = classify_all(graph)
    if args.oracle_level > 0:
        for level in range(1, args.oracle_level + 1):
            count = check_graph_against_oracle(model, graph, level)
            print(f"oracle: level {level} matches exactly "
                  f"({count} net intervals)", file=sys.stderr)
    subset = "auto"
    if args.subset:
        try:
            subset = tuple(int(s) for s in args.subset.split(","))
        except ValueError:
            raise InputDocumentError("--subset: expected integers like 2,3,4")
    report = assemble_report(model, graph, classes=classes,
                             cycle_len=args.cycle_len,
                             bound_len=args.bound_len, subset=subset)
    parameters = {
        "input": doc, "max_cvs": args.max_cvs, "cycle_len": args.cycle_len,
        "bound_len": args.bound_len,
        "subset": list(subset) if isinstance(subset, tuple) else subset,
        "oracle_level": args.oracle_level,
    }
    if args.dot_out:
        _write_atomic(args.dot_out, export_dot(graph, classes=classes))
    if args.json_out:
        out = report_to_document(report, parameters)
        _write_atomic(args.json_out, json.dumps(out, indent=2) + "\n")
    if args.text:
        sys.stdout.write(render_text(report, graph=graph,
                                     show_matrices=args.matrices))
    else:
        ess = report.essential
        print(f"{report.cv_count} reduced characteristic vectors; essential "
              f"class {ess.loop_class.label()} ({report.essential_size} "
              f"members); {len(report.classes)} maximal loop classes; "
              f"dim at endpoints {_fmt(report.dim_zero)}")
    return 0


def _write_atomic(path, text):
    import os
    import tempfile

    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".finitype-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _cmd_rescale(args) -> int:
    doc = _load_json(args.input)
    ifs = parse_document(doc)
    out = document_from_ifs(rescale(ifs))
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return 0


def _cmd_formulas(args) -> int:
    params = CantorParams.binomial(args.R, args.m)
    print(f"R = {args.R}, m = {args.m}, binomial weights")
    print(f"predicted minimal dimension : {_fmt(bhm_min_formula(params))}")
    print(f"predicted maximal dimension : {_fmt(bhm_max_formula(params))}")
    print(f"predicted minimizer         : {x_min_location(params)}")
    print(f"predicted maximizer         : {x_max_location(params)}")
    try:
        dz, interior = isolated_point_bound(params)
        print(f"endpoint dimension          : {_fmt(dz)}")
        print(f"interior upper bound        : {_fmt(interior)} "
              f"(endpoint value is isolated)")
    except FinitypeError as e:
        print(f"endpoint isolation          : not applicable ({e})")
    return 0


def run(argv) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "rescale":
            return _cmd_rescale(args)
        if args.command == "formulas":
            return _cmd_formulas(args)
        raise AssertionError(args.command)
    except (CapExceeded, BudgetExceeded, PathExplosion) as e:
        print(f"{_qual(e)}: {e}", file=sys.stderr)
        return 2
    except FinitypeError as e:
        print(f"{_qual(e)}: {e}", file=sys.stderr)
        return 1


def _qual(e) -> str:
    return f"{type(e).__module__.rsplit('.', 1)[-1]}.{type(e).__name__}"


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
