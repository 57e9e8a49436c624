"""Command line interface: ``divisor-series {facets|poincare|order}``.

Exit codes: 0 success/agreement, 1 mathematical mismatch, 2 invalid input,
3 scope error (non-rational Puiseux roots, insufficient truncation).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import InvalidInputError, IrrationalRootError, ScopeError
from .jsonio import (SCHEMA, diagram_to_json, facet_to_json, graph_to_json, groups_to_json,
                     load_input, parse_branch_groups, parse_graph, parse_polynomial,
                     polynomial_to_json, serialize)
from .newton import LaurentPoly, degenerate_facets, diagram_of
from .orders import group_order, newton_order, puiseux_lift
from .pipeline import (SeriesResults, default_bound, formula_forms, oracle_for_groups,
                       polynomial_groups, toric_data)
from .resolution import multiplicity_matrix, validate_graph

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_SCOPE = 0, 1, 2, 3
METHODS = ("theorem1", "corollary", "ijm", "oracle", "compare")


def _header(command: str, inp: dict) -> dict:
    return {"schema": SCHEMA, "version": __version__, "command": command, "input": inp}


def cmd_facets(inp: dict, args) -> tuple[dict, int]:
    if "polynomial" not in inp:
        raise InvalidInputError("facets requires polynomial input")
    f = parse_polynomial(inp["polynomial"])
    if f.is_zero() or not f.is_polynomial():
        raise InvalidInputError("f must be a nonzero polynomial")
    diagram = diagram_of(f)
    doc = _header("facets", inp)
    doc["diagram"] = diagram_to_json(diagram)
    doc["warnings"] = []
    if not diagram.facets:
        doc["warnings"].append("f is a monomial: the Newton diagram has no facets")
    bad = degenerate_facets(f, diagram)
    doc["nondegenerate"] = not bad
    if bad:
        doc["degenerate_facets"] = [facet_to_json(fc) for fc in bad]
        doc["error"] = f"f is degenerate on the facet with normal {bad[0].normal}"
        return doc, EXIT_INPUT
    return doc, EXIT_OK


def _graph_and_groups(inp: dict):
    graph = groups = None
    if "resolution_graph" in inp:
        graph = validate_graph(parse_graph(inp["resolution_graph"]))
    if "branch_groups" in inp:
        groups = parse_branch_groups(inp["branch_groups"])
    if graph is not None and groups is not None:
        marked = graph.marked
        if len(marked) != len(groups):
            raise InvalidInputError(
                f"graph has {len(marked)} marked vertices but {len(groups)} branch groups given")
        for v, g in zip(marked, groups):
            if v.marked_s != g.s:
                raise InvalidInputError(
                    f"vertex {v.id!r} is marked with s={v.marked_s} but its group has {g.s} branches")
    return graph, groups


def cmd_poincare(inp: dict, args) -> tuple[dict, int]:
    method = args.method
    doc = _header("poincare", inp)
    doc["method"] = method
    warnings = []
    diagram = graph = mult = groups = None
    lift_error = None

    if "polynomial" in inp:
        data = toric_data(parse_polynomial(inp["polynomial"]))
        diagram, graph, mult = data.diagram, data.graph, data.mult
        doc["diagram"] = diagram_to_json(diagram)
        doc["rays"] = [list(r) for r in data.rays]
        r = data.r
        N = args.degree if args.degree is not None else default_bound(r)
        if method in ("oracle", "compare"):
            T = args.truncation if args.truncation is not None else N
            try:
                groups = polynomial_groups(data, T)
            except IrrationalRootError as exc:
                lift_error = exc
    else:
        graph, groups = _graph_and_groups(inp)
        r = graph.r if graph is not None else len(groups)
        N = args.degree if args.degree is not None else default_bound(r)
        if graph is not None:
            mult = multiplicity_matrix(graph)

    if graph is not None:
        doc["resolution_graph"] = graph_to_json(graph)
        doc["intersection_matrix"] = graph.intersection_matrix()
        doc["multiplicity_matrix"] = mult.as_lists()
        doc["marked"] = list(mult.marked)
    if groups is not None:
        doc["branch_groups"] = groups_to_json(groups)

    results = SeriesResults(r, N)
    available = formula_forms(graph, mult, diagram) if graph is not None else {}
    if method == "compare":
        for name, form in available.items():
            results.add_form(name, form)
    elif method != "oracle":
        if method not in available:
            reasons = {"corollary": "corollary requires polynomial input",
                       "ijm": "ijm requires every marked vertex to have s = 1",
                       "theorem1": "theorem1 requires polynomial or resolution_graph input"}
            raise InvalidInputError(reasons[method])
        results.add_form(method, available[method])

    if method in ("oracle", "compare"):
        if lift_error is not None:
            if method == "oracle":
                raise lift_error
            warnings.append(f"oracle skipped: {lift_error}")
        elif groups is None:
            if method == "oracle":
                raise InvalidInputError("oracle requires branches (branch_groups or a polynomial)")
            warnings.append("oracle skipped: no branches available")
        else:
            results.add_series("oracle", oracle_for_groups(groups, N))

    doc["degree"] = N
    doc["arity"] = r
    doc["product_forms"] = {k: {"factors": v.to_json(), "text": str(v)}
                            for k, v in results.forms.items()}
    doc["expansions"] = {k: {**v.to_json(), "text": str(v)}
                         for k, v in results.expansions.items()}
    code = EXIT_OK
    if method == "compare":
        cmp = results.verdict()
        doc["comparison"] = cmp
        if cmp["verdict"] == "mismatch":
            code = EXIT_MISMATCH
    doc["warnings"] = warnings
    if getattr(args, "emit_tests", None):
        fixture = {"schema": SCHEMA, "kind": "fixture", "input": inp, "degree": N,
                   "product_forms": {k: v.to_json() for k, v in results.forms.items()},
                   "expansions": {k: v.to_json() for k, v in results.expansions.items()}}
        Path(args.emit_tests).write_text(serialize(fixture))
    return doc, code


def _parse_g(text: str) -> LaurentPoly:
    try:
        raw = Path(text).read_text() if Path(text).is_file() else text
    except OSError:
        raw = text
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"--g is neither a file nor JSON: {exc}") from None
    if isinstance(data, dict):
        data = data.get("polynomial", data.get("g"))
    return parse_polynomial(data)


def _agree(a, b) -> bool:
    if a.exact and b.exact:
        return a.value == b.value
    lower, other = (a, b) if not a.exact else (b, a)
    # a lower bound is consistent with anything at or above it
    return other.value >= lower.value


def cmd_order(inp: dict, args) -> tuple[dict, int]:
    if args.g is None:
        raise InvalidInputError("order requires --g")
    g = _parse_g(args.g)
    doc = _header("order", inp)
    doc["g"] = polynomial_to_json(g)
    N = args.degree if args.degree is not None else default_bound(1)
    B = args.bound if args.bound is not None else N + 1
    doc["bound"] = B
    newton = branch = None
    notes = []
    if "polynomial" in inp:
        data = toric_data(parse_polynomial(inp["polynomial"]))
        if args.facet is not None:
            normal = tuple(int(a) for a in args.facet.split(","))
        elif args.group is not None:
            normal = data.diagram.facets[args.group - 1].normal
        elif data.r == 1:
            normal = data.diagram.facets[0].normal
        else:
            raise InvalidInputError("several facets: choose one with --facet a1,a2")
        try:
            facet = data.diagram.facet_by_normal(normal)
        except KeyError:
            raise InvalidInputError(f"no facet with normal {normal}") from None
        doc["facet"] = facet_to_json(facet)
        newton = newton_order(g, data.f, facet, B)
        if g.is_polynomial():
            reduced_facet = diagram_of(data.reduced).facet_by_normal(normal)
            try:
                # exact to t^(B-1), so an uncertified order reads as ">= B"
                branches = puiseux_lift(data.reduced, reduced_facet, max(B - 1, 1))
                branch = group_order(g, branches)
            except IrrationalRootError as exc:
                notes.append(f"branch route skipped: {exc}")
        else:
            notes.append("branch route needs a polynomial g")
    elif "branch_groups" in inp:
        groups = parse_branch_groups(inp["branch_groups"])
        i = args.group or 1
        if not 1 <= i <= len(groups):
            raise InvalidInputError(f"group {i} does not exist")
        branch = group_order(g, groups[i - 1])
        doc["group"] = i
    else:
        raise InvalidInputError("order requires polynomial or branch_groups input")
    code = EXIT_OK
    if newton is not None:
        doc["newton_order"] = {**newton.to_json(), "text": str(newton)}
    if branch is not None:
        doc["group_order"] = {**branch.to_json(), "text": str(branch)}
    if newton is not None and branch is not None:
        doc["agree"] = _agree(newton, branch)
        if not doc["agree"]:
            code = EXIT_MISMATCH
    doc["notes"] = notes
    return doc, code


def render_text(doc: dict) -> str:
    lines = [f"# {doc['command']} ({doc['schema']}, version {doc['version']})"]
    if "diagram" in doc:
        lines.append("facets:")
        for fc in doc["diagram"]["facets"]:
            lines.append(f"  normal ({fc['normal'][0]},{fc['normal'][1]})  c={fc['constant']}"
                         f"  length={fc['integer_length']}  endpoints={fc['endpoints']}")
        if not doc["diagram"]["facets"]:
            lines.append("  (none)")
    if "nondegenerate" in doc:
        lines.append(f"nondegenerate: {str(doc['nondegenerate']).lower()}")
    if "rays" in doc:
        lines.append("rays: " + " ".join(f"({a},{b})" for a, b in doc["rays"]))
    if "multiplicity_matrix" in doc:
        lines.append(f"multiplicity matrix: {doc['multiplicity_matrix']}")
    for name, form in doc.get("product_forms", {}).items():
        lines.append(f"{name}: {form['text']}")
    for name, s in doc.get("expansions", {}).items():
        lines.append(f"{name} (box {s['bound']}): {s['text']}")
    if "comparison" in doc:
        cmp = doc["comparison"]
        lines.append(f"verdict: {cmp['verdict']}")
        for mm in cmp["mismatches"]:
            lines.append(f"  {mm['methods'][0]} vs {mm['methods'][1]} differ at {mm['exponent']}")
    if "newton_order" in doc:
        lines.append(f"newton order: {doc['newton_order']['text']}")
    if "group_order" in doc:
        lines.append(f"branch order: {doc['group_order']['text']}")
    if "agree" in doc:
        lines.append(f"agree: {str(doc['agree']).lower()}")
    for w in doc.get("warnings", []) + doc.get("notes", []):
        lines.append(f"warning: {w}")
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divisor-series",
        description="Poincaré series of generalized divisorial filtrations on plane curves.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="JSON input file ('-' for stdin)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--output", help="also write the result document to this file")
        p.add_argument("--degree", type=int, help="box bound N for series expansions")

    p = sub.add_parser("facets", help="Newton diagram facets and nondegeneracy")
    common(p)
    p = sub.add_parser("poincare", help="Poincaré series by closed formula and/or oracle")
    common(p)
    p.add_argument("--method", choices=METHODS, default="compare")
    p.add_argument("--truncation", type=int, help="Puiseux truncation (default: degree)")
    p.add_argument("--emit-tests", metavar="PATH", help="dump forms and expansions as a fixture")
    p = sub.add_parser("order", help="order function of g along a facet or branch group")
    common(p)
    p.add_argument("--g", help="g as JSON monomial list (or a file containing it)")
    p.add_argument("--facet", help="facet normal 'a1,a2'")
    p.add_argument("--group", type=int, help="branch group index (1-based)")
    p.add_argument("--bound", type=int, help="reduction bound B (default: degree + 1)")
    return parser


COMMANDS = {"facets": cmd_facets, "poincare": cmd_poincare, "order": cmd_order}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        inp = load_input(text)
        doc, code = COMMANDS[args.command](inp, args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    out = serialize(doc) if args.format == "json" else render_text(doc)
    sys.stdout.write(out)
    if args.output:
        Path(args.output).write_text(serialize(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
