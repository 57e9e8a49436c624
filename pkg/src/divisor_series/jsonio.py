"""JSON input parsing and canonical output for the ``divisor-series/1`` schema."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import InvalidInputError
from .newton import Facet, LaurentPoly, NewtonDiagram
from .orders import Branch, BranchGroup, PowerSeries1
from .resolution import ResolutionGraph, Vertex

SCHEMA = "divisor-series/1"


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InvalidInputError(f"coefficient {value!r} is not a decimal or fraction string")


def format_rational(q: Fraction) -> str:
    return str(q)


def parse_polynomial(data) -> LaurentPoly:
    if not isinstance(data, list):
        raise InvalidInputError("polynomial must be a list of {exp, coef} objects")
    terms = []
    for item in data:
        try:
            kx, ky = item["exp"]
            coef = item["coef"]
        except (KeyError, TypeError, ValueError):
            raise InvalidInputError(f"bad monomial entry {item!r}") from None
        if not all(isinstance(k, int) and not isinstance(k, bool) for k in (kx, ky)):
            raise InvalidInputError(f"exponents must be integers: {item!r}")
        terms.append(((kx, ky), parse_rational(coef)))
    return LaurentPoly(terms)


def polynomial_to_json(p: LaurentPoly) -> list:
    return [{"exp": [i, j], "coef": format_rational(c)} for (i, j), c in p]


def parse_graph(data) -> ResolutionGraph:
    try:
        vertices = [Vertex(v["id"], int(v["self_intersection"]), int(v.get("marked_s", 0)))
                    for v in data["vertices"]]
        edges = [frozenset(e) for e in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed resolution_graph: {exc}") from None
    for e in edges:
        if len(e) != 2:
            raise InvalidInputError("edges must join two distinct vertices")
    return ResolutionGraph(tuple(vertices), frozenset(edges))


def graph_to_json(g: ResolutionGraph) -> dict:
    vertices = []
    for v in g.vertices:
        d = {"id": v.id, "self_intersection": v.self_intersection, "marked_s": v.marked_s,
             "chi": g.chi(v.id)}
        if v.ray is not None:
            d["ray"] = list(v.ray)
        vertices.append(d)
    order = {vid: i for i, vid in enumerate(g.ids)}
    edges = sorted((sorted(e, key=order.get) for e in g.edges),
                   key=lambda e: (order[e[0]], order[e[1]]))
    return {"vertices": vertices, "edges": [list(e) for e in edges]}


def _parse_series(data, truncation: int) -> PowerSeries1:
    if not isinstance(data, list):
        raise InvalidInputError("series must be a list of [exponent, coefficient] pairs")
    items = []
    for pair in data:
        try:
            e, c = pair
        except (TypeError, ValueError):
            raise InvalidInputError(f"bad series term {pair!r}") from None
        if not isinstance(e, int) or e < 0:
            raise InvalidInputError(f"series exponent must be a non-negative integer: {e!r}")
        items.append((e, parse_rational(c)))
    return PowerSeries1(items, truncation)


def parse_branch_groups(data) -> list[BranchGroup]:
    if not isinstance(data, list) or not data:
        raise InvalidInputError("branch_groups must be a non-empty list")
    groups = []
    for i, g in enumerate(data, start=1):
        try:
            raw = g["branches"]
            default_t = g.get("truncation")
            branches = []
            for b in raw:
                T = b.get("truncation", default_t)
                if not isinstance(T, int):
                    raise InvalidInputError("every branch needs an integer truncation")
                branches.append(Branch(_parse_series(b["x"], T), _parse_series(b["y"], T)))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidInputError(f"malformed branch group {i}: {exc}") from None
        groups.append(BranchGroup(i, tuple(branches)))
    return groups


def series1_to_json(s: PowerSeries1) -> list:
    return [[e, format_rational(c)] for e, c in s.coeffs.items()]


def branch_to_json(b: Branch) -> dict:
    return {"x": series1_to_json(b.x), "y": series1_to_json(b.y), "truncation": b.truncation}


def groups_to_json(groups) -> list:
    return [{"branches": [branch_to_json(b) for b in g.branches]} for g in groups]


def facet_to_json(fc: Facet) -> dict:
    return {"normal": list(fc.normal), "constant": fc.constant,
            "endpoints": [list(fc.start), list(fc.end)], "integer_length": fc.integer_length}


def diagram_to_json(d: NewtonDiagram) -> dict:
    return {"facets": [facet_to_json(fc) for fc in d.facets],
            "monomial_factor": list(d.monomial_factor),
            "vertices": [list(v) for v in d.vertices]}


def load_input(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"input is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidInputError("input must be a JSON object")
    if "schema" in doc and doc["schema"] != SCHEMA:
        raise InvalidInputError(f"unsupported schema {doc['schema']!r}; expected {SCHEMA!r}")
    kinds = [k for k in ("polynomial", "resolution_graph", "branch_groups") if k in doc]
    if not kinds:
        raise InvalidInputError("input needs one of polynomial, resolution_graph, branch_groups")
    if "polynomial" in doc and len(kinds) > 1:
        raise InvalidInputError("polynomial input cannot be combined with other curve data")
    return doc


def serialize(doc: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse(text: str) -> Any:
    return json.loads(text)
