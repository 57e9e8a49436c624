"""End-to-end computations used by the CLI and the acceptance suite."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateError, InvalidInputError
from .newton import LaurentPoly, NewtonDiagram, degenerate_facets, diagram_of
from .orders import BranchGroup, puiseux_lift
from .poincare import (FiltrationBox, corollary_series, ijm_series, oracle_series,
                       theorem1_series)
from .resolution import (MultiplicityMatrix, ResolutionGraph, Ray, multiplicity_matrix,
                         resolve_diagram)
from .series import ProductForm, TruncatedSeries, expand, first_difference

DEFAULT_BOUNDS = {1: 12, 2: 6}


def default_bound(r: int) -> int:
    return DEFAULT_BOUNDS.get(r, 4)


@dataclass
class ToricData:
    f: LaurentPoly
    diagram: NewtonDiagram
    reduced: LaurentPoly  # f with the monomial factor x^a y^b removed
    rays: list[Ray]
    graph: ResolutionGraph
    mult: MultiplicityMatrix

    @property
    def r(self) -> int:
        return len(self.diagram.facets)


def toric_data(f: LaurentPoly) -> ToricData:
    if f.is_zero():
        raise InvalidInputError("f is zero")
    if not f.is_polynomial():
        raise InvalidInputError("f must have non-negative exponents")
    diagram = diagram_of(f)
    if not diagram.facets:
        raise InvalidInputError("f is a monomial; its Newton diagram has no facets")
    bad = degenerate_facets(f, diagram)
    if bad:
        raise DegenerateError(f"f is degenerate on the facet with normal {bad[0].normal}", bad[0])
    a, b = diagram.monomial_factor
    rays, graph = resolve_diagram(diagram)
    return ToricData(f, diagram, f.shift(-a, -b), rays, graph, multiplicity_matrix(graph))


def polynomial_groups(data: ToricData, truncation: int) -> list[BranchGroup]:
    reduced = diagram_of(data.reduced)
    return [BranchGroup(i + 1, puiseux_lift(data.reduced, fc, truncation))
            for i, fc in enumerate(reduced.facets)]


@dataclass
class SeriesResults:
    r: int
    bound: int
    forms: dict[str, ProductForm] = field(default_factory=dict)
    expansions: dict[str, TruncatedSeries] = field(default_factory=dict)

    def add_form(self, name: str, form: ProductForm):
        self.forms[name] = form
        self.expansions[name] = expand(form, self.bound)

    def add_series(self, name: str, s: TruncatedSeries):
        self.expansions[name] = s

    def verdict(self) -> dict:
        """Pairwise check of every available expansion against the first one."""
        names = list(self.expansions)
        if len(names) < 2:
            return {"verdict": "n/a", "methods": names, "mismatches": []}
        ref = self.expansions[names[0]]
        mismatches = []
        for other in names[1:]:
            v = first_difference(ref, self.expansions[other])
            if v is not None:
                mismatches.append({"methods": [names[0], other], "exponent": list(v),
                                   names[0]: ref[v], other: self.expansions[other][v]})
        return {"verdict": "agree" if not mismatches else "mismatch", "methods": names,
                "mismatches": mismatches}


def formula_forms(graph: ResolutionGraph, mult: MultiplicityMatrix,
                  diagram: NewtonDiagram | None = None) -> dict[str, ProductForm]:
    forms = {"theorem1": theorem1_series(graph, mult)}
    if diagram is not None:
        forms["corollary"] = corollary_series(diagram, graph, mult)
    if all(v.marked_s == 1 for v in graph.marked):
        forms["ijm"] = ijm_series(graph, mult)
    return forms


def oracle_for_groups(groups, bound: int, workers: int | None = None) -> TruncatedSeries:
    return oracle_series(FiltrationBox.from_groups(groups, bound), workers=workers)
