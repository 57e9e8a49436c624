"""Poincaré series of generalized divisorial filtrations.

Closed forms are built from the resolution data; the oracle instead counts
Euler characteristics of projectivized jet strata directly from branch
parametrizations. The two never share code beyond series expansion.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Sequence

from . import linalg
from .errors import InvalidInputError, TruncationError
from .newton import NewtonDiagram
from .orders import BranchGroup, PowerSeries1
from .resolution import MultiplicityMatrix, ResolutionGraph
from .series import ProductForm, TruncatedSeries, expand, first_difference


def theorem1_series(graph: ResolutionGraph, m: MultiplicityMatrix) -> ProductForm:
    """``prod (1 - t^m_sigma)^-chi(E_sigma) * prod_i (1 - t^(s_i m_i))``."""
    marked = graph.marked
    if not marked:
        raise InvalidInputError("resolution graph has no marked vertices")
    r = len(marked)
    factors = []
    for v in graph.vertices:
        chi = graph.chi(v.id)
        if chi:
            factors.append((m.vector(v.id), -chi))
    for v in marked:
        factors.append((tuple(v.marked_s * a for a in m.vector(v.id)), 1))
    return ProductForm(r, factors)


def ijm_series(graph: ResolutionGraph, m: MultiplicityMatrix) -> ProductForm:
    """Special case where every marked component meets a single branch."""
    marked = graph.marked
    if not marked:
        raise InvalidInputError("resolution graph has no marked vertices")
    bad = [v.id for v in marked if v.marked_s != 1]
    if bad:
        raise InvalidInputError(f"vertices {bad} meet more than one branch")
    return ProductForm(len(marked), ((m.vector(v.id), -graph.chi_open(v.id))
                                     for v in graph.vertices if graph.chi_open(v.id)))


def corollary_series(diagram: NewtonDiagram, graph: ResolutionGraph,
                     m: MultiplicityMatrix) -> ProductForm:
    """Newton-diagram form: numerator from the facets, denominators v(x), v(y)."""
    if not diagram.facets:
        raise InvalidInputError("Newton diagram has no facets")
    marked = graph.marked
    if [v.ray for v in marked] != [fc.normal for fc in diagram.facets]:
        raise InvalidInputError("graph is not the toric chain of this diagram")
    r = len(marked)
    vx = tuple(fc.normal[0] for fc in diagram.facets)
    vy = tuple(fc.normal[1] for fc in diagram.facets)
    factors = [(tuple(fc.integer_length * a for a in m.vector(v.id)), 1)
               for fc, v in zip(diagram.facets, marked)]
    factors += [(vx, -1), (vy, -1)]
    return ProductForm(r, factors)


@dataclass(frozen=True)
class JetSpace:
    """Polynomials of total degree at most ``M`` with their monomial basis."""

    M: int

    @cached_property
    def basis(self) -> tuple[tuple[int, int], ...]:
        return tuple((p, d - p) for d in range(self.M + 1) for p in range(d, -1, -1))

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class FiltrationBox:
    r: int
    N: int
    groups: tuple[BranchGroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        if len(self.groups) != self.r:
            raise InvalidInputError(f"expected {self.r} branch groups, got {len(self.groups)}")
        if [g.index for g in self.groups] != list(range(1, self.r + 1)):
            raise InvalidInputError("branch groups must be indexed 1..r in order")
        low = min(g.truncation for g in self.groups)
        if low < self.N:
            raise TruncationError(
                f"branch truncation {low} is below the box bound {self.N}; "
                f"supply branches exact to t^{self.N}", required=self.N)

    @classmethod
    def from_groups(cls, groups: Sequence[BranchGroup], N: int) -> "FiltrationBox":
        return cls(len(groups), N, tuple(groups))


class _ConditionCache:
    """Coefficients of ``monomial o branch`` for each basis monomial and branch."""

    def __init__(self, box: FiltrationBox, jets: JetSpace, depth: int):
        self.columns = {}
        for gi, group in enumerate(box.groups):
            for bj, branch in enumerate(group.branches):
                T = min(depth, branch.truncation)
                xs, ys = branch.x.truncate(T), branch.y.truncate(T)
                xpow, ypow = [PowerSeries1({0: 1}, T)], [PowerSeries1({0: 1}, T)]
                for _ in range(jets.M):
                    xpow.append(xpow[-1] * xs)
                    ypow.append(ypow[-1] * ys)
                cols = [(xpow[p] * ypow[q])._c for p, q in jets.basis]
                self.columns[gi, bj] = (T, cols)


def _condition_rows(box: FiltrationBox, v: Sequence[int], jets: JetSpace,
                    cache: _ConditionCache) -> list[list]:
    rows = []
    for gi, group in enumerate(box.groups):
        for bj, branch in enumerate(group.branches):
            need = v[gi]
            if need == 0:
                continue
            T, cols = cache.columns[gi, bj]
            if T < need - 1:
                raise TruncationError(
                    f"branch {bj + 1} of group {gi + 1} is exact only to t^{T}; "
                    f"t^{need - 1} is required", required=need - 1)
            for k in range(need):
                rows.append([col[k] for col in cols])
    return rows


def jet_codim(box: FiltrationBox, v: Sequence[int], jets: JetSpace,
              cache: _ConditionCache | None = None) -> int:
    """Number of independent linear conditions ``v(g) >= v`` imposes on jets."""
    v = tuple(int(a) for a in v)
    if len(v) != box.r:
        raise InvalidInputError("arity mismatch")
    if any(a > jets.M + 1 for a in v):
        raise InvalidInputError(f"order {max(v)} exceeds what {jets.M}-jets determine")
    cache = cache or _ConditionCache(box, jets, max(v) - 1 if any(v) else 0)
    return linalg.rank(_condition_rows(box, v, jets, cache))


def jet_dim(box: FiltrationBox, v: Sequence[int], jets: JetSpace,
            cache: _ConditionCache | None = None) -> int:
    """Dimension of ``{g : v(g) >= v}`` inside the space of ``M``-jets."""
    return jets.dimension - jet_codim(box, v, jets, cache)


_WORKER_STATE = {}


def _init_worker(box, jets, cache):
    _WORKER_STATE.update(box=box, jets=jets, cache=cache)


def _codim_task(v):
    s = _WORKER_STATE
    return v, jet_codim(s["box"], v, s["jets"], s["cache"])


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("DIVISOR_SERIES_THREADS", "1")))
    except ValueError:
        return 1


def oracle_series(box: FiltrationBox, workers: int | None = None) -> TruncatedSeries:
    """Poincaré series in the box from Euler characteristics of jet strata.

    The stratum ``{v(g) = v}`` is ``J(v)`` minus the union of ``J(v + e_i)``;
    since ``J(u) & J(w) = J(max(u, w))`` and the projectivization of a linear
    space of dimension d has Euler characteristic d, inclusion-exclusion gives
    the coefficient as an alternating sum of jet dimensions.
    """
    N, r = box.N, box.r
    jets = JetSpace(N)
    cache = _ConditionCache(box, jets, N)
    points = list(product(range(N + 2), repeat=r))
    workers = default_workers() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(box, jets, cache)) as ex:
            codim = dict(ex.map(_codim_task, points, chunksize=8))
    else:
        codim = {v: jet_codim(box, v, jets, cache) for v in points}
    dims = {v: jets.dimension - c for v, c in codim.items()}
    coeffs = {}
    for v in product(range(N + 1), repeat=r):
        total = 0
        for k in range(r + 1):
            for I in combinations(range(r), k):
                w = tuple(a + (1 if i in I else 0) for i, a in enumerate(v))
                total += (-1) ** k * dims[w]
        coeffs[v] = total
    return TruncatedSeries(r, N, coeffs)


@dataclass(frozen=True)
class ComparisonReport:
    agree: bool
    bound: int
    first_mismatch: tuple | None = None
    formula_coefficient: int | None = None
    oracle_coefficient: int | None = None

    def to_json(self) -> dict:
        out = {"agree": self.agree, "bound": self.bound}
        if not self.agree:
            out.update(first_mismatch=list(self.first_mismatch),
                       formula_coefficient=self.formula_coefficient,
                       oracle_coefficient=self.oracle_coefficient)
        return out

    def __str__(self):
        if self.agree:
            return f"agree (box {self.bound})"
        return (f"mismatch at exponent {self.first_mismatch}: formula "
                f"{self.formula_coefficient}, oracle {self.oracle_coefficient}")


def compare(formula: ProductForm | TruncatedSeries, oracle: TruncatedSeries) -> ComparisonReport:
    if formula.r != oracle.r:
        raise InvalidInputError(f"arity mismatch: {formula.r} vs {oracle.r}")
    lhs = expand(formula, oracle.bound) if isinstance(formula, ProductForm) else formula
    N = min(lhs.bound, oracle.bound)
    v = first_difference(lhs, oracle)
    if v is None:
        return ComparisonReport(True, N)
    return ComparisonReport(False, N, v, lhs[v], oracle[v])
