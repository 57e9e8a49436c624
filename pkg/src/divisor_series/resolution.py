"""Resolution graphs: toric chains from Newton diagrams and direct input.

A toric resolution of a Newton non-degenerate germ is described by a smooth
subdivision of the positive quadrant; its exceptional curves correspond to
the interior rays and form a chain.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence

from . import linalg
from .errors import InvalidInputError, MalformedGraphError
from .newton import NewtonDiagram

Ray = tuple[int, int]


def _det(u: Ray, v: Ray) -> int:
    return u[0] * v[1] - u[1] * v[0]


def subdivide_fan(targets: Iterable[Ray]) -> list[Ray]:
    """Smooth subdivision of the quadrant containing every target ray.

    Rays run from (1, 0) to (0, 1). Targets are reached by inserting the
    mediant of the two rays bounding the cone that contains them.
    """
    targets = {tuple(map(int, t)) for t in targets}
    for a1, a2 in targets:
        if a1 <= 0 or a2 <= 0 or gcd(a1, a2) != 1:
            raise InvalidInputError(f"target ray {(a1, a2)} is not primitive and positive")
    rays: list[Ray] = [(1, 0), (0, 1)]
    for t in sorted(targets, key=lambda r: Fraction(r[1], r[0])):
        while t not in rays:
            k = next(k for k in range(len(rays) - 1)
                     if _det(rays[k], t) > 0 and _det(t, rays[k + 1]) > 0)
            u, v = rays[k], rays[k + 1]
            rays.insert(k + 1, (u[0] + v[0], u[1] + v[1]))
    return rays


def insert_mediant(rays: Sequence[Ray], k: int) -> list[Ray]:
    """Refine the fan by the mediant of ``rays[k]`` and ``rays[k+1]``."""
    u, v = rays[k], rays[k + 1]
    return list(rays[:k + 1]) + [(u[0] + v[0], u[1] + v[1])] + list(rays[k + 1:])


@dataclass(frozen=True)
class Vertex:
    id: Hashable
    self_intersection: int
    marked_s: int = 0
    ray: Ray | None = None


@dataclass(frozen=True)
class ResolutionGraph:
    vertices: tuple[Vertex, ...]
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges",
                           frozenset(frozenset(e) for e in self.edges))
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise MalformedGraphError("duplicate vertex ids")
        known = set(ids)
        for e in self.edges:
            if len(e) != 2 or not e <= known:
                raise MalformedGraphError(f"bad edge {sorted(map(str, e))}")

    @property
    def ids(self) -> list:
        return [v.id for v in self.vertices]

    def index(self, vid) -> int:
        return self.ids.index(vid)

    def vertex(self, vid) -> Vertex:
        return self.vertices[self.index(vid)]

    def neighbours(self, vid) -> list:
        return [w for e in self.edges if vid in e for w in e if w != vid]

    def degree(self, vid) -> int:
        return sum(1 for e in self.edges if vid in e)

    def chi(self, vid) -> int:
        """Euler characteristic of the component minus its double points."""
        return 2 - self.degree(vid)

    def chi_open(self, vid) -> int:
        """As :meth:`chi`, additionally minus the points of the strict transform."""
        return self.chi(vid) - self.vertex(vid).marked_s

    @property
    def marked(self) -> list[Vertex]:
        return [v for v in self.vertices if v.marked_s >= 1]

    @property
    def r(self) -> int:
        return len(self.marked)

    def intersection_matrix(self) -> list[list[int]]:
        ids = self.ids
        pos = {vid: i for i, vid in enumerate(ids)}
        M = [[0] * len(ids) for _ in ids]
        for i, v in enumerate(self.vertices):
            M[i][i] = v.self_intersection
        for e in self.edges:
            a, b = tuple(e)
            M[pos[a]][pos[b]] = M[pos[b]][pos[a]] = 1
        return M

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0].id}
        todo = deque(seen)
        while todo:
            for w in self.neighbours(todo.popleft()):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def rays(self) -> list[Ray]:
        return [v.ray for v in self.vertices]


def ray_id(ray: Ray) -> str:
    return f"{ray[0]},{ray[1]}"


def toric_chain(rays: Sequence[Ray], marks: Mapping[Ray, int] | None = None) -> ResolutionGraph:
    """Chain of exceptional curves of the smooth fan ``rays``."""
    rays = [tuple(r) for r in rays]
    marks = dict(marks or {})
    if rays[0] != (1, 0) or rays[-1] != (0, 1):
        raise MalformedGraphError("ray sequence must run from (1,0) to (0,1)")
    for u, v in zip(rays, rays[1:]):
        if _det(u, v) != 1:
            raise MalformedGraphError(f"cone {u},{v} is not unimodular")
    missing = set(marks) - set(rays[1:-1])
    if missing:
        raise MalformedGraphError(f"marked rays {sorted(missing)} are not interior rays")
    vertices = []
    for prev, ray, nxt in zip(rays, rays[1:], rays[2:]):
        sx, sy = prev[0] + nxt[0], prev[1] + nxt[1]
        c = sx // ray[0] if ray[0] else sy // ray[1]
        if c <= 0 or (c * ray[0], c * ray[1]) != (sx, sy):
            raise MalformedGraphError(f"neighbours of ray {ray} do not sum to a positive multiple")
        vertices.append(Vertex(ray_id(ray), -c, marks.get(ray, 0), ray))
    edges = {frozenset((a.id, b.id)) for a, b in zip(vertices, vertices[1:])}
    return ResolutionGraph(tuple(vertices), frozenset(edges))


def chain_graph(rays: Sequence[Ray], diagram: NewtonDiagram) -> ResolutionGraph:
    marks = {fc.normal: fc.integer_length for fc in diagram.facets}
    return toric_chain(rays, marks)


def resolve_diagram(diagram: NewtonDiagram) -> tuple[list[Ray], ResolutionGraph]:
    rays = subdivide_fan(fc.normal for fc in diagram.facets)
    return rays, chain_graph(rays, diagram)


@dataclass(frozen=True)
class MultiplicityMatrix:
    """Minus the inverse of the intersection matrix, indexed like the graph."""

    ids: tuple
    m: tuple[tuple[int, ...], ...]
    marked: tuple  # ids of the marked vertices, in order 1..r

    def entry(self, a, b) -> int:
        return self.m[self.ids.index(a)][self.ids.index(b)]

    def vector(self, vid) -> tuple[int, ...]:
        """Row of ``vid`` restricted to the marked columns."""
        row = self.m[self.ids.index(vid)]
        return tuple(row[self.ids.index(j)] for j in self.marked)

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.m]


def multiplicity_matrix(graph: ResolutionGraph) -> MultiplicityMatrix:
    M = graph.intersection_matrix()
    negM = [[-a for a in row] for row in M]
    minors = linalg.leading_minors(negM)
    for k, d in enumerate(minors, start=1):
        if d <= 0:
            raise MalformedGraphError(
                f"intersection matrix is not negative definite: leading minor of order {k} "
                f"of -M is {d} (through vertex {graph.ids[k - 1]!r})")
    inv = linalg.inverse(negM)
    n = len(inv)
    for i in range(n):
        for j in range(n):
            a = inv[i][j]
            if a.denominator != 1 or a <= 0:
                raise MalformedGraphError(
                    f"multiplicity m[{graph.ids[i]!r}][{graph.ids[j]!r}] = {a} is not a "
                    "positive integer")
            if a != inv[j][i]:
                raise MalformedGraphError("multiplicity matrix is not symmetric")
    m = tuple(tuple(int(a) for a in row) for row in inv)
    check = linalg.matmul(negM, m)
    assert all(check[i][j] == (i == j) for i in range(n) for j in range(n))
    return MultiplicityMatrix(tuple(graph.ids), m, tuple(v.id for v in graph.marked))


def validate_graph(graph: ResolutionGraph) -> ResolutionGraph:
    """Check that ``graph`` can be the dual graph of a resolution of (C^2, 0)."""
    if not graph.vertices:
        raise MalformedGraphError("graph has no vertices")
    for v in graph.vertices:
        if v.self_intersection >= 0:
            raise MalformedGraphError(f"vertex {v.id!r} has non-negative self-intersection")
        if v.marked_s < 0:
            raise MalformedGraphError(f"vertex {v.id!r} has negative marking")
    if not graph.is_connected():
        raise MalformedGraphError("graph is disconnected")
    if len(graph.edges) != len(graph.vertices) - 1:
        raise MalformedGraphError("graph is not a tree; the Euler characteristics "
                                  "2 - degree would be meaningless")
    multiplicity_matrix(graph)
    edges = frozenset(frozenset(e) for e in graph.edges)
    return ResolutionGraph(graph.vertices, edges)
