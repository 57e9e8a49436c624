"""Newton diagrams of plane curve germs and Laurent polynomials in x, y.

Facets are ordered by increasing ``a2/a1`` of their primitive normal, i.e.
from the steep end (near the y axis) to the flat end (near the x axis).
That order fixes the index of every order function downstream.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, NamedTuple

from . import upoly

INFINITY = math.inf


class LatticePoint(NamedTuple):
    kx: int
    ky: int


def _grlex(e: tuple[int, int]):
    return (e[0] + e[1], e[0])


class LaurentPoly:
    """Finite sum of ``c * x^i * y^j`` with rational ``c`` and integer ``i, j``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], Fraction] = {}
        for exp, c in items:
            e = (int(exp[0]), int(exp[1]))
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        self._terms = {e: acc[e] for e in sorted(acc, key=_grlex) if acc[e] != 0}
        self._hash = None

    @classmethod
    def monomial(cls, kx: int, ky: int, coef=1) -> "LaurentPoly":
        return cls({(kx, ky): coef})

    @classmethod
    def x(cls) -> "LaurentPoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "LaurentPoly":
        return cls.monomial(0, 1)

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> frozenset[LatticePoint]:
        return frozenset(LatticePoint(*e) for e in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        return all(i >= 0 and j >= 0 for i, j in self._terms)

    def total_degree(self) -> int:
        return max((i + j for i, j in self._terms), default=0)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({(0, 0): other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly({(0, 0): other})

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LaurentPoly({(0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def shift(self, dx: int, dy: int) -> "LaurentPoly":
        return LaurentPoly({(i + dx, j + dy): c for (i, j), c in self._terms.items()})

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for (i, j), c in p.items():
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in (("x", i), ("y", j)) if k != 0)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class Facet:
    """Compact edge of a Newton diagram with reduced equation ``a1*kx + a2*ky = c``."""

    normal: tuple[int, int]
    constant: int
    start: LatticePoint  # endpoint with the smaller kx
    end: LatticePoint
    integer_length: int

    def __post_init__(self):
        a1, a2 = self.normal
        if a1 <= 0 or a2 <= 0 or gcd(a1, a2) != 1:
            raise ValueError(f"facet normal {self.normal} is not primitive positive")
        if self.ell(self.start) != self.constant or self.ell(self.end) != self.constant:
            raise ValueError("facet endpoints do not lie on the facet line")

    def ell(self, k) -> int:
        return self.normal[0] * k[0] + self.normal[1] * k[1]

    @property
    def endpoints(self) -> tuple[LatticePoint, LatticePoint]:
        return (self.start, self.end)

    def lattice_points(self) -> list[LatticePoint]:
        s = self.integer_length
        dx = (self.end.kx - self.start.kx) // s
        dy = (self.end.ky - self.start.ky) // s
        return [LatticePoint(self.start.kx + t * dx, self.start.ky + t * dy) for t in range(s + 1)]


@dataclass(frozen=True)
class NewtonDiagram:
    support: frozenset
    facets: tuple[Facet, ...]
    monomial_factor: LatticePoint

    @property
    def vertices(self) -> list[LatticePoint]:
        if not self.facets:
            return [min(self.support)] if self.support else []
        return [self.facets[0].start] + [fc.end for fc in self.facets]

    def facet_by_normal(self, normal) -> Facet:
        normal = tuple(normal)
        for fc in self.facets:
            if fc.normal == normal:
                return fc
        raise KeyError(f"no facet with normal {normal}")


def build_diagram(support: Iterable) -> NewtonDiagram:
    """Newton diagram of a finite support set in Z_{>=0}^2."""
    pts = {LatticePoint(int(k[0]), int(k[1])) for k in support}
    if not pts:
        raise ValueError("empty support")
    if any(p.kx < 0 or p.ky < 0 for p in pts):
        raise ValueError("diagram support must be non-negative")
    mono = LatticePoint(min(p.kx for p in pts), min(p.ky for p in pts))

    lowest: dict[int, int] = {}
    for p in pts:
        lowest[p.kx] = min(lowest.get(p.kx, p.ky), p.ky)
    ymin = min(lowest.values())
    x_end = min(kx for kx, ky in lowest.items() if ky == ymin)
    chain = sorted(LatticePoint(kx, ky) for kx, ky in lowest.items() if kx <= x_end)

    hull: list[LatticePoint] = []
    for p in chain:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a.kx - o.kx) * (p.ky - o.ky) - (a.ky - o.ky) * (p.kx - o.kx)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)

    facets = []
    for p, q in zip(hull, hull[1:]):
        dx, dy = q.kx - p.kx, q.ky - p.ky
        s = gcd(dx, -dy)
        normal = (-dy // s, dx // s)
        facets.append(Facet(normal, normal[0] * p.kx + normal[1] * p.ky, p, q, s))
    return NewtonDiagram(frozenset(pts), tuple(facets), mono)


def diagram_of(f: LaurentPoly) -> NewtonDiagram:
    return build_diagram(f.support())


def facet_value(g: LaurentPoly, facet: Facet):
    """Minimum of the facet's linear form over the support of ``g`` (inf for g = 0)."""
    if g.is_zero():
        return INFINITY
    return min(facet.ell(e) for e, _ in g)


def face_part(g: LaurentPoly, facet: Facet) -> LaurentPoly:
    u = facet_value(g, facet)
    return LaurentPoly({e: c for e, c in g if facet.ell(e) == u})


def dehomogenize(p: LaurentPoly, facet: Facet) -> tuple[tuple[int, int], tuple]:
    """Write a quasihomogeneous ``p`` as ``x^a y^b P(w)`` with ``w = x^a2 y^-a1``.

    Returns ``((a, b), P)`` where ``P`` has a nonzero constant term.
    """
    if p.is_zero():
        raise ValueError("cannot dehomogenize the zero polynomial")
    values = {facet.ell(e) for e, _ in p}
    if len(values) != 1:
        raise ValueError("polynomial is not quasihomogeneous for this facet")
    a1, a2 = facet.normal
    base = min(e for e, _ in p)
    coeffs: dict[int, Fraction] = {}
    for (i, j), c in p:
        k = (i - base[0]) // a2
        # quasihomogeneity forces the exponent offset to be k * (a2, -a1)
        assert (i - base[0], j - base[1]) == (k * a2, -k * a1)
        coeffs[k] = c
    return base, upoly.make(coeffs.get(k, 0) for k in range(max(coeffs) + 1))


def rehomogenize(monomial: tuple[int, int], poly, facet: Facet) -> LaurentPoly:
    a1, a2 = facet.normal
    return LaurentPoly({(monomial[0] + k * a2, monomial[1] - k * a1): c
                        for k, c in enumerate(poly) if c})


def degenerate_facets(f: LaurentPoly, diagram: NewtonDiagram | None = None) -> list[Facet]:
    diagram = diagram or diagram_of(f)
    return [fc for fc in diagram.facets
            if not upoly.is_squarefree(dehomogenize(face_part(f, fc), fc)[1])]


def check_nondegenerate(f: LaurentPoly, diagram: NewtonDiagram | None = None) -> bool:
    return not degenerate_facets(f, diagram)


def translated_facet_min(facet: Facet, other: Facet) -> int:
    """Minimum of ``other``'s linear form over ``facet`` pushed into the corner.

    The segment is translated so that it touches both coordinate axes; the
    minimum of a linear form on a segment is attained at an endpoint.
    """
    top = LatticePoint(0, facet.start.ky - facet.end.ky)
    bottom = LatticePoint(facet.end.kx - facet.start.kx, 0)
    return min(other.ell(top), other.ell(bottom))
