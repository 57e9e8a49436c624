"""Order functions attached to the facets of a Newton diagram.

Two independent routes are provided:

* :func:`newton_order` works purely on exponents: it repeatedly cancels the
  face part of ``g`` against that of ``f`` using Laurent multipliers until
  the face parts stop being divisible.
* :func:`group_order` composes ``g`` with truncated Puiseux parametrizations
  of the branches of ``f`` and takes the minimum of the orders in ``t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import upoly
from .errors import DegenerateError, InvalidInputError, IrrationalRootError
from .newton import (Facet, LaurentPoly, dehomogenize, face_part, facet_value,
                     rehomogenize)

__all__ = [
    "OrderValue", "INFINITE", "finite", "at_least", "min_order",
    "PowerSeries1", "Branch", "BranchGroup", "dehomogenize", "face_divide",
    "reduction_steps", "newton_order", "branch_order", "group_order", "puiseux_lift",
]


@dataclass(frozen=True)
class OrderValue:
    """Either an exact order (``exact=True``) or a lower bound ``>= value``.

    A lower bound is only produced when a truncation or iteration bound was
    hit; the true value may be infinite.
    """

    value: int | float
    exact: bool = True

    @property
    def is_infinite(self) -> bool:
        return self.value == math.inf

    def __str__(self):
        if self.exact:
            return "inf" if self.is_infinite else str(self.value)
        return f">= {self.value} (possibly inf)"

    def to_json(self):
        if self.is_infinite:
            return {"kind": "infinite"}
        return {"kind": "finite" if self.exact else "at_least", "value": self.value}


INFINITE = OrderValue(math.inf)


def finite(n: int) -> OrderValue:
    return OrderValue(int(n))


def at_least(bound: int) -> OrderValue:
    return OrderValue(int(bound), exact=False)


def min_order(a: OrderValue, b: OrderValue) -> OrderValue:
    if a.exact and b.exact:
        return a if a.value <= b.value else b
    if a.exact:
        a, b = b, a
    # a is a lower bound
    if b.exact and b.value <= a.value:
        return b
    return at_least(min(a.value, b.value))


class PowerSeries1:
    """Power series in ``t`` known exactly up to ``t^truncation``."""

    __slots__ = ("_c", "truncation")

    def __init__(self, coeffs, truncation: int):
        if truncation < 0:
            raise ValueError("truncation must be non-negative")
        dense = [Fraction(0)] * (truncation + 1)
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for e, c in items:
            e = int(e)
            if e < 0:
                raise ValueError("power series exponents must be non-negative")
            if e <= truncation:
                dense[e] += Fraction(c)
        self._c = dense
        self.truncation = truncation

    @classmethod
    def _dense(cls, dense: list, truncation: int) -> "PowerSeries1":
        obj = cls.__new__(cls)
        obj._c = dense
        obj.truncation = truncation
        return obj

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {e: c for e, c in enumerate(self._c) if c}

    def __getitem__(self, e: int) -> Fraction:
        if e > self.truncation:
            raise IndexError("coefficient beyond truncation is unknown")
        return self._c[e]

    def order(self) -> int | None:
        """Index of the first nonzero coefficient, or None if zero to truncation."""
        return next((e for e, c in enumerate(self._c) if c), None)

    def is_zero(self) -> bool:
        return self.order() is None

    def __add__(self, other: "PowerSeries1") -> "PowerSeries1":
        T = min(self.truncation, other.truncation)
        return PowerSeries1._dense([self._c[i] + other._c[i] for i in range(T + 1)], T)

    def scale(self, c) -> "PowerSeries1":
        c = Fraction(c)
        return PowerSeries1._dense([a * c for a in self._c], self.truncation)

    def __mul__(self, other: "PowerSeries1") -> "PowerSeries1":
        T = min(self.truncation, other.truncation)
        a, b = self._c, other._c
        out = [Fraction(0)] * (T + 1)
        for i in range(T + 1):
            ai = a[i]
            if ai:
                for j in range(T + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return PowerSeries1._dense(out, T)

    def truncate(self, T: int) -> "PowerSeries1":
        if T > self.truncation:
            raise ValueError("cannot raise the truncation of a series")
        return PowerSeries1._dense(self._c[:T + 1], T)

    def __eq__(self, other):
        return (isinstance(other, PowerSeries1) and self.truncation == other.truncation
                and self._c == other._c)

    def __repr__(self):
        body = " + ".join(f"({c})*t^{e}" for e, c in self.coeffs.items()) or "0"
        return f"PowerSeries1({body} + O(t^{self.truncation + 1}))"


def _one(T: int) -> PowerSeries1:
    return PowerSeries1({0: 1}, T)


@dataclass(frozen=True, eq=False)
class Branch:
    x: PowerSeries1
    y: PowerSeries1

    def __post_init__(self):
        if self.x.truncation < 0 or self.y.truncation < 0:
            raise InvalidInputError("bad truncation")
        for s in (self.x, self.y):
            if s._c[0] != 0:
                raise InvalidInputError("branch components must vanish at t = 0")
        if self.x.is_zero() and self.y.is_zero():
            raise InvalidInputError("branch is identically zero up to truncation")

    @property
    def truncation(self) -> int:
        return min(self.x.truncation, self.y.truncation)

    def key(self):
        T = self.truncation
        return (tuple(self.x._c[:T + 1]), tuple(self.y._c[:T + 1]))

    def __eq__(self, other):
        return isinstance(other, Branch) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def compose(self, g: LaurentPoly, truncation: int | None = None) -> PowerSeries1:
        """``g(x(t), y(t))`` exactly up to ``t^T``; ``g`` must be a polynomial."""
        if not g.is_polynomial():
            raise InvalidInputError("can only compose polynomials with a branch")
        T = self.truncation if truncation is None else min(truncation, self.truncation)
        xs, ys = self.x.truncate(T), self.y.truncate(T)
        maxp = max((i for (i, _), _ in g), default=0)
        maxq = max((j for (_, j), _ in g), default=0)
        xp = [_one(T)]
        for _ in range(maxp):
            xp.append(xp[-1] * xs)
        yq = [_one(T)]
        for _ in range(maxq):
            yq.append(yq[-1] * ys)
        out = [Fraction(0)] * (T + 1)
        for (i, j), c in g:
            prod = xp[i] * yq[j]
            for e, a in enumerate(prod._c):
                if a:
                    out[e] += c * a
        return PowerSeries1._dense(out, T)


@dataclass(frozen=True)
class BranchGroup:
    index: int
    branches: tuple[Branch, ...]

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if self.index < 1:
            raise InvalidInputError("group index must be positive")
        if not self.branches:
            raise InvalidInputError("a branch group needs at least one branch")
        if len(set(self.branches)) != len(self.branches):
            raise InvalidInputError("branches in a group must be distinct")

    @property
    def s(self) -> int:
        return len(self.branches)

    @property
    def truncation(self) -> int:
        return min(b.truncation for b in self.branches)


def face_divide(g_face: LaurentPoly, f_face: LaurentPoly, facet: Facet) -> LaurentPoly | None:
    """Laurent ``h`` with ``g_face == h * f_face``, or None if there is none."""
    mg, pg = dehomogenize(g_face, facet)
    mf, pf = dehomogenize(f_face, facet)
    quo, rem = upoly.divmod_(pg, pf)
    if rem:
        return None
    return rehomogenize((mg[0] - mf[0], mg[1] - mf[1]), quo, facet)


def reduction_steps(g: LaurentPoly, f: LaurentPoly, facet: Facet):
    """Yield ``(u, g)`` for the successive remainders of the face-part reduction.

    Each round subtracts ``h*f`` with ``h`` chosen so that the face parts
    cancel, which strictly raises the facet value ``u``. The generator stops
    after the first remainder whose face part is not divisible by that of
    ``f``, or when the remainder is zero (yielding ``u = inf``). It does not
    terminate by itself when ``g`` lies in the ideal of ``f`` as a power series.
    """
    f_face = face_part(f, facet)
    if not upoly.is_squarefree(dehomogenize(f_face, facet)[1]):
        raise DegenerateError(f"f is degenerate on facet {facet.normal}", facet)
    while True:
        u = facet_value(g, facet)
        yield u, g
        if g.is_zero():
            return
        h = face_divide(face_part(g, facet), f_face, facet)
        if h is None:
            return
        g = g - h * f


def newton_order(g: LaurentPoly, f: LaurentPoly, facet: Facet, bound: int) -> OrderValue:
    """Order of ``g`` along ``facet`` modulo ``f`` by face-part reduction.

    Returns a lower bound once the facet value of the remainder exceeds
    ``bound`` (the reduction need not terminate for g in (f)).
    """
    for u, rem in reduction_steps(g, f, facet):
        if rem.is_zero():
            return INFINITE
        if u > bound:
            return at_least(bound)
    return finite(u)


def branch_order(g: LaurentPoly, branch: Branch) -> OrderValue:
    if g.is_zero():
        return INFINITE
    n = branch.compose(g).order()
    if n is None:
        return at_least(branch.truncation + 1)
    return finite(n)


def group_order(g: LaurentPoly, group: BranchGroup | Sequence[Branch]) -> OrderValue:
    branches = group.branches if isinstance(group, BranchGroup) else group
    out = None
    for b in branches:
        v = branch_order(g, b)
        out = v if out is None else min_order(out, v)
    return out


def _iroot(n: int, k: int) -> int | None:
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid
    return lo if lo ** k == n else None


def _rational_root(q: Fraction, n: int) -> Fraction | None:
    if q < 0 and n % 2 == 0:
        return None
    a, b = _iroot(abs(q.numerator), n), _iroot(q.denominator, n)
    if a is None or b is None:
        return None
    return Fraction(a if q > 0 else -a, b)


def _bezout(a: int, b: int) -> tuple[int, int]:
    """Integers (u, v) with a*u + b*v == gcd(a, b)."""
    if b == 0:
        return (1, 0)
    u, v = _bezout(b, a % b)
    return (v, u - (a // b) * v)


def _leading_pair(root: Fraction, a1: int, a2: int) -> tuple[Fraction, Fraction]:
    """(lam, c) with lam^a2 / c^a1 == root; lam = 1 whenever possible."""
    c = _rational_root(1 / root, a1)
    if c is not None:
        return Fraction(1), c
    # a2*alpha - a1*beta = 1
    alpha, mbeta = _bezout(a2, a1)
    beta = -mbeta
    return root ** alpha, root ** beta


def puiseux_lift(f: LaurentPoly, facet: Facet, truncation: int) -> list[Branch]:
    """Branches of ``f = 0`` whose strict transforms meet the divisor of ``facet``.

    Each branch is ``x = lam*t^a1``, ``y = t^a2 * u(t)`` with ``u(0) = c`` a
    simple root of the face equation; higher coefficients of ``u`` come from
    Hensel lifting term by term.
    """
    a1, a2 = facet.normal
    f_face = face_part(f, facet)
    _, P = dehomogenize(f_face, facet)
    if not upoly.is_squarefree(P):
        raise DegenerateError(f"f is degenerate on facet {facet.normal}", facet)
    roots = upoly.rational_roots(P)
    if len(roots) < upoly.degree(P):
        raise IrrationalRootError(
            f"face polynomial {list(map(str, P))} of facet {facet.normal} has non-rational "
            "roots; supply explicit branch parametrizations instead", facet)
    C = facet_value(f, facet)
    T = truncation
    K = max(T - a2, 0)
    branches = []
    for w0 in roots:
        lam, c = _leading_pair(w0, a1, a2)
        # H(u, t) = t^-C f(lam t^a1, t^a2 u) as {(t_exp, u_exp): coef}
        H: dict[tuple[int, int], Fraction] = {}
        for (p, q), coef in f:
            key = (a1 * p + a2 * q - C, q)
            H[key] = H.get(key, 0) + coef * lam ** p
        dF = sum(coef * q * c ** (q - 1) for (te, q), coef in H.items() if te == 0 and q > 0)
        if dF == 0:
            raise DegenerateError("face root is not simple", facet)
        maxq = max(q for _, q in H)
        u = [c] + [Fraction(0)] * K
        for j in range(1, K + 1):
            useries = PowerSeries1._dense(u[:j + 1], j)
            powers = [_one(j)]
            for _ in range(maxq):
                powers.append(powers[-1] * useries)
            e_j = Fraction(0)
            for (te, q), coef in H.items():
                if te <= j:
                    e_j += coef * powers[q]._c[j - te]
            u[j] = -e_j / dF
        xs = PowerSeries1({a1: lam}, T)
        ys = PowerSeries1({a2 + k: u[k] for k in range(K + 1)}, T)
        branch = Branch(xs, ys)
        residue = branch.compose(f).order()
        assert residue is None, f"lifted branch does not satisfy f (residue at t^{residue})"
        branches.append(branch)
    return branches
