"""Multivariate power series with integer coefficients truncated to a box.

A :class:`TruncatedSeries` of arity ``r`` and bound ``N`` knows every
coefficient of ``t1^v1 ... tr^vr`` with all ``vi <= N``. Products of
factors ``(1 - t^m)^e`` are kept unevaluated as :class:`ProductForm`.
"""
from __future__ import annotations

from itertools import product
from math import comb
from typing import Iterable, Mapping

ExponentVector = tuple


def _grlex(v: tuple[int, ...]):
    return (sum(v), tuple(-a for a in v))


def format_monomial(v: Iterable[int], names=None) -> str:
    v = tuple(v)
    if names is None:
        names = ["t"] if len(v) == 1 else [f"t{i + 1}" for i in range(len(v))]
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, v) if k]
    return "*".join(parts) or "1"


class ProductForm:
    """Finite product of ``(1 - t^m)^e`` with ``m != 0`` and ``e != 0``."""

    __slots__ = ("r", "_factors")

    def __init__(self, r: int, factors: Iterable[tuple[Iterable[int], int]] = ()):
        self.r = r
        acc: dict[tuple[int, ...], int] = {}
        for m, e in factors:
            m = tuple(int(a) for a in m)
            if len(m) != r:
                raise ValueError(f"exponent vector {m} does not have arity {r}")
            if any(a < 0 for a in m):
                raise ValueError("exponent vectors must be non-negative")
            if not any(m):
                raise ValueError("factor with zero exponent vector")
            acc[m] = acc.get(m, 0) + int(e)
        self._factors = {m: acc[m] for m in sorted(acc, key=_grlex) if acc[m]}

    @property
    def factors(self) -> list[tuple[tuple[int, ...], int]]:
        return list(self._factors.items())

    def __mul__(self, other: "ProductForm") -> "ProductForm":
        if other.r != self.r:
            raise ValueError("arity mismatch")
        return ProductForm(self.r, self.factors + other.factors)

    def __eq__(self, other):
        return isinstance(other, ProductForm) and (self.r, self._factors) == (other.r, other._factors)

    def __repr__(self):
        return f"ProductForm({self})"

    def __str__(self):
        if not self._factors:
            return "1"
        return " * ".join(
            f"(1 - {format_monomial(m)})" + ("" if e == 1 else f"^{e}")
            for m, e in self._factors.items())

    def to_json(self) -> list:
        return [{"m": list(m), "e": e} for m, e in self._factors.items()]

    @classmethod
    def from_json(cls, r: int, data) -> "ProductForm":
        return cls(r, ((d["m"], d["e"]) for d in data))


class TruncatedSeries:
    __slots__ = ("r", "bound", "_c")

    def __init__(self, r: int, bound: int, coeffs: Mapping | Iterable = ()):
        self.r = r
        self.bound = bound
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[tuple[int, ...], int] = {}
        for v, c in items:
            v = tuple(int(a) for a in v)
            if len(v) != r:
                raise ValueError(f"exponent {v} does not have arity {r}")
            if all(0 <= a <= bound for a in v):
                acc[v] = acc.get(v, 0) + int(c)
        self._c = {v: acc[v] for v in sorted(acc, key=_grlex) if acc[v]}

    @classmethod
    def one(cls, r: int, bound: int) -> "TruncatedSeries":
        return cls(r, bound, {(0,) * r: 1})

    def __getitem__(self, v) -> int:
        v = tuple(v)
        if any(a > self.bound for a in v):
            raise IndexError("exponent outside the box")
        return self._c.get(v, 0)

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        return list(self._c.items())

    def restrict(self, bound: int) -> "TruncatedSeries":
        if bound > self.bound:
            raise ValueError("cannot enlarge the box of a truncated series")
        return TruncatedSeries(self.r, bound, self._c)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return multiply(self, other)

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries) and self.r == other.r
                and self.bound == other.bound and self._c == other._c)

    def __repr__(self):
        return f"TruncatedSeries(r={self.r}, N={self.bound}: {self})"

    def __str__(self):
        if not self._c:
            return "0"
        out = ""
        for v, c in self._c.items():
            mono = format_monomial(v)
            body = mono if abs(c) == 1 and mono != "1" else (
                str(abs(c)) if mono == "1" else f"{abs(c)}*{mono}")
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self) -> dict:
        return {"arity": self.r, "bound": self.bound,
                "terms": [[list(v), c] for v, c in self._c.items()]}

    @classmethod
    def from_json(cls, data) -> "TruncatedSeries":
        return cls(data["arity"], data["bound"], ((v, c) for v, c in data["terms"]))


def _factor_series(m: tuple[int, ...], e: int, r: int, N: int) -> dict:
    """``(1 - t^m)^e`` truncated to the box."""
    out = {}
    k = 0
    while True:
        v = tuple(k * a for a in m)
        if any(a > N for a in v):
            break
        if e > 0:
            if k > e:
                break
            c = (-1) ** k * comb(e, k)
        else:
            c = comb(k - e - 1, -e - 1)
        if c:
            out[v] = c
        k += 1
    return out


def expand(form: ProductForm, N: int) -> TruncatedSeries:
    result = TruncatedSeries.one(form.r, N)
    for m, e in form.factors:
        result = multiply(result, TruncatedSeries(form.r, N, _factor_series(m, e, form.r, N)))
    return result


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    if a.r != b.r:
        raise ValueError(f"arity mismatch: {a.r} vs {b.r}")
    N = min(a.bound, b.bound)
    acc: dict[tuple[int, ...], int] = {}
    for u, cu in a.terms():
        if any(x > N for x in u):
            continue
        for w, cw in b.terms():
            v = tuple(x + y for x, y in zip(u, w))
            if all(x <= N for x in v):
                acc[v] = acc.get(v, 0) + cu * cw
    return TruncatedSeries(a.r, N, acc)


def first_difference(a: TruncatedSeries, b: TruncatedSeries):
    """First exponent (graded order) in the common box where ``a`` and ``b`` differ."""
    if a.r != b.r:
        raise ValueError(f"arity mismatch: {a.r} vs {b.r}")
    N = min(a.bound, b.bound)
    keys = {v for v, _ in a.terms()} | {v for v, _ in b.terms()}
    for v in sorted((v for v in keys if all(x <= N for x in v)), key=_grlex):
        if a[v] != b[v]:
            return v
    return None


def equal_in_box(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    return first_difference(a, b) is None


def grid_sum_identity(m: Iterable[int], s: int, N: int) -> TruncatedSeries:
    """Sum of ``t^((l1+...+ls) m)`` over tuples with at least one ``lj = 0``.

    Plain enumeration over the grid; used to check the closed form
    ``(1 - t^m)^-s (1 - t^(s m))``.
    """
    m = tuple(int(a) for a in m)
    if s < 1:
        raise ValueError("s must be positive")
    if not any(m):
        raise ValueError("zero exponent vector")
    K = min(N // a for a in m if a)
    acc: dict[tuple[int, ...], int] = {}
    for ls in product(range(K + 1), repeat=s):
        if all(ls):
            continue
        total = sum(ls)
        if total > K:
            continue
        v = tuple(total * a for a in m)
        acc[v] = acc.get(v, 0) + 1
    return TruncatedSeries(len(m), N, acc)
