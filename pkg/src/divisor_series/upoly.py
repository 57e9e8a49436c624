"""Dense univariate polynomials over Q, stored low degree first as tuples of Fractions."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

UPoly = tuple  # tuple[Fraction, ...], trimmed, () is zero


def make(coeffs: Iterable) -> UPoly:
    c = [Fraction(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return make((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, tuple(-a for a in q))


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return make(out)


def divmod_(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + len(q) - 1] / lead
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    return make(quo), make(rem[:len(q) - 1])


def monic(p: UPoly) -> UPoly:
    return tuple(a / p[-1] for a in p) if p else p


def pgcd(p: UPoly, q: UPoly) -> UPoly:
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def derivative(p: UPoly) -> UPoly:
    return make(i * p[i] for i in range(1, len(p)))


def is_squarefree(p: UPoly) -> bool:
    return degree(pgcd(p, derivative(p))) == 0


def evaluate(p: Sequence, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: UPoly) -> list[Fraction]:
    """Distinct rational roots of ``p`` in increasing order.

    Rational root test on the primitive integer multiple; fine for the small
    coefficients that occur in face polynomials.
    """
    if degree(p) < 1:
        return []
    den = 1
    for a in p:
        den = lcm(den, a.denominator)
    ints = [int(a * den) for a in p]
    shift = 0
    while ints[shift] == 0:
        shift += 1
    roots = {Fraction(0)} if shift else set()
    ints = ints[shift:]
    if len(ints) == 1:
        return sorted(roots)
    for num in _divisors(ints[0]):
        for dd in _divisors(ints[-1]):
            if gcd(num, dd) != 1:
                continue
            for cand in (Fraction(num, dd), Fraction(-num, dd)):
                if evaluate(ints, cand) == 0:
                    roots.add(cand)
    return sorted(roots)
