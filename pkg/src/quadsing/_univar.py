"""Exact univariate polynomial arithmetic over the rationals.

A polynomial is a tuple of Fractions in ascending degree with no trailing
zeros; the empty tuple is zero.  These helpers back the trace-form transfer
and the rational-function square classes; they are deliberately minimal.
"""

from __future__ import annotations

from fractions import Fraction

Poly = tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def poly(coeffs) -> Poly:
    """Build a canonical polynomial from an iterable of numbers."""
    return trim(tuple(Fraction(c) for c in coeffs))


def const(c) -> Poly:
    return poly([c])


def trim(p) -> Poly:
    p = tuple(p)
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return p[:n]


def is_zero(p: Poly) -> bool:
    return not p


def degree(p: Poly) -> int:
    return len(p) - 1


def lc(p: Poly) -> Fraction:
    return p[-1]


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(x * c for x in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Field division with remainder; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p)
    dq = degree(q)
    quo = [Fraction(0)] * max(0, len(p) - dq)
    inv = 1 / lc(q)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        f = c * inv
        quo[k - dq] = f
        for i, b in enumerate(q):
            rem[k - dq + i] -= f * b
    return trim(quo), trim(rem)


def mod(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return ZERO
    return scale(p, 1 / lc(p))


def gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, mod(p, q)
    return monic(p)


def eval_at(p: Poly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def t_order(p: Poly) -> int:
    """Index of the lowest nonzero coefficient (the valuation at t=0)."""
    for i, c in enumerate(p):
        if c != 0:
            return i
    raise ValueError("the zero polynomial has no t-order")


def shift_down(p: Poly, k: int) -> Poly:
    """Divide by t^k; the low coefficients must vanish."""
    if any(c != 0 for c in p[:k]):
        raise ValueError("not divisible by the requested power of t")
    return p[k:]
