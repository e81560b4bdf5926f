"""Sparse multivariate polynomials over Q with a Buchberger engine.

Polynomials are dictionaries from exponent tuples to nonzero Fractions.
The module provides the expression parser used by the CLI, formal partial
derivatives, weighted-homogeneity checks, and reduced Groebner bases with
standard-monomial enumeration for zero-dimensional quotients.  Everything
is exact; there is no floating point anywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    InfiniteQuotientError,
    InvalidIdealError,
    ParseError,
    UnknownVariableError,
)

Exps = tuple[int, ...]


class MonomialOrder:
    """A monomial order: grevlex (default) or lex, with optional variable permutation.

    ``key(exps)`` returns a sort key that is increasing in the order, so
    ``sorted(monomials, key=order.key)`` lists them smallest first.
    """

    __slots__ = ("kind", "perm")

    def __init__(self, kind: str = "grevlex", perm: Sequence[int] | None = None):
        if kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.perm = tuple(perm) if perm is not None else None

    def _permuted(self, exps: Exps) -> Exps:
        if self.perm is None:
            return exps
        return tuple(exps[i] for i in self.perm)

    def key(self, exps: Exps):
        e = self._permuted(exps)
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-x for x in reversed(e)))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.perm == other.perm
        )

    def __hash__(self):
        return hash((self.kind, self.perm))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def mono_mul(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))

def mono_divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))

def mono_div(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b))

def mono_lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_degree(a: Exps) -> int:
    return sum(a)


class Polynomial:
    """An exact polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Exps, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Exps, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                if c:
                    self.terms[tuple(exps)] = Fraction(c)

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Exps, c=1) -> "Polynomial":
        return cls(nvars, {tuple(exps): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        names = tuple(f"x{i}" for i in range(self.nvars))
        return f"Polynomial({format_poly(self, names)!r})"

    def _binop(self, other, sign: int) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if self.nvars != other.nvars:
            raise ValueError("polynomials have different variable counts")
        out = dict(self.terms)
        for exps, c in other.terms.items():
            v = out.get(exps, Fraction(0)) + sign * c
            if v:
                out[exps] = v
            else:
                out.pop(exps, None)
        return Polynomial(self.nvars, out)

    def __add__(self, other):
        return self._binop(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __rsub__(self, other):
        return (-self)._binop(other, 1)

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial(self.nvars)
            return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})
        if self.nvars != other.nvars:
            raise ValueError("polynomials have different variable counts")
        out: dict[Exps, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = mono_mul(ea, eb)
                v = out.get(e, Fraction(0)) + ca * cb
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers take non-negative integers")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, i: int) -> "Polynomial":
        out: dict[Exps, Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = list(exps)
            new[i] = e - 1
            out[tuple(new)] = c * e
        return Polynomial(self.nvars, out)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps: Exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self, order: MonomialOrder = GREVLEX) -> tuple[Exps, Fraction]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def terms_sorted(self, order: MonomialOrder = GREVLEX, reverse: bool = True):
        for e in sorted(self.terms, key=order.key, reverse=reverse):
            yield e, self.terms[e]


def partials(f: Polynomial) -> list[Polynomial]:
    """All formal partial derivatives of f, in variable order."""
    return [f.diff(i) for i in range(f.nvars)]


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Evaluate f at the given polynomials, one per variable."""
    if len(images) != f.nvars:
        raise ValueError("need one image polynomial per variable")
    if not images:
        return f
    nvars = images[0].nvars
    out = Polynomial.zero(nvars)
    for exps, c in f.terms.items():
        term = Polynomial.constant(nvars, c)
        for img, e in zip(images, exps):
            if e:
                term = term * img ** e
        out = out + term
    return out


def weighted_degree(exps: Exps, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(exps, weights))


def is_quasi_homogeneous(f: Polynomial, weights: Sequence[int], r: int) -> bool:
    """True iff every term of f has weighted degree exactly r."""
    if len(weights) != f.nvars:
        raise ValueError("weight vector length must match the variable count")
    return all(weighted_degree(e, weights) == r for e in f.terms)


def is_homogeneous(f: Polynomial) -> bool:
    return is_quasi_homogeneous(f, (1,) * f.nvars, f.total_degree()) if f.terms else True


def weights_admissible(weights: Sequence[int], r: int, f: Polynomial) -> bool:
    """Admissibility of a weight system for f of weighted degree r.

    Checks: weights pairwise coprime, each weight divides r, and for every
    weight a_i > 1 the pure power T_i^(r/a_i) appears in f with a nonzero
    coefficient (the coordinate-vertex condition).  Smoothness of the
    associated projective data is the caller's obligation.
    """
    ws = list(weights)
    if len(ws) != f.nvars or any(w < 1 for w in ws):
        return False
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            if math.gcd(ws[i], ws[j]) != 1:
                return False
    for i, w in enumerate(ws):
        if r % w != 0:
            return False
        if w > 1:
            e = [0] * f.nvars
            e[i] = r // w
            if not f.coefficient(tuple(e)):
                return False
    return True


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(src: str):
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            at = len(src) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.group("num"):
            out.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


def parse(src: str, variables: Sequence[str]) -> Polynomial:
    """Parse a polynomial expression over the declared variables.

    Grammar: integer and p/q literals, variable names, + - * ^ and
    parentheses; ^ takes a non-negative integer exponent; multiplication is
    always explicit.  Unknown names and syntax errors carry the offending
    position.
    """
    names = list(variables)
    if len(set(names)) != len(names):
        raise ValueError("duplicate variable names")
    nvars = len(names)
    index = {name: i for i, name in enumerate(names)}
    tokens = _tokenize(src)
    pos = 0

    def peek():
        return tokens[pos]

    def take():
        nonlocal pos
        t = tokens[pos]
        pos += 1
        return t

    def parse_expr() -> Polynomial:
        sign = 1
        while peek()[0] == "op" and peek()[1] in "+-":
            if take()[1] == "-":
                sign = -sign
        out = parse_term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            # allow a redundant sign run after the operator, e.g. "x - -y"
            sign = 1
            while peek()[0] == "op" and peek()[1] in "+-":
                if take()[1] == "-":
                    sign = -sign
            rhs = parse_term() * sign
            out = out + rhs if op == "+" else out - rhs
        return out

    def parse_term() -> Polynomial:
        out = parse_factor()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            out = out * parse_factor()
        return out

    def parse_factor() -> Polynomial:
        base = parse_atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, text, at = take()
            if kind != "num" or "/" in text:
                raise ParseError("exponent must be a non-negative integer", at)
            return base ** int(text)
        return base

    def parse_atom() -> Polynomial:
        kind, text, at = take()
        if kind == "num":
            return Polynomial.constant(nvars, Fraction(text))
        if kind == "name":
            if text not in index:
                raise UnknownVariableError(f"unknown variable {text!r}", at)
            return Polynomial.variable(nvars, index[text])
        if kind == "op" and text == "(":
            inner = parse_expr()
            kind2, text2, at2 = take()
            if text2 != ")":
                raise ParseError("expected ')'", at2)
            return inner
        raise ParseError(f"expected a number, variable, or '(', found {text or 'end of input'!r}", at)

    out = parse_expr()
    kind, text, at = peek()
    if kind != "end":
        raise ParseError(f"unexpected {text!r} after expression", at)
    return out


def format_poly(f: Polynomial, variables: Sequence[str], order: MonomialOrder = GREVLEX) -> str:
    """Render f so that parse(format_poly(f, vs), vs) == f."""
    if f.is_zero():
        return "0"
    parts = []
    for exps, c in f.terms_sorted(order):
        factors = []
        for name, e in zip(variables, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        text = "*".join(factors)
        if not parts:
            parts.append(text if c > 0 else "-" + text)
        else:
            parts.append(("+ " if c > 0 else "- ") + text)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Groebner machinery
# ---------------------------------------------------------------------------


def spoly(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    l = mono_lcm(ef, eg)
    mf = Polynomial.monomial(f.nvars, mono_div(l, ef), Fraction(1) / cf)
    mg = Polynomial.monomial(g.nvars, mono_div(l, eg), Fraction(1) / cg)
    return mf * f - mg * g


def reduce_poly(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Full normal form of f modulo the basis (every term reduced)."""
    lead = [(g.leading(order)[0], g.leading(order)[1], g) for g in basis if not g.is_zero()]
    remainder: dict[Exps, Fraction] = {}
    p = f
    while not p.is_zero():
        e, c = p.leading(order)
        for eg, cg, g in lead:
            if mono_divides(eg, e):
                factor = Polynomial.monomial(p.nvars, mono_div(e, eg), c / cg)
                p = p - factor * g
                break
        else:
            v = remainder.get(e, Fraction(0)) + c
            if v:
                remainder[e] = v
            else:
                remainder.pop(e, None)
            p = p - Polynomial.monomial(p.nvars, e, c)
    return Polynomial(f.nvars, remainder)


def _buchberger(gens: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    basis = [g * (Fraction(1) / g.leading(order)[1]) for g in gens]
    lead = [g.leading(order)[0] for g in basis]

    def lcm_key(i, j):
        return order.key(mono_lcm(lead[i], lead[j]))

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        # normal selection: smallest lcm in the order, index tie-break
        i, j = min(pairs, key=lambda p: (lcm_key(*p), p))
        pairs.discard((i, j))
        li, lj = lead[i], lead[j]
        l = mono_lcm(li, lj)
        # first Buchberger criterion: coprime leading monomials
        if l == mono_mul(li, lj):
            continue
        # chain criterion: some k divides the lcm and both side pairs are done
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lead[k], l):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 not in pairs and p2 not in pairs:
                skip = True
                break
        if skip:
            continue
        s = reduce_poly(spoly(basis[i], basis[j], order), basis, order)
        if s.is_zero():
            continue
        s = s * (Fraction(1) / s.leading(order)[1])
        t = len(basis)
        basis.append(s)
        lead.append(s.leading(order)[0])
        pairs.update((k, t) for k in range(t))
    return basis


def _reduce_basis(basis: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    # minimize: drop elements whose leading monomial another element divides
    basis = sorted(basis, key=lambda g: order.key(g.leading(order)[0]))
    minimal: list[Polynomial] = []
    for g in basis:
        lg = g.leading(order)[0]
        if any(mono_divides(h.leading(order)[0], lg) for h in minimal):
            continue
        minimal.append(g)
    # tail-reduce each element against the others, keep monic
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = reduce_poly(g, others, order) if others else g
        out.append(r * (Fraction(1) / r.leading(order)[1]))
    out.sort(key=lambda g: order.key(g.leading(order)[0]))
    return out


@dataclass
class QuotientBasis:
    """A reduced Groebner basis with its standard-monomial data."""

    groebner: tuple[Polynomial, ...]
    order: MonomialOrder
    nvars: int
    is_finite: bool
    _standard: tuple[Exps, ...] | None
    _nf_cache: dict[Exps, dict[int, Fraction]] = field(default_factory=dict, repr=False)

    @property
    def standard_monomials(self) -> tuple[Exps, ...]:
        if not self.is_finite:
            raise InfiniteQuotientError(
                "the quotient ring is infinite-dimensional (non-isolated locus)"
            )
        return self._standard

    @property
    def dimension(self) -> int:
        return len(self.standard_monomials)

    def contains_one(self) -> bool:
        return len(self.groebner) == 1 and self.groebner[0].total_degree() == 0

    def normal_form(self, p: Polynomial) -> Polynomial:
        if not self.is_finite:
            raise InfiniteQuotientError(
                "normal forms are only exposed for finite-dimensional quotients"
            )
        if p.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        return reduce_poly(p, self.groebner, self.order)

    def nf_vector(self, exps: Exps) -> dict[int, Fraction]:
        """Normal form of a single monomial as basis-index -> coefficient."""
        exps = tuple(exps)
        hit = self._nf_cache.get(exps)
        if hit is not None:
            return hit
        nf = self.normal_form(Polynomial.monomial(self.nvars, exps))
        pos = {e: i for i, e in enumerate(self.standard_monomials)}
        vec = {pos[e]: c for e, c in nf.terms.items()}
        self._nf_cache[exps] = vec
        return vec


def groebner(gens: Iterable[Polynomial], order: MonomialOrder = GREVLEX) -> QuotientBasis:
    """Reduced Groebner basis of the ideal, plus the quotient's monomial basis.

    The reduced basis is unique for the given order, so identical inputs
    produce identical bases.  Standard monomials come back sorted ascending
    in the order when the quotient is finite-dimensional; otherwise the
    result is flagged infinite and the ideal's basis is still available.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise InvalidIdealError("no nonzero generators given")
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise ValueError("generators have mixed variable counts")
    basis = _reduce_basis(_buchberger(gens, order), order)
    leads = [g.leading(order)[0] for g in basis]

    if len(basis) == 1 and basis[0].total_degree() == 0:
        return QuotientBasis(tuple(basis), order, nvars, True, ())

    # zero-dimensionality: each variable has a pure-power leading monomial
    bounds: list[int | None] = [None] * nvars
    for e in leads:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            if bounds[i] is None or e[i] < bounds[i]:
                bounds[i] = e[i]
    if any(b is None for b in bounds):
        return QuotientBasis(tuple(basis), order, nvars, False, None)

    standard: list[Exps] = []
    def enumerate_from(prefix: list[int], i: int):
        if i == nvars:
            e = tuple(prefix)
            if not any(mono_divides(l, e) for l in leads):
                standard.append(e)
            return
        for v in range(bounds[i]):
            prefix.append(v)
            enumerate_from(prefix, i + 1)
            prefix.pop()
    enumerate_from([], 0)
    standard.sort(key=order.key)
    return QuotientBasis(tuple(basis), order, nvars, True, tuple(standard))
