"""Exact arithmetic in Grothendieck-Witt rings of fields.

Elements are virtual diagonal forms: two multisets of square classes, one
with sign +1 and one with sign -1.  Supported base fields:

* the rationals (``RATIONALS``): square classes are squarefree integers,
  equality of elements is decided exactly through rank, signature,
  discriminant and Hasse invariants at the finitely many relevant places;
* odd prime fields (``FieldCtx.prime_field(p)``): classes are 1 or a fixed
  least non-residue, equality is rank plus discriminant;
* rational functions in one variable t (``RATIONAL_FUNCTIONS``): classes are
  kept as an exact power of t times a unit at t=0, ready for ``specialize``;
* simple extensions Q[x]/(g) (``FieldCtx.extension(g)``): storage-only
  contexts whose classes are polynomial residues, consumed by ``transfer``.

Virtual elements stay unreduced apart from cancellation of identical
classes between the two signs, so ``==`` is structural; use ``is_equal``
for equality in the ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import Poly as _SymPoly
from sympy import Rational as _SymRational
from sympy import factorint
from sympy.abc import x as _sym_x

from . import _univar as uv
from .errors import (
    ContextMismatchError,
    DegenerateFormError,
    InvalidExtensionError,
    NonSpecializableError,
    ParseError,
    UnsupportedInvariantError,
)

_RATIONALS = "rationals"
_PRIME = "prime-field"
_RATFUNC = "rational-functions"
_EXTENSION = "extension"


def _squarefree(value) -> int:
    """The squarefree integer representing the square class of a rational."""
    fr = Fraction(value)
    if fr == 0:
        raise ValueError("zero has no square class")
    n = fr.numerator * fr.denominator
    out = -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= int(p)
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    # deterministic Miller-Rabin for 64-bit-ish inputs, ample for our use
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        v = pow(a, d, n)
        if v in (1, n - 1):
            continue
        for _ in range(s - 1):
            v = v * v % n
            if v == n - 1:
                break
        else:
            return False
    return True


class FieldCtx:
    """Base-field descriptor: drives normalization and printing of classes."""

    __slots__ = ("kind", "p", "min_poly", "_nonresidue")

    def __init__(self, kind: str, p: int | None = None, min_poly: uv.Poly | None = None):
        self.kind = kind
        self.p = p
        self.min_poly = min_poly
        self._nonresidue = None
        if kind == _PRIME:
            if p is None or p == 2 or not _is_prime(p):
                raise ValueError("prime-field context needs an odd prime")
        elif kind == _EXTENSION:
            if min_poly is None:
                raise InvalidExtensionError("extension context needs a minimal polynomial")

    # -- constructors -------------------------------------------------

    @classmethod
    def rationals(cls) -> "FieldCtx":
        return RATIONALS

    @classmethod
    def prime_field(cls, p: int) -> "FieldCtx":
        return cls(_PRIME, p=p)

    @classmethod
    def rational_functions(cls) -> "FieldCtx":
        return RATIONAL_FUNCTIONS

    @classmethod
    def extension(cls, min_poly) -> "FieldCtx":
        """Q[x]/(g) for monic irreducible g, given by ascending coefficients."""
        g = uv.poly(min_poly)
        if uv.degree(g) < 1:
            raise InvalidExtensionError("minimal polynomial must have degree >= 1")
        if uv.lc(g) != 1:
            raise InvalidExtensionError("minimal polynomial must be monic")
        sym = _SymPoly([_SymRational(c) for c in reversed(g)], _sym_x)
        if not sym.is_irreducible:
            raise InvalidExtensionError("minimal polynomial is reducible over Q")
        return cls(_EXTENSION, min_poly=g)

    # -- identity -----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.kind == other.kind
            and self.p == other.p
            and self.min_poly == other.min_poly
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.min_poly))

    def __repr__(self):
        return f"FieldCtx({self.label()})"

    def label(self) -> str:
        if self.kind == _RATIONALS:
            return "Q"
        if self.kind == _PRIME:
            return f"Fp:{self.p}"
        if self.kind == _RATFUNC:
            return "Q(t)"
        return "Q[x]/(" + ",".join(str(c) for c in self.min_poly) + ")"

    # -- square-class plumbing -----------------------------------------

    def least_nonresidue(self) -> int:
        if self.kind != _PRIME:
            raise UnsupportedInvariantError("non-residues only exist over prime fields")
        if self._nonresidue is None:
            n = 2
            while pow(n, (self.p - 1) // 2, self.p) == 1:
                n += 1
            self._nonresidue = n
        return self._nonresidue

    def normalize(self, value):
        """Canonical representative of the square class of ``value``."""
        if self.kind == _RATIONALS:
            return _squarefree(value)
        if self.kind == _PRIME:
            fr = Fraction(value) if not isinstance(value, int) else Fraction(value)
            num, den = fr.numerator % self.p, fr.denominator % self.p
            if den == 0:
                raise ValueError("denominator vanishes in the prime field")
            v = num * pow(den, -1, self.p) % self.p
            if v == 0:
                raise ValueError("zero has no square class")
            return 1 if pow(v, (self.p - 1) // 2, self.p) == 1 else self.least_nonresidue()
        if self.kind == _RATFUNC:
            num, den = _as_ratfunc(value)
            return _normalize_ratfunc(num, den)
        # extension: reduce mod g, canonical trimmed coefficient tuple
        res = _as_residue(value, self.min_poly)
        if uv.is_zero(res):
            raise ValueError("zero has no square class")
        return res

    def mul_reps(self, a, b):
        """Product of two canonical representatives, renormalized."""
        if self.kind == _RATIONALS:
            return _squarefree(a * b)
        if self.kind == _PRIME:
            return self.normalize(a * b)
        if self.kind == _RATFUNC:
            pa, na, da = a
            pb, nb, db = b
            num, den = uv.mul(na, nb), uv.mul(da, db)
            parity, n2, d2 = _normalize_ratfunc(num, den)
            return ((pa + pb + parity) % 2, n2, d2)
        return uv.mod(uv.mul(a, b), self.min_poly)

    def one_rep(self):
        if self.kind in (_RATIONALS, _PRIME):
            return 1
        if self.kind == _RATFUNC:
            return (0, uv.ONE, uv.ONE)
        return uv.ONE

    def rep_str(self, rep) -> str:
        if self.kind in (_RATIONALS, _PRIME):
            return str(rep)
        if self.kind == _RATFUNC:
            parity, num, den = rep
            head = "t*" if parity else ""
            return head + "(" + _uv_str(num) + ")/(" + _uv_str(den) + ")"
        return _uv_str(rep)


def _uv_str(p: uv.Poly) -> str:
    if uv.is_zero(p):
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*t" if c != 1 else "t")
        else:
            parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
    return " + ".join(parts)


def _as_ratfunc(value) -> tuple[uv.Poly, uv.Poly]:
    if isinstance(value, tuple) and len(value) == 2 and not isinstance(value[0], (int, Fraction)):
        return uv.poly(value[0]), uv.poly(value[1])
    if isinstance(value, (int, Fraction)):
        return uv.const(value), uv.ONE
    # an iterable of coefficients: a polynomial in t
    return uv.poly(value), uv.ONE


def _normalize_ratfunc(num: uv.Poly, den: uv.Poly):
    """Canonical (t-parity, unit numerator, unit denominator) triple.

    The exact power of t is extracted from numerator and denominator, the
    unit part is reduced to lowest terms with a monic denominator.  The
    resulting unit is defined and nonzero at t=0 by construction.
    """
    if uv.is_zero(num):
        raise ValueError("zero has no square class")
    if uv.is_zero(den):
        raise ZeroDivisionError("zero denominator in a rational function")
    on, od = uv.t_order(num), uv.t_order(den)
    num, den = uv.shift_down(num, on), uv.shift_down(den, od)
    g = uv.gcd(num, den)
    if uv.degree(g) > 0:
        num = uv.divmod_poly(num, g)[0]
        den = uv.divmod_poly(den, g)[0]
    c = 1 / uv.lc(den)
    num, den = uv.scale(num, c), uv.scale(den, c)
    return ((on - od) % 2, num, den)


def _as_residue(value, g: uv.Poly) -> uv.Poly:
    if isinstance(value, (int, Fraction)):
        res = uv.const(value)
    else:
        res = uv.poly(value)
    return uv.mod(res, g)


RATIONALS = FieldCtx(_RATIONALS)
RATIONAL_FUNCTIONS = FieldCtx(_RATFUNC)

#: short aliases, convenient in tests and notebooks
QQ = RATIONALS
QT = RATIONAL_FUNCTIONS


@dataclass(frozen=True)
class SquareClass:
    """A square class of a field, in canonical form."""

    ctx: FieldCtx
    rep: object

    @classmethod
    def make(cls, ctx: FieldCtx, value) -> "SquareClass":
        return cls(ctx, ctx.normalize(value))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.ctx != other.ctx:
            raise ContextMismatchError("square classes live over different fields")
        return SquareClass(self.ctx, self.ctx.mul_reps(self.rep, other.rep))

    def __str__(self):
        return self.ctx.rep_str(self.rep)


@dataclass(frozen=True)
class InvariantTuple:
    """Classical invariants of a virtual form.

    ``signature`` is None outside the rationals.  ``hasse`` maps each
    relevant prime (always including 2) to the product of Hilbert symbols
    of the positive part times that of the negative part; it depends on the
    stored representative for genuinely virtual elements, so equality
    decisions go through ``is_equal`` instead.
    """

    rank: int
    signature: int | None
    discriminant: SquareClass
    hasse: Mapping[int, int]


class GWElement:
    """A virtual diagonal form over a fixed base-field context."""

    __slots__ = ("ctx", "pos", "neg")

    def __init__(self, ctx: FieldCtx, pos: Iterable = (), neg: Iterable = (), *, _raw=False):
        if _raw:
            self.ctx, self.pos, self.neg = ctx, tuple(pos), tuple(neg)
            return
        p = [ctx.normalize(v) for v in pos]
        n = [ctx.normalize(v) for v in neg]
        self.ctx = ctx
        self.pos, self.neg = _cancel(p, n)

    # -- basics ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx = RATIONALS) -> "GWElement":
        return cls(ctx, _raw=True)

    @classmethod
    def unit(cls, ctx: FieldCtx = RATIONALS) -> "GWElement":
        return cls(ctx, pos=(ctx.one_rep(),), _raw=True)

    @property
    def rank(self) -> int:
        return len(self.pos) - len(self.neg)

    def is_zero_form(self) -> bool:
        return not self.pos and not self.neg

    def __eq__(self, other):
        """Structural equality of representatives; see ``is_equal``."""
        return (
            isinstance(other, GWElement)
            and self.ctx == other.ctx
            and self.pos == other.pos
            and self.neg == other.neg
        )

    def __hash__(self):
        return hash((self.ctx, self.pos, self.neg))

    def __repr__(self):
        return f"GWElement({self.ctx.label()}, {to_text(self)!r})"

    # -- ring structure ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, GWElement):
            raise TypeError("expected a GWElement")
        if self.ctx != other.ctx:
            raise ContextMismatchError(
                f"cannot combine elements over {self.ctx.label()} and {other.ctx.label()}"
            )

    def __add__(self, other):
        self._check(other)
        pos, neg = _cancel(list(self.pos) + list(other.pos), list(self.neg) + list(other.neg))
        return GWElement(self.ctx, pos, neg, _raw=True)

    def __neg__(self):
        return GWElement(self.ctx, self.neg, self.pos, _raw=True)

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._int_mul(other)
        self._check(other)
        ctx = self.ctx
        pos, neg = [], []
        for a in self.pos:
            for b in other.pos:
                pos.append(ctx.mul_reps(a, b))
            for b in other.neg:
                neg.append(ctx.mul_reps(a, b))
        for a in self.neg:
            for b in other.pos:
                neg.append(ctx.mul_reps(a, b))
            for b in other.neg:
                pos.append(ctx.mul_reps(a, b))
        pos, neg = _cancel(pos, neg)
        return GWElement(ctx, pos, neg, _raw=True)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self._int_mul(other)
        return NotImplemented

    def _int_mul(self, k: int):
        out = GWElement.zero(self.ctx)
        term = self if k >= 0 else -self
        for _ in range(abs(k)):
            out = out + term
        return out

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are defined")
        out = GWElement.unit(self.ctx)
        for _ in range(k):
            out = out * self
        return out

    # -- invariants -------------------------------------------------------

    def signature(self) -> int:
        if self.ctx.kind != _RATIONALS:
            raise UnsupportedInvariantError(
                f"signature is undefined over {self.ctx.label()}"
            )
        return sum(1 if a > 0 else -1 for a in self.pos) - sum(
            1 if a > 0 else -1 for a in self.neg
        )

    def discriminant(self) -> SquareClass:
        if self.ctx.kind not in (_RATIONALS, _PRIME):
            raise UnsupportedInvariantError(
                f"discriminant is not computed over {self.ctx.label()}"
            )
        rep = self.ctx.one_rep()
        for a in self.pos:
            rep = self.ctx.mul_reps(rep, a)
        for a in self.neg:
            rep = self.ctx.mul_reps(rep, a)
        return SquareClass(self.ctx, rep)

    def invariants(self) -> InvariantTuple:
        if self.ctx.kind == _RATIONALS:
            hasse = {
                p: _hasse_witt(self.pos, p) * _hasse_witt(self.neg, p)
                for p in _relevant_primes(self.pos + self.neg)
            }
            return InvariantTuple(self.rank, self.signature(), self.discriminant(), hasse)
        if self.ctx.kind == _PRIME:
            return InvariantTuple(self.rank, None, self.discriminant(), {})
        raise UnsupportedInvariantError(
            f"invariants are not computed over {self.ctx.label()}"
        )


def _cancel(pos: list, neg: list) -> tuple[tuple, tuple]:
    """Remove classes occurring with both signs; sort for determinism."""
    neg = list(neg)
    out_pos = []
    for a in pos:
        try:
            neg.remove(a)
        except ValueError:
            out_pos.append(a)
    return tuple(sorted(out_pos)), tuple(sorted(neg))


def diag_form(entries: Sequence, ctx: FieldCtx = RATIONALS) -> GWElement:
    """The genuine diagonal form <e1> + <e2> + ... ."""
    return GWElement(ctx, pos=entries)


# ---------------------------------------------------------------------------
# Hilbert symbols and equality over Q
# ---------------------------------------------------------------------------


def _split_p(n: int, p: int) -> tuple[int, int]:
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a, n


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError("Legendre symbol of a multiple of p")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, p: int) -> int:
    """The Hilbert symbol (a,b)_p at a finite prime p, for nonzero a, b."""
    a, b = _squarefree(a), _squarefree(b)
    if not _is_prime(p) and p != 2:
        raise ValueError("p must be prime")
    if p == 2:
        alpha, u = _split_p(a, 2)
        beta, v = _split_p(b, 2)
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        om_u, om_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    out = 1
    if (alpha * beta) % 2:
        out *= _legendre(-1, p)
    if beta % 2:
        out *= _legendre(u, p)
    if alpha % 2:
        out *= _legendre(v, p)
    return out


def hilbert_symbol_real(a, b) -> int:
    """The Hilbert symbol at the real place."""
    return -1 if (Fraction(a) < 0 and Fraction(b) < 0) else 1


def _hasse_witt(entries: Sequence[int], p: int) -> int:
    out = 1
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            out *= hilbert_symbol(entries[i], entries[j], p)
    return out


def _relevant_primes(entries: Sequence[int]) -> list[int]:
    primes = {2}
    for a in entries:
        primes.update(int(p) for p in factorint(abs(a)))
    return sorted(primes)


def is_equal(a: GWElement, b: GWElement) -> bool:
    """Exact equality in the Grothendieck-Witt ring.

    Over Q the decision clears negative parts and compares the two genuine
    forms through rank, signature, discriminant, and Hasse invariants at
    every relevant place; over a prime field rank and discriminant decide.
    """
    if not isinstance(a, GWElement) or not isinstance(b, GWElement):
        raise TypeError("is_equal expects two GWElements")
    if a.ctx != b.ctx:
        raise ContextMismatchError(
            f"cannot compare elements over {a.ctx.label()} and {b.ctx.label()}"
        )
    kind = a.ctx.kind
    if kind == _PRIME:
        return a.rank == b.rank and a.discriminant() == b.discriminant()
    if kind != _RATIONALS:
        raise UnsupportedInvariantError(
            f"equality is not decidable over {a.ctx.label()} here"
        )
    if a.rank != b.rank:
        return False
    left = a.pos + b.neg
    right = b.pos + a.neg
    if sorted(left) == sorted(right):
        return True
    sig = lambda ent: sum(1 if v > 0 else -1 for v in ent)
    if sig(left) != sig(right):
        return False
    dl = dr = 1
    for v in left:
        dl *= v
    for v in right:
        dr *= v
    if _squarefree(dl) != _squarefree(dr):
        return False
    for p in _relevant_primes(left + right):
        if _hasse_witt(left, p) != _hasse_witt(right, p):
            return False
    return True


# ---------------------------------------------------------------------------
# specialize: GW(Q(t)) -> GW(Q) at t=0
# ---------------------------------------------------------------------------


def specialize(e: GWElement) -> GWElement:
    """Send <t^m * u> to the square class of u(0).

    Representatives are stored with the exact power of t split off, so the
    unit is evaluable at 0; a malformed representative raises
    NonSpecializableError.
    """
    if e.ctx.kind != _RATFUNC:
        raise ContextMismatchError("specialize expects an element over Q(t)")

    def value(rep):
        _parity, num, den = rep
        d0 = uv.eval_at(den, 0)
        if d0 == 0:
            raise NonSpecializableError("unit denominator vanishes at t=0")
        n0 = uv.eval_at(num, 0)
        if n0 == 0:
            raise NonSpecializableError("unit numerator vanishes at t=0")
        return n0 / d0

    return GWElement(
        RATIONALS,
        pos=[value(r) for r in e.pos],
        neg=[value(r) for r in e.neg],
    )


# ---------------------------------------------------------------------------
# transfer: Scharlau trace form along Q[x]/(g) -> Q
# ---------------------------------------------------------------------------


def _mul_mod(a: uv.Poly, b: uv.Poly, g: uv.Poly) -> uv.Poly:
    return uv.mod(uv.mul(a, b), g)


def _trace(h: uv.Poly, g: uv.Poly) -> Fraction:
    """Trace of multiplication by h on the power basis of Q[x]/(g)."""
    d = uv.degree(g)
    t = Fraction(0)
    col = uv.mod(h, g)
    for j in range(d):
        if j:
            col = _mul_mod(col, (Fraction(0), Fraction(1)), g)
        if j < len(col):
            t += col[j]
    return t


def trace_form_gram(g, c) -> list[list[Fraction]]:
    """Gram matrix Tr(c * x^(i+j)) of the scaled trace form on Q[x]/(g)."""
    g = uv.poly(g)
    d = uv.degree(g)
    c = _as_residue(c, g) if not isinstance(c, (int, Fraction)) else uv.const(c)
    gram = [[Fraction(0)] * d for _ in range(d)]
    power = uv.mod(uv.poly(c), g)
    # power runs over c * x^k for k = 0 .. 2d-2
    for k in range(2 * d - 1):
        if k:
            power = _mul_mod(power, (Fraction(0), Fraction(1)), g)
        tr = _trace(power, g)
        for i in range(d):
            j = k - i
            if 0 <= j < d:
                gram[i][j] = tr
    return gram


def transfer(g, e: GWElement) -> GWElement:
    """Scharlau transfer of e along the trace of Q[x]/(g) over Q.

    ``g`` is a monic irreducible polynomial given by ascending coefficients;
    ``e`` must live over the matching extension context, its classes being
    polynomial residues mod g.  Each class <c> maps to the diagonalization
    of the Gram matrix Tr(c * x^(i+j)).
    """
    ctx = FieldCtx.extension(g)
    if e.ctx != ctx:
        raise ContextMismatchError("element does not live over Q[x]/(g)")
    out = GWElement.zero(RATIONALS)
    for rep in e.pos:
        out = out + diagonalize(trace_form_gram(ctx.min_poly, rep))
    for rep in e.neg:
        out = out - diagonalize(trace_form_gram(ctx.min_poly, rep))
    return out


# ---------------------------------------------------------------------------
# symmetric congruence diagonalization
# ---------------------------------------------------------------------------


class _QOps:
    @staticmethod
    def of(v):
        return Fraction(v)

    zero = Fraction(0)

    @staticmethod
    def is_zero(v):
        return v == 0

    @staticmethod
    def div(a, b):
        return a / b


class _FpOps:
    def __init__(self, p):
        self.p = p
        self.zero = 0

    def of(self, v):
        fr = Fraction(v)
        den = fr.denominator % self.p
        if den == 0:
            raise ValueError("denominator vanishes in the prime field")
        return fr.numerator * pow(den, -1, self.p) % self.p

    def is_zero(self, v):
        return v % self.p == 0

    def div(self, a, b):
        return a * pow(b % self.p, -1, self.p) % self.p


def diagonalize(gram, ctx: FieldCtx = RATIONALS) -> GWElement:
    """Diagonalize a symmetric matrix by congruence; return its form.

    Pivoting is deterministic: the first nonzero diagonal entry of the
    trailing block is used, and if the whole diagonal vanishes the row j is
    added to row i (and column j to column i) for the lowest (i, j) with a
    nonzero off-diagonal entry.  A singular matrix raises
    DegenerateFormError.
    """
    if ctx.kind == _RATIONALS:
        ops = _QOps()
    elif ctx.kind == _PRIME:
        ops = _FpOps(ctx.p)
    else:
        raise UnsupportedInvariantError(
            f"diagonalization is not implemented over {ctx.label()}"
        )
    n = len(gram)
    a = [[ops.of(v) for v in row] for row in gram]
    for row in a:
        if len(row) != n:
            raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix must be symmetric")

    diag = []
    for k in range(n):
        pivot = None
        for j in range(k, n):
            if not ops.is_zero(a[j][j]):
                pivot = j
                break
        if pivot is None:
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if not ops.is_zero(a[i][j]):
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                raise DegenerateFormError(
                    f"matrix has rank {k} < {n}; the form is degenerate"
                )
            i, j = found
            for col in range(n):
                a[i][col] = a[i][col] + a[j][col]
            for row in range(n):
                a[row][i] = a[row][i] + a[row][j]
            pivot = i
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            for row in a:
                row[k], row[pivot] = row[pivot], row[k]
        d = a[k][k]
        for r in range(k + 1, n):
            if ops.is_zero(a[r][k]):
                continue
            f = ops.div(a[r][k], d)
            for col in range(n):
                a[r][col] = a[r][col] - f * a[k][col]
            for row in range(n):
                a[row][r] = a[row][r] - f * a[row][k]
        diag.append(d)
    return GWElement(ctx, pos=diag)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _display_key(ctx: FieldCtx, rep):
    if ctx.kind in (_RATIONALS, _PRIME):
        return (abs(rep), rep < 0)
    return rep


def format_terms(e: GWElement, unicode_brackets: bool = True) -> str:
    """Human-readable sum of generators, e.g. "<2> - <1> - <-2>"."""
    lo, hi = ("⟨", "⟩") if unicode_brackets else ("<", ">")
    if e.is_zero_form():
        return "0"
    parts = []
    for rep in sorted(e.pos, key=lambda r: _display_key(e.ctx, r)):
        parts.append(("+", f"{lo}{e.ctx.rep_str(rep)}{hi}"))
    for rep in sorted(e.neg, key=lambda r: _display_key(e.ctx, r)):
        parts.append(("-", f"{lo}{e.ctx.rep_str(rep)}{hi}"))
    out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


def to_text(e: GWElement) -> str:
    """Canonical machine form: "<p1,p2,...> - <n1,...>", or "0"."""
    pos = ",".join(e.ctx.rep_str(r) for r in e.pos)
    neg = ",".join(e.ctx.rep_str(r) for r in e.neg)
    if not pos and not neg:
        return "0"
    if not neg:
        return f"<{pos}>"
    if not pos:
        return f"-<{neg}>"
    return f"<{pos}> - <{neg}>"


def to_json_dict(e: GWElement) -> dict:
    if e.ctx.kind not in (_RATIONALS, _PRIME):
        raise UnsupportedInvariantError(
            f"JSON serialization is defined over Q and prime fields, not {e.ctx.label()}"
        )
    return {"field": e.ctx.label(), "pos": list(e.pos), "neg": list(e.neg)}


def from_json_dict(d: Mapping) -> GWElement:
    label = d["field"]
    if label == "Q":
        ctx = RATIONALS
    elif label.startswith("Fp:"):
        ctx = FieldCtx.prime_field(int(label[3:]))
    else:
        raise ValueError(f"unknown field label {label!r}")
    return GWElement(ctx, pos=d["pos"], neg=d["neg"])


def parse_ratfunc(text: str) -> tuple[uv.Poly, uv.Poly]:
    """Parse an expression in t (with + - * / ^ and parentheses) exactly.

    Returns a (numerator, denominator) pair of polynomials; used for square
    classes over Q(t), e.g. "3*t^2" or "t*(1+t)/(2-t)".
    """
    src = text
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(src) and src[pos].isspace():
            pos += 1

    def atom() -> tuple[uv.Poly, uv.Poly]:
        nonlocal pos
        skip()
        if pos >= len(src):
            raise ParseError("unexpected end of expression", pos)
        ch = src[pos]
        if ch == "(":
            pos += 1
            v = expr()
            skip()
            if pos >= len(src) or src[pos] != ")":
                raise ParseError("missing ')'", pos)
            pos += 1
            return v
        if ch == "t":
            pos += 1
            return ((Fraction(0), Fraction(1)), uv.ONE)
        if ch.isdigit():
            start = pos
            while pos < len(src) and src[pos].isdigit():
                pos += 1
            if pos < len(src) and src[pos] == "/":
                # a slash here is division of values, handled by term()
                pass
            return (uv.const(Fraction(int(src[start:pos]))), uv.ONE)
        raise ParseError(f"unexpected character {ch!r} in t-expression", pos)

    def power() -> tuple[uv.Poly, uv.Poly]:
        nonlocal pos
        v = atom()
        skip()
        if pos < len(src) and src[pos] == "^":
            pos += 1
            skip()
            start = pos
            while pos < len(src) and src[pos].isdigit():
                pos += 1
            if start == pos:
                raise ParseError("exponent must be a non-negative integer", pos)
            k = int(src[start:pos])
            num, den = uv.ONE, uv.ONE
            for _ in range(k):
                num, den = uv.mul(num, v[0]), uv.mul(den, v[1])
            return (num, den)
        return v

    def unary() -> tuple[uv.Poly, uv.Poly]:
        nonlocal pos
        skip()
        sign = 1
        while pos < len(src) and src[pos] in "+-":
            if src[pos] == "-":
                sign = -sign
            pos += 1
            skip()
        num, den = power()
        return (uv.scale(num, Fraction(sign)), den)

    def term() -> tuple[uv.Poly, uv.Poly]:
        nonlocal pos
        num, den = unary()
        while True:
            skip()
            if pos < len(src) and src[pos] == "*":
                pos += 1
                n2, d2 = unary()
                num, den = uv.mul(num, n2), uv.mul(den, d2)
            elif pos < len(src) and src[pos] == "/":
                pos += 1
                n2, d2 = unary()
                if uv.is_zero(n2):
                    raise ZeroDivisionError("division by zero in t-expression")
                num, den = uv.mul(num, d2), uv.mul(den, n2)
            else:
                return (num, den)

    def expr() -> tuple[uv.Poly, uv.Poly]:
        nonlocal pos
        num, den = term()
        while True:
            skip()
            if pos < len(src) and src[pos] in "+-":
                op = src[pos]
                pos += 1
                n2, d2 = term()
                # a/b +- c/d = (ad +- cb) / bd
                left = uv.mul(num, d2)
                right = uv.mul(n2, den)
                num = uv.add(left, right) if op == "+" else uv.sub(left, right)
                den = uv.mul(den, d2)
            else:
                return (num, den)

    out = expr()
    skip()
    if pos != len(src):
        raise ParseError(f"trailing input {src[pos:]!r} in t-expression", pos)
    if uv.is_zero(out[0]):
        raise ValueError("zero has no square class")
    return out


def parse_gw(text: str, ctx: FieldCtx = RATIONALS, entry_parser=None) -> GWElement:
    """Parse "<a,b> - <c>"-style and "<a> + <b> - <c>"-style expressions.

    Angle brackets may be ASCII or the Unicode pair; groups carry a sign and
    contribute all their comma-separated entries with that sign.
    """
    if entry_parser is None:
        entry_parser = parse_ratfunc if ctx.kind == _RATFUNC else Fraction
    src = text.replace("⟨", "<").replace("⟩", ">").replace("−", "-")
    i, n = 0, len(src)
    pos_vals, neg_vals = [], []
    sign = 1
    seen = False
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "+":
            sign = 1
            i += 1
            continue
        if ch == "-":
            sign = -sign
            i += 1
            continue
        if ch == "0" and not seen and src[i + 1 :].strip() == "":
            return GWElement.zero(ctx)
        if ch != "<":
            raise ParseError(f"expected '<' in form expression, found {ch!r}", i)
        j = src.find(">", i)
        if j < 0:
            raise ParseError("unclosed '<' in form expression", i)
        body = src[i + 1 : j].strip()
        if body:
            for piece in body.split(","):
                piece = piece.strip()
                try:
                    value = entry_parser(piece)
                except NonSpecializableError:
                    raise
                except ParseError:
                    raise
                except Exception as exc:
                    raise ParseError(f"bad square-class entry {piece!r}: {exc}", i) from exc
                (pos_vals if sign > 0 else neg_vals).append(value)
        seen = True
        sign = 1
        i = j + 1
    if not seen:
        raise ParseError("empty form expression", 0)
    return GWElement(ctx, pos=pos_vals, neg=neg_vals)
