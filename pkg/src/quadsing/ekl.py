"""The quadratic Milnor number via the Scheja-Storch bilinear form.

Given an isolated singularity at the origin (polynomial f over Q with
f(0) = 0), the Bezoutian of the partial derivatives is reduced modulo the
Jacobian ideal in its X-block and Y-block separately.  Reading off the
coefficients over the standard-monomial basis of the Jacobian ring gives a
symmetric Gram matrix; its class in GW(Q) is the quadratic Milnor number.
Its rank is the classical Milnor number, which the weighted Milnor-Orlik
product reproduces independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import poly as P
from .errors import (
    InadmissibleWeightsError,
    InputDomainError,
    NotIsolatedError,
)
from .gw import GWElement, RATIONALS, diagonalize


class SingularityInput:
    """A polynomial singularity at the origin, with optional weight data.

    ``weights`` of None means the input is treated as unweighted; when
    weights are supplied the polynomial must be quasi-homogeneous for them,
    and ``degree`` (inferred if omitted) is the common weighted degree.
    For unweighted homogeneous f, ``degree`` is inferred as the total
    degree.  Critical points away from the origin must be translated to it
    by the caller.
    """

    __slots__ = ("f", "var_names", "weights", "degree")

    def __init__(
        self,
        f: P.Polynomial,
        var_names: Sequence[str],
        weights: Sequence[int] | None = None,
        degree: int | None = None,
    ):
        var_names = tuple(var_names)
        if f.nvars != len(var_names) or f.nvars < 1:
            raise InputDomainError("variable names must match the polynomial, one or more")
        if f.constant_term() != 0:
            raise InputDomainError("f must vanish at the origin")
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != f.nvars or any(w < 1 for w in weights):
                raise InputDomainError("weights must be positive, one per variable")
            degrees = {P.weighted_degree(e, weights) for e in f.terms}
            if degree is None:
                if len(degrees) != 1:
                    raise InputDomainError(
                        "f is not quasi-homogeneous for the given weights"
                    )
                degree = degrees.pop()
            elif degrees - {int(degree)}:
                raise InputDomainError(
                    f"f is not quasi-homogeneous of degree {degree} for the given weights"
                )
        elif degree is None and not f.is_zero() and P.is_homogeneous(f):
            degree = f.total_degree()
        self.f = f
        self.var_names = var_names
        self.weights = weights
        self.degree = int(degree) if degree is not None else None

    @property
    def nvars(self) -> int:
        return self.f.nvars

    @property
    def n(self) -> int:
        """Relative dimension: variable count minus one."""
        return self.f.nvars - 1

    def is_weighted(self) -> bool:
        return self.weights is not None and any(w != 1 for w in self.weights)

    def __repr__(self):
        text = P.format_poly(self.f, self.var_names)
        extra = f", weights={self.weights}, degree={self.degree}" if self.weights else ""
        return f"SingularityInput({text!r}{extra})"


def singularity(
    src: str | P.Polynomial,
    var_names: Sequence[str],
    weights: Sequence[int] | None = None,
    degree: int | None = None,
) -> SingularityInput:
    """Convenience constructor accepting an expression string."""
    f = P.parse(src, var_names) if isinstance(src, str) else src
    return SingularityInput(f, var_names, weights, degree)


# ---------------------------------------------------------------------------
# Bezoutian
# ---------------------------------------------------------------------------


def _embed(g: P.Polynomial, m: int, offset: int) -> P.Polynomial:
    """View an m-variable polynomial inside the 2m-variable X,Y ring."""
    terms = {}
    for exps, c in g.terms.items():
        e = [0] * (2 * m)
        for k, v in enumerate(exps):
            e[offset + k] = v
        terms[tuple(e)] = c
    return P.Polynomial(2 * m, terms)


def _delta(g: P.Polynomial, j: int, m: int) -> P.Polynomial:
    """Exact divided difference of g in slot j, with Y substituted in slots < j.

    Each term c*prod(v_k^(e_k)) contributes
    c * Y^(e_<j) * X^(e_>j) * sum_{u<e_j} X_j^u Y_j^(e_j-1-u),
    which clears the division by X_j - Y_j termwise.
    """
    terms: dict[tuple[int, ...], Fraction] = {}
    for exps, c in g.terms.items():
        e = exps[j]
        if e == 0:
            continue
        base = [0] * (2 * m)
        for k, v in enumerate(exps):
            if k < j:
                base[m + k] = v
            elif k > j:
                base[k] = v
        for u in range(e):
            t = list(base)
            t[j] = u
            t[m + j] = e - 1 - u
            key = tuple(t)
            acc = terms.get(key, Fraction(0)) + c
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
    return P.Polynomial(2 * m, terms)


def _det(mat: list[list[P.Polynomial]], nvars: int) -> P.Polynomial:
    """Determinant by Laplace expansion with column-subset memoization."""
    n = len(mat)
    if n == 0:
        return P.Polynomial.constant(nvars, 1)
    memo: dict[int, P.Polynomial] = {}

    def minor(mask: int, row: int) -> P.Polynomial:
        if row == n:
            return P.Polynomial.constant(nvars, 1)
        hit = memo.get(mask)
        if hit is not None:
            return hit
        out = P.Polynomial.zero(nvars)
        sign = 1
        for col in range(n):
            bit = 1 << col
            if not mask & bit:
                continue
            entry = mat[row][col]
            if not entry.is_zero():
                sub = minor(mask & ~bit, row + 1)
                out = out + entry * sub * sign
            sign = -sign
        memo[mask] = out
        return out

    return minor((1 << n) - 1, 0)


def bezoutian(gs: Sequence[P.Polynomial]) -> P.Polynomial:
    """det of the divided-difference matrix of gs, in the doubled X,Y ring.

    The entry matrix satisfies g_i(X) - g_i(Y) = sum_j Delta_ij * (X_j - Y_j),
    with the Y-substitution running left to right; the identity is checked
    by expansion before the determinant is taken.
    """
    m = len(gs)
    if any(g.nvars != m for g in gs):
        raise ValueError("need m polynomials in m variables")
    mat = [[_delta(g, j, m) for j in range(m)] for g in gs]
    for i, g in enumerate(gs):
        acc = P.Polynomial.zero(2 * m)
        for j in range(m):
            xj = P.Polynomial.variable(2 * m, j)
            yj = P.Polynomial.variable(2 * m, m + j)
            acc = acc + mat[i][j] * (xj - yj)
        if acc != _embed(g, m, 0) - _embed(g, m, m):
            raise AssertionError("divided-difference identity failed; this is a bug")
    return _det(mat, 2 * m)


# ---------------------------------------------------------------------------
# the Scheja-Storch form
# ---------------------------------------------------------------------------


@dataclass
class BilinearForm:
    """Symmetric bilinear form on the Jacobian ring, with its GW class."""

    basis: tuple[P.Exps, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    gw: GWElement

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def gw_class(self) -> GWElement:
        return self.gw


def ss_form(s: SingularityInput) -> BilinearForm:
    """The Scheja-Storch form of the singularity.

    Reduces the Bezoutian of the partials modulo the Jacobian ideal in the
    X and Y blocks separately and reads off the Gram matrix over the
    standard-monomial basis.  A non-isolated singularity (infinite
    Jacobian quotient) raises NotIsolatedError; a degenerate Gram matrix
    cannot occur for an isolated singularity and raises
    DegenerateFormError if it does.
    """
    gs = P.partials(s.f)
    if all(g.is_zero() for g in gs):
        raise NotIsolatedError("all partial derivatives vanish identically")
    quotient = P.groebner(gs)
    if not quotient.is_finite:
        raise NotIsolatedError(
            "the Jacobian ideal is not zero-dimensional; the singular locus is positive-dimensional"
        )
    d = quotient.dimension
    if d == 0:
        return BilinearForm((), (), GWElement.zero(RATIONALS))

    m = s.nvars
    bez = bezoutian(gs)
    gram = [[Fraction(0)] * d for _ in range(d)]
    for exps, c in bez.terms.items():
        alpha, beta = exps[:m], exps[m:]
        vx = quotient.nf_vector(alpha)
        if not vx:
            continue
        vy = quotient.nf_vector(beta)
        for k, a in vx.items():
            ca = c * a
            for l, b in vy.items():
                gram[k][l] += ca * b
    for i in range(d):
        for j in range(i + 1, d):
            if gram[i][j] != gram[j][i]:
                raise AssertionError("Scheja-Storch Gram matrix is not symmetric; this is a bug")
    gw = diagonalize(gram)
    rows = tuple(tuple(row) for row in gram)
    return BilinearForm(quotient.standard_monomials, rows, gw)


def quadratic_milnor(s: SingularityInput) -> GWElement:
    """The class of the Scheja-Storch form in GW(Q).

    Its rank equals the dimension of the Jacobian ring, i.e. the classical
    Milnor number; this is asserted as a postcondition.
    """
    form = ss_form(s)
    e = form.gw_class()
    if e.rank != form.dimension:
        raise AssertionError("rank of the quadratic Milnor number must equal dim J")
    return e


def milnor_rank_weighted(weights: Sequence[int], r: int) -> int:
    """Milnor-Orlik product prod_i (r - a_i)/a_i for admissible weights."""
    out = 1
    for a in weights:
        if a < 1 or (r - a) % a:
            raise InadmissibleWeightsError(
                f"(r - {a})/{a} is not a non-negative integer for r = {r}"
            )
        out *= (r - a) // a
    return out
