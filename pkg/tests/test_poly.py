"""Sparse polynomial arithmetic, parsing, monomial orders, and Groebner
quotient bases."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadsing import poly as P
from quadsing.errors import (
    InfiniteQuotientError,
    InvalidIdealError,
    ParseError,
    UnknownVariableError,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def _p(src, variables=XY):
    return P.parse(src, variables)


# ---------------------------------------------------------------------------
# parsing and formatting
# ---------------------------------------------------------------------------


def test_parse_basic_forms():
    f = _p("x^2 - y^3")
    assert f.coefficient((2, 0)) == 1
    assert f.coefficient((0, 3)) == -1
    assert f.total_degree() == 3
    assert _p("3/2*x*y").coefficient((1, 1)) == Fraction(3, 2)
    assert _p("-x") == P.Polynomial.monomial(2, (1, 0), -1)
    assert _p("x - - y") == _p("x + y")


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        _p("x^2 -")
    assert info.value.position == 5
    with pytest.raises(UnknownVariableError):
        _p("x + w")
    with pytest.raises(ParseError):
        _p("x^(-2)")
    with pytest.raises(ParseError):
        _p("2 x")  # implicit multiplication is not a thing
    with pytest.raises(ParseError):
        _p("")


def test_format_round_trip_is_stable():
    for src in ("x^2 - y^3", "x*y + 1", "2*x^2*y - 1/3*y^2 + 5", "0"):
        f = _p(src)
        assert _p(P.format_poly(f, XY)) == f


coeffs = st.integers(min_value=-6, max_value=6)
exps = st.tuples(
    st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3)
)
polys = st.lists(st.tuples(exps, coeffs), max_size=5).map(
    lambda terms: sum(
        (P.Polynomial.monomial(2, e, c) for e, c in terms),
        P.Polynomial.zero(2),
    )
)


@settings(max_examples=80, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == P.Polynomial.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_format_parse_round_trip(f):
    assert _p(P.format_poly(f, XY)) == f


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


def test_grevlex_ordering():
    key = P.GREVLEX.key
    # degree first
    assert key((2, 0)) > key((1, 0))
    # same degree: grevlex puts x^2 above xy above y^2
    assert key((2, 0)) > key((1, 1)) > key((0, 2))


def test_lex_ordering():
    key = P.LEX.key
    assert key((1, 0)) > key((0, 5))
    assert key((1, 1)) > key((1, 0))


def test_leading_term():
    f = _p("x*y + y^3")
    assert f.leading(P.GREVLEX)[0] == (0, 3)
    assert f.leading(P.LEX)[0] == (1, 1)


# ---------------------------------------------------------------------------
# differentiation, substitution, weights
# ---------------------------------------------------------------------------


def test_partials():
    f = _p("x^2 - y^3")
    fx, fy = P.partials(f)
    assert fx == _p("2*x")
    assert fy == _p("-3*y^2")


def test_substitute_linear_change():
    f = _p("x^2 - y^2")
    u = _p("x + y")
    v = _p("x - y")
    assert P.substitute(f, [u, v]) == _p("4*x*y")


def test_quasi_homogeneity():
    f = _p("x^2 - y^3")
    assert P.is_quasi_homogeneous(f, (3, 2), 6)
    assert not P.is_quasi_homogeneous(f, (1, 1), 2)
    assert P.is_homogeneous(_p("x^2 - y^2"))
    assert not P.is_homogeneous(f)


def test_weights_admissible():
    f = _p("x^2 - y^3")
    assert P.weights_admissible((3, 2), 6, f)
    # 8 is not divisible by 3
    assert not P.weights_admissible((3, 2), 8, _p("x^2 - y^4"))
    # weights 2,4 share a factor
    assert not P.weights_admissible((2, 4), 8, _p("x^4 - y^2"))
    # admissible weights need the pure power of each variable with a_i > 1
    assert not P.weights_admissible((3, 2), 6, _p("x^2 - x*y"))


# ---------------------------------------------------------------------------
# Groebner bases and quotient structure
# ---------------------------------------------------------------------------


def test_groebner_cusp_jacobian():
    # jacobian ideal of x^2 - y^3: (2x, -3y^2)
    q = P.groebner([_p("2*x"), _p("-3*y^2")])
    assert q.is_finite
    assert q.dimension == 2
    assert q.standard_monomials == ((0, 0), (0, 1))


def test_groebner_d5_jacobian():
    # x^2 y + y^4: (2xy, x^2 + 4y^3)
    q = P.groebner([_p("2*x*y"), _p("x^2 + 4*y^3")])
    assert q.dimension == 5
    assert q.standard_monomials == ((0, 0), (0, 1), (1, 0), (0, 2), (2, 0))
    # reduced basis is monic and sorted by leading monomial
    lead = [g.leading(q.order)[0] for g in q.groebner]
    assert lead == [(1, 1), (0, 3), (3, 0)]
    for g in q.groebner:
        assert g.leading(q.order)[1] == 1


def test_groebner_unit_ideal():
    q = P.groebner([_p("x"), _p("y"), _p("x + y - 1")])
    assert q.contains_one()
    assert q.dimension == 0
    assert q.standard_monomials == ()


def test_groebner_rejects_zero_ideal():
    with pytest.raises(InvalidIdealError):
        P.groebner([P.Polynomial.zero(2)])


def test_infinite_quotient_detected():
    q = P.groebner([_p("x")])
    assert not q.is_finite
    with pytest.raises(InfiniteQuotientError):
        q.dimension


def test_normal_form_reduction():
    q = P.groebner([_p("2*x"), _p("-3*y^2")])
    nf = q.normal_form(_p("x^2 + y^2 + y + 1"))
    assert nf == _p("y + 1")
    assert q.normal_form(_p("x*y^5")).is_zero()


def test_nf_vector_matches_normal_form():
    q = P.groebner([_p("2*x*y"), _p("x^2 + 4*y^3")])
    std = q.standard_monomials
    vec = q.nf_vector((0, 3))  # y^3 = -x^2/4 mod the ideal
    nf = q.normal_form(P.Polynomial.monomial(2, (0, 3)))
    for idx, m in enumerate(std):
        assert nf.coefficient(m) == vec.get(idx, 0)


def test_dimension_independent_of_order():
    """The quotient dimension is intrinsic; grevlex and lex must agree."""
    systems = [
        [_p("2*x", XY), _p("-3*y^2", XY)],
        [_p("2*x*y", XY), _p("x^2 + 4*y^3", XY)],
        [_p("3*x^2", XY), _p("-5*y^4", XY)],
        [_p("3*x^2", XYZ), _p("3*y^2", XYZ), _p("3*z^2", XYZ)],
        [_p("2*x", XYZ), _p("-2*y", XYZ), _p("2*z", XYZ)],
    ]
    for gens in systems:
        a = P.groebner(gens, P.GREVLEX)
        b = P.groebner(gens, P.LEX)
        assert a.dimension == b.dimension


def test_reduced_basis_is_deterministic():
    gens = [_p("2*x*y"), _p("x^2 + 4*y^3")]
    a = P.groebner(gens)
    b = P.groebner(list(reversed(gens)))
    assert a.groebner == b.groebner
    assert a.standard_monomials == b.standard_monomials


def test_spoly_and_reduce():
    f = _p("x^2")
    g = _p("x*y + 1")
    s = P.spoly(f, g)
    assert s == _p("-x")
    assert P.reduce_poly(_p("x^2*y"), [g]) == _p("-x")
