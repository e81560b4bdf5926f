"""The Scheja-Storch form and the quadratic Milnor number.

Every gram matrix asserted here was cross-checked against an independent
implementation (sympy polynomial division for the Bezout matrix, sympy
groebner for the quotient, Berkowitz determinants) before being frozen.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from quadsing import ekl, gw
from quadsing import poly as P
from quadsing.errors import (
    InadmissibleWeightsError,
    InputDomainError,
    NotIsolatedError,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def _form(*entries):
    return gw.diag_form([Fraction(a) for a in entries])


def _classes(e):
    """Sorted square-class representatives of a genuine (pos-only) form."""
    assert e.neg == ()
    return sorted(e.pos)


def _gram(bf):
    return [list(row) for row in bf.gram]


def _antidiagonal(n, value):
    return [[value if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# bezoutian
# ---------------------------------------------------------------------------


def test_bezoutian_univariate():
    g = P.parse("5*x", ("x",))
    assert ekl.bezoutian([g]) == P.Polynomial.constant(2, 5)
    h = P.parse("3*x^2", ("x",))
    # 3(X^2 - Y^2)/(X - Y) = 3X + 3Y
    b = ekl.bezoutian([h])
    assert b.coefficient((1, 0)) == 3
    assert b.coefficient((0, 1)) == 3


def test_bezoutian_diagonal_system():
    gs = [P.parse("2*x", XY), P.parse("-2*y", XY)]
    assert ekl.bezoutian(gs) == P.Polynomial.constant(4, -4)


def test_bezoutian_divided_difference_identity():
    """det of the divided-difference matrix recovers g_i(X) - g_i(Y) row-wise.

    The implementation asserts this internally; here a nontrivial system is
    pushed through to make sure the assertion is actually exercised.
    """
    gs = [P.parse("2*x*y", XY), P.parse("x^2 + 4*y^3", XY)]
    b = ekl.bezoutian(gs)
    assert b.nvars == 4
    assert b.total_degree() == 3


# ---------------------------------------------------------------------------
# the frozen gram battery
# ---------------------------------------------------------------------------


def test_node_form():
    bf = ekl.ss_form(ekl.singularity("x^2 - y^2", XY))
    assert bf.basis == ((0, 0),)
    assert _gram(bf) == [[-4]]
    assert _classes(bf.gw) == [-1]


def test_cusp_form():
    bf = ekl.ss_form(ekl.singularity("x^2 - y^3", XY))
    assert bf.basis == ((0, 0), (0, 1))
    assert _gram(bf) == [[0, -6], [-6, 0]]
    assert _classes(bf.gw) == [-3, 3]


def test_d5_form():
    bf = ekl.ss_form(ekl.singularity("x^2*y + y^4", XY))
    assert bf.basis == ((0, 0), (0, 1), (1, 0), (0, 2), (2, 0))
    assert _gram(bf) == [
        [0, 0, 0, 0, -2],
        [0, 0, 0, 8, 0],
        [0, 0, -2, 0, 0],
        [0, 8, 0, 0, 0],
        [-2, 0, 0, 0, 0],
    ]
    assert _classes(bf.gw) == [-2, -1, -1, 1, 1]


def test_a4_form():
    bf = ekl.ss_form(ekl.singularity("x^2 - y^5", XY))
    assert bf.dimension == 4
    assert _gram(bf) == _antidiagonal(4, -10)
    assert _classes(bf.gw) == [-5, -5, 5, 5]


def test_e6_family_forms():
    for src, value in (("x^3 - y^4", -12), ("x^3 + y^4", 12)):
        bf = ekl.ss_form(ekl.singularity(src, XY))
        assert bf.dimension == 6
        assert _gram(bf) == _antidiagonal(6, value)
        assert _classes(bf.gw) == [-6, -6, -6, 6, 6, 6]


def test_fermat_cubic_curve_form():
    bf = ekl.ss_form(ekl.singularity("x^3 + y^3", XY))
    assert _gram(bf) == _antidiagonal(4, 9)
    assert _classes(bf.gw) == [-2, -2, 2, 2]


def test_fermat_cubic_surface_form():
    bf = ekl.ss_form(ekl.singularity("x^3 + y^3 + z^3", XYZ))
    assert bf.dimension == 8
    assert _classes(bf.gw) == [-6, -6, -6, -6, 6, 6, 6, 6]


def test_nonhomogeneous_input():
    bf = ekl.ss_form(ekl.singularity("x^3 - x*y", XY))
    assert _gram(bf) == [[-1]]
    assert _classes(bf.gw) == [-1]


def test_three_variable_node():
    bf = ekl.ss_form(ekl.singularity("x^2 - y^2 + z^2", XYZ))
    assert _gram(bf) == [[-8]]
    assert _classes(bf.gw) == [-2]


# ---------------------------------------------------------------------------
# quadratic Milnor number
# ---------------------------------------------------------------------------


def test_quadratic_milnor_known_values():
    mu = ekl.quadratic_milnor(ekl.singularity("x^2 - y^2", XY))
    assert gw.is_equal(mu, _form(-1))
    mu = ekl.quadratic_milnor(ekl.singularity("x^2 - y^3", XY))
    assert gw.is_equal(mu, _form(1, -1))


def test_quadratic_milnor_rank_is_dimension():
    for src, names, dim in (
        ("x^2 - y^5", XY, 4),
        ("x^2*y + y^4", XY, 5),
        ("x^3 + y^3 + z^3", XYZ, 8),
    ):
        s = ekl.singularity(src, names)
        assert ekl.quadratic_milnor(s).rank == dim
        assert P.groebner(P.partials(s.f)).dimension == dim


def test_coordinate_invariance():
    """mu^q is untouched by a linear change with determinant one."""
    cases = [
        ("x^2 - y^3", XY, ("x + y", "y")),
        ("x^2 - y^2", XY, ("x", "2*x + y")),
        ("x^3 + y^3 + z^3", XYZ, ("x + z", "y - x", "z")),
    ]
    for src, names, images in cases:
        before = ekl.quadratic_milnor(ekl.singularity(src, names))
        g = P.substitute(
            P.parse(src, names), [P.parse(im, names) for im in images]
        )
        after = ekl.quadratic_milnor(
            ekl.singularity(P.format_poly(g, names), names)
        )
        assert gw.is_equal(before, after)


def test_signature_zero_for_plain_curve_singularities():
    # both frozen curve batteries split into hyperbolic planes
    rng = random.Random(7)
    for _ in range(3):
        k = rng.choice([3, 5, 7])
        mu = ekl.quadratic_milnor(ekl.singularity(f"x^2 - y^{k}", XY))
        assert mu.signature() == 0


# ---------------------------------------------------------------------------
# input validation
# ---------------------------------------------------------------------------


def test_singularity_must_vanish_at_origin():
    with pytest.raises(InputDomainError):
        ekl.singularity("x^2 + 1", XY)


def test_weights_must_be_positive_and_consistent():
    with pytest.raises(InputDomainError):
        ekl.singularity("x^2 - y^3", XY, weights=(0, 2), degree=6)
    with pytest.raises(InputDomainError):
        ekl.singularity("x^2 - y^3", XY, weights=(1, 1), degree=2)


def test_degree_inference():
    assert ekl.singularity("x^2 - y^3", XY, weights=(3, 2)).degree == 6
    assert ekl.singularity("x^2 - y^2", XY).degree == 2
    assert ekl.singularity("x^2 - y^3", XY).degree is None
    assert ekl.singularity("x^2 - y^3", XY, weights=(3, 2)).is_weighted()
    assert not ekl.singularity("x^2 - y^2", XY).is_weighted()


def test_non_isolated_inputs_are_rejected():
    with pytest.raises(NotIsolatedError):
        ekl.ss_form(ekl.singularity("x^2", XY))
    with pytest.raises(NotIsolatedError):
        ekl.ss_form(ekl.singularity("x^2*y^2", XY))


def test_smooth_point_gives_zero_dimensional_ring():
    # x has an invertible differential: the jacobian ideal is the unit ideal
    bf = ekl.ss_form(ekl.singularity("x + y", XY))
    assert bf.dimension == 0
    assert bf.gw.rank == 0


# ---------------------------------------------------------------------------
# Milnor-Orlik rank oracle
# ---------------------------------------------------------------------------


def test_milnor_rank_weighted_values():
    assert ekl.milnor_rank_weighted((3, 2), 6) == 2
    assert ekl.milnor_rank_weighted((5, 2), 10) == 4
    assert ekl.milnor_rank_weighted((4, 3), 12) == 6
    assert ekl.milnor_rank_weighted((1, 1), 2) == 1


def test_milnor_rank_weighted_rejects_bad_weights():
    with pytest.raises(InadmissibleWeightsError):
        ekl.milnor_rank_weighted((3, 2), 8)


def test_weighted_rank_matches_groebner_dimension():
    battery = [
        ("x^2 - y^3", (3, 2), 6),
        ("x^2 - y^5", (5, 2), 10),
        ("x^3 - y^4", (4, 3), 12),
    ]
    for src, weights, r in battery:
        s = ekl.singularity(src, XY, weights=weights, degree=r)
        mu = ekl.quadratic_milnor(s)
        assert mu.rank == ekl.milnor_rank_weighted(weights, r)
