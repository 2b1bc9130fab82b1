from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latgeo.constructions import cube, gw1_diamond, hirzebruch, standard_simplex, wide_triangle
from latgeo.errors import NotDelzant
from latgeo.gromov import (
    _interior_lattice_points,
    delzant_polygon_classify,
    gromov_bounds,
    is_delzant,
    largest_diamond,
    lu_lambda,
    lu_upsilon,
)
from latgeo.polytope import apply_map, box, contains_polytope, hull_from_points, translate
from latgeo.random_gen import random_delzant, random_unimodular_map
from latgeo.width import facet_width, lattice_width
from oracles import delzant_bruteforce_polygon, facets_bruteforce, lambda_bruteforce

H = hirzebruch(2, 7, 2)
TWO_DELTA = standard_simplex(2, 2)
SHIFT = (Fraction(1, 7), Fraction(3, 5))


@pytest.mark.parametrize(
    "P,expected",
    [
        (box((0, 0), (1, 1)), True),
        (box((0, 0, 0), (1, 1, 1)), True),
        (TWO_DELTA, True),
        (hull_from_points([(0, 0), (2, 1), (1, 2)]), False),
        (H, True),
    ],
)
def test_is_delzant(P, expected):
    assert is_delzant(P) == expected
    if P.dim == 2:
        assert delzant_bruteforce_polygon(P.vertices) == expected


def test_lambda_examples():
    lam = lu_lambda(H)
    assert lam.value == 2 == lambda_bruteforce(facets_bruteforce(H.vertices), 3)
    assert sorted(u for u, a in lam.combination(H)) == [(-1, 0), (1, 0)]
    lam = lu_lambda(TWO_DELTA)
    assert lam.value == 2 == lambda_bruteforce(facets_bruteforce(TWO_DELTA.vertices), 3)
    for P in (H, TWO_DELTA):
        assert lu_lambda(translate(P, SHIFT)).value == lu_lambda(P).value


def test_lambda_requires_delzant():
    with pytest.raises(NotDelzant):
        lu_lambda(hull_from_points([(0, 0), (2, 1), (1, 2)]))


@pytest.mark.parametrize("P,value", [(H, 2), (TWO_DELTA, 2), (box((0, 0), (5, 5)), 5)])
def test_upsilon_examples(P, value):
    assert lu_upsilon(P).value == value


def test_diamond_examples():
    d = largest_diamond(box((0, 0), (2, 2))).diamond
    assert d.a == 2 and d.problems(box((0, 0), (2, 2))) == []
    for t in (1, 2, 3):
        assert largest_diamond(standard_simplex(2, t)).diamond.a == t
    assert largest_diamond(standard_simplex(3, 2)).diamond.a == 2
    assert largest_diamond(gw1_diamond()).diamond.a == 2


def test_report_examples():
    rep = gromov_bounds(box((0, 0), (3, 3)))
    assert rep.lower_bound == rep.lattice_width == rep.upsilon == rep.lambda_upper == 3
    rep = gromov_bounds(H)
    assert rep.bracket == (2, 2) and rep.lambda_upper == 2
    rep = gromov_bounds(hull_from_points([(0, 0), (1, 0), (0, 3), (1, 2)]))
    assert rep.bracket == (1, 1)


def test_report_without_delzant():
    rep = gromov_bounds(wide_triangle(3))
    assert not rep.delzant and rep.lambda_upper is None
    assert rep.lower_bound <= rep.lattice_width


def test_classification_examples():
    assert delzant_polygon_classify(TWO_DELTA) == "2Δ₂-equivalent"
    assert delzant_polygon_classify(hull_from_points([(0, 0), (1, 0), (0, 3), (1, 2)])) == "trapezoid(3,1)"
    P = box((0, 0), (2, 2))
    assert delzant_polygon_classify(P) == "has-interior-point"
    assert _interior_lattice_points(P) == [(1, 1)]


def test_facet_width_is_not_monotone():
    T = wide_triangle(3)
    R = box((0, -1), (4, 1))
    assert contains_polytope(R, T)
    assert facet_width(T)[0] == 7 and facet_width(R)[0] == 2


@settings(max_examples=100)
@given(st.integers(1, 3), st.booleans(), st.integers(0, 10**6))
def test_lu_bounds_on_generated_delzant(d, lattice, seed):
    P = random_delzant(seed, d, lattice=lattice)
    assert is_delzant(P)
    ups = lu_upsilon(P)
    lam = lu_lambda(P)
    assert ups.value == facet_width(P)[0] == lattice_width(P).value
    assert ups.value <= lam.value
    T = random_unimodular_map(seed, d, "r")
    Q = apply_map(P, T)
    assert lu_lambda(Q).value == lam.value and lu_upsilon(Q).value == ups.value


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_report_consistency(seed):
    P = random_delzant(seed, 2, lattice=True)
    rep = gromov_bounds(P)
    assert rep.lower_bound <= rep.lattice_width <= rep.lambda_upper
    if _interior_lattice_points(P):
        assert rep.diamond.diamond.a >= 2
