from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latgeo import linalg
from latgeo.constructions import cube, hirzebruch, wide_nonidp, wide_triangle
from latgeo.errors import ZeroDirection
from latgeo.flatness import FltTable
from latgeo.gromov import is_delzant
from latgeo.polytope import apply_map, box, contains_polytope, dilate, hull_from_points
from latgeo.random_gen import (
    random_delzant,
    random_lattice_polytope,
    random_nested_pair,
    random_unimodular_map,
)
from latgeo.verify import _in_scaled_difference_body
from latgeo.width import directional_width, facet_width, lattice_width, successive_minima_diffbody
from oracles import width_bruteforce

TRIANGLE = [(0, 0), (3, -1), (4, 1)]


def test_directional_width_examples():
    assert directional_width(box((0, 0, 0), (1, 1, 1)), (1, 0, 0)) == 1
    assert directional_width(hull_from_points([(0, 0), (1, 0), (0, 1)]), (1, 1)) == 1
    assert directional_width(hull_from_points(TRIANGLE), (1, 3)) == 7
    with pytest.raises(ZeroDirection):
        directional_width(box((0, 0), (1, 1)), (0, 0))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_cube_width_and_tie_break(d):
    cert = lattice_width(cube(d, 4))
    assert cert.value == 4
    assert cert.direction == tuple(int(i == 0) for i in range(d))
    assert cert.certified


def test_triangle_width_matches_bruteforce():
    cert = lattice_width(hull_from_points(TRIANGLE))
    assert cert.value == width_bruteforce(TRIANGLE) == 2
    assert cert.direction == (0, 1)


@pytest.mark.parametrize("k", range(3, 9))
def test_wide_family_width(k):
    P = wide_nonidp(3, k)
    assert lattice_width(P).value == k


@pytest.mark.parametrize("k", [3, 4, 5])
def test_wide_family_width_crosschecked_by_enumeration(k):
    P = wide_nonidp(3, k)
    assert width_bruteforce(P.vertices, radius=2) == k


@pytest.mark.parametrize("k", range(3, 9))
def test_wide_family_width_in_dimension_four(k):
    assert lattice_width(wide_nonidp(4, k)).value == k


def test_facet_width_examples():
    assert facet_width(box((0, 0), (1, 1)))[0] == 1
    assert facet_width(wide_triangle(3))[0] == 7
    assert facet_width(hirzebruch(2, 7, 2))[0] == 2


def test_successive_minima_examples():
    m = successive_minima_diffbody(box((0, 0), (1, 1)))
    assert m.lambdas == (1, 1)
    assert set(m.witness_vectors) == {(1, 0), (0, 1)}
    m = successive_minima_diffbody(box((0, 0), (3, 5)))
    assert m.lambdas == (Fraction(1, 5), Fraction(1, 3))
    assert m.witness_vectors == ((0, 1), (1, 0))


def test_lower_dimensional_input_is_degenerate():
    seg = hull_from_points([(0, 0), (2, 2)], allow_lower_dim=True)
    cert = lattice_width(seg)
    assert cert.degenerate and cert.value == 0


def test_budget_exhaustion_is_reported():
    cert = lattice_width(wide_nonidp(3, 5), budget=1)
    assert not cert.certified and cert.status == "heuristic"


@settings(max_examples=500)
@given(st.integers(2, 4), st.sampled_from("zr"), st.integers(0, 10**6))
def test_width_invariant_under_unimodular_maps(d, mode, seed):
    P = random_lattice_polytope(seed, d, bound=3, m=d + 3)
    T = random_unimodular_map(seed + 1, d, mode)
    assert lattice_width(apply_map(P, T)).value == lattice_width(P).value


@settings(max_examples=60)
@given(st.integers(2, 3), st.integers(0, 10**6), st.fractions(Fraction(1, 7), 5).filter(lambda t: t > 0))
def test_width_is_homogeneous(d, seed, t):
    P = random_lattice_polytope(seed, d, bound=4)
    assert lattice_width(dilate(P, t)).value == t * lattice_width(P).value


@settings(max_examples=80)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_width_monotone_on_nested_pairs(d, seed):
    P, Q = random_nested_pair(seed, d, bound=5)
    assert contains_polytope(Q, P)
    assert lattice_width(P).value <= lattice_width(Q).value


@settings(max_examples=80)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_width_agrees_with_bruteforce_and_facet_width(d, seed):
    P = random_lattice_polytope(seed, d, bound=4)
    w = lattice_width(P).value
    assert w == width_bruteforce(P.vertices, radius=6 if d == 2 else 3)
    assert w <= facet_width(P)[0]


@settings(max_examples=60)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_delzant_width_equals_facet_width(d, seed):
    P = random_delzant(seed, d)
    assert is_delzant(P)
    assert lattice_width(P).value == facet_width(P)[0]


@settings(max_examples=60)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_minima_properties(d, seed):
    P = random_lattice_polytope(seed, d, bound=4)
    m = successive_minima_diffbody(P)
    assert list(m.lambdas) == sorted(m.lambdas)
    for lam, v in zip(m.lambdas, m.witness_vectors):
        assert _in_scaled_difference_body(P, lam, v)
    assert linalg.rank([list(v) for v in m.witness_vectors]) == d
    assert m.lambdas[-1] <= FltTable.upper(d) / lattice_width(P).value
