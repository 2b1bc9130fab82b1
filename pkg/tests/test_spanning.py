from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latgeo.constructions import cube, empty_simplex_vol2, standard_simplex, wide_nonidp
from latgeo.errors import NonLatticePolytope
from latgeo.polytope import dilate, hull_from_points, lattice_points
from latgeo.random_gen import random_lattice_polytope, random_lattice_simplex
from latgeo.spanning import (
    affine_lattice_of_points,
    caratheodory_spanning_rank,
    generating_subset_recursive,
    is_spanning,
    size_bound_C,
    spanning_rank,
)
from oracles import (
    affine_index_data,
    csr_bruteforce,
    is_spanning_bruteforce,
    same_affine_lattice,
    spanning_rank_bruteforce,
)

EMPTY = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)]


@pytest.mark.parametrize(
    "pts,index",
    [
        ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 1),
        (EMPTY, 2),
        ([(0, 0), (2, 0), (0, 2)], 4),
    ],
)
def test_affine_lattice_index(pts, index):
    assert affine_lattice_of_points(pts).index == index
    assert affine_index_data(pts)[1] == index


def test_spanning_examples():
    for d in (1, 2, 3, 4):
        assert is_spanning(standard_simplex(d))
    E = empty_simplex_vol2()
    assert not is_spanning(E)
    assert is_spanning(dilate(E, 2))


def test_spanning_needs_lattice_polytope():
    with pytest.raises(NonLatticePolytope):
        is_spanning(standard_simplex(2, Fraction(1, 2)))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_genset_of_simplex_is_vertices(d):
    P = standard_simplex(d)
    assert sorted(generating_subset_recursive(P).points) == sorted(P.vertices)


def test_genset_examples():
    P = standard_simplex(2, 2)
    g = generating_subset_recursive(P)
    assert len(g.points) == 3
    assert same_affine_lattice(g.points, lattice_points(P))
    assert sorted(generating_subset_recursive(empty_simplex_vol2()).points) == sorted(EMPTY)


def test_size_bound_values():
    assert size_bound_C(0) == 2
    assert size_bound_C(1) == 3
    assert size_bound_C(2) == 3 * (2 * Fraction(2783, 1291) * 2 + 1)
    assert all(size_bound_C(d) > d + 1 for d in range(1, 6))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_spanning_rank_of_simplex(d):
    sr = spanning_rank(standard_simplex(d))
    assert sr.value == d + 1 and sr.exact


def test_spanning_rank_examples():
    sr = spanning_rank(standard_simplex(2, 2))
    assert sr.value == 3 == spanning_rank_bruteforce(lattice_points(standard_simplex(2, 2)))
    assert spanning_rank(empty_simplex_vol2()).value == 4 == spanning_rank_bruteforce(EMPTY)


def test_spanning_rank_budget_fallback():
    P = cube(3, 3)
    sr = spanning_rank(P, budget=10)
    assert not sr.exact and sr.flag == "upper-bound-only"
    assert same_affine_lattice(sr.witness, lattice_points(P))


@pytest.mark.parametrize(
    "P",
    [hull_from_points([(0,), (1,)]), standard_simplex(2, 2), standard_simplex(2), cube(2, 1)],
    ids=["segment", "2simplex2", "simplex2", "square"],
)
def test_csr_matches_bruteforce(P):
    res = caratheodory_spanning_rank(P)
    assert res.exact
    assert res.value == csr_bruteforce(lattice_points(P))
    assert res.value <= spanning_rank(P).value


def test_csr_bracket_on_simplex():
    for d in (1, 2, 3):
        res = caratheodory_spanning_rank(standard_simplex(d))
        assert res.upper <= d + 1 and res.lower <= res.upper


@settings(max_examples=40)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_genset_valid_and_small(d, seed):
    P = random_lattice_polytope(seed, d, bound=3)
    g = generating_subset_recursive(P)
    pts = lattice_points(P)
    assert set(g.points) <= set(pts)
    assert affine_lattice_of_points(g.points).same_as(affine_lattice_of_points(pts))
    assert same_affine_lattice(g.points, pts)
    assert len(g.points) < size_bound_C(d)
    sr = spanning_rank(P)
    if sr.exact:
        assert sr.value <= len(g.points)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_spanning_rank_three_dimensional_at_most_five(seed):
    P = random_lattice_polytope(seed, 3, bound=2, m=6)
    sr = spanning_rank(P)
    if sr.exact:
        assert sr.value <= 5
    assert is_spanning(P) == is_spanning_bruteforce(lattice_points(P))


@settings(max_examples=30)
@given(st.integers(3, 4), st.integers(0, 10**6))
def test_simplex_dilate_spanning(d, seed):
    P = random_lattice_simplex(seed, d, bound=2)
    k = (d + 1) // 2
    assert is_spanning(dilate(P, k))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_wide_family_spanning(k):
    assert is_spanning(wide_nonidp(3, k))
