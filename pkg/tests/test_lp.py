from fractions import Fraction
from itertools import combinations

from hypothesis import given
from hypothesis import strategies as st

from latgeo.lp import feasible_point, solve_lp

TRIANGLE = [([1, 0], 0, ">="), ([0, 1], 0, ">="), ([2, 3], 6, "<=")]  # conv((0,0),(3,0),(0,2))


def test_unit_interval():
    res = solve_lp([1], [([1], 0, ">="), ([1], 1, "<=")])
    assert res.ok and res.optimum == 1


def test_triangle_optimum_matches_vertex_enumeration():
    res = solve_lp([1, 1], TRIANGLE)
    verts = [(0, 0), (3, 0), (0, 2)]
    assert res.optimum == max(x + y for x, y in verts) == 3
    assert tuple(res.witness) == (3, 0)


def test_infeasible_and_unbounded():
    assert solve_lp([1], [([1], 0, "<="), ([1], 1, ">=")]).status == "infeasible"
    assert solve_lp([1], [([1], 0, ">=")]).status == "unbounded"


def test_minimize_and_free_variables():
    res = solve_lp([1], [([1], -5, ">=")], maximize=False)
    assert res.optimum == -5


def test_feasible_point():
    p = feasible_point(TRIANGLE, 2)
    assert p is not None
    assert p[0] >= 0 and p[1] >= 0 and 2 * p[0] + 3 * p[1] <= 6


def _random_system():
    row = st.tuples(
        st.lists(st.integers(-5, 5), min_size=3, max_size=3),
        st.integers(-10, 10),
        st.sampled_from(["<=", ">="]),
    )
    return st.lists(row, min_size=1, max_size=7)


@given(_random_system(), st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.randoms())
def test_optimum_independent_of_row_order(cons, obj, rnd):
    box = [([1 if i == j else 0 for j in range(3)], 20, "<=") for i in range(3)]
    box += [([1 if i == j else 0 for j in range(3)], -20, ">=") for i in range(3)]
    system = list(cons) + box
    a = solve_lp(obj, system)
    shuffled = system[:]
    rnd.shuffle(shuffled)
    b = solve_lp(obj, shuffled)
    assert a.status == b.status
    assert a.optimum == b.optimum
    if a.ok:
        # the witness is feasible and attains the optimum
        for coeffs, rhs, rel in system:
            lhs = sum(Fraction(c) * x for c, x in zip(coeffs, a.witness))
            assert lhs <= rhs if rel == "<=" else lhs >= rhs
        assert sum(c * x for c, x in zip(obj, a.witness)) == a.optimum


def test_optimum_matches_vertex_enumeration_on_random_polygons():
    # brute force: intersect all pairs of constraint lines
    import random

    rng = random.Random(7)
    for _ in range(40):
        cons = [([rng.randint(-4, 4), rng.randint(-4, 4)], rng.randint(-6, 6), "<=") for _ in range(5)]
        cons += [([1, 0], 8, "<="), ([1, 0], -8, ">="), ([0, 1], 8, "<="), ([0, 1], -8, ">=")]
        obj = [rng.randint(-3, 3), rng.randint(-3, 3)]
        res = solve_lp(obj, cons)
        best = None
        for (a, r1, _), (b, r2, _) in combinations(cons, 2):
            dt = a[0] * b[1] - a[1] * b[0]
            if dt == 0:
                continue
            x = Fraction(r1 * b[1] - r2 * a[1], dt)
            y = Fraction(a[0] * r2 - b[0] * r1, dt)
            ok = all(
                (c[0] * x + c[1] * y <= r) if rel == "<=" else (c[0] * x + c[1] * y >= r)
                for c, r, rel in cons
            )
            if ok:
                v = obj[0] * x + obj[1] * y
                best = v if best is None else max(best, v)
        if best is None:
            assert res.status == "infeasible"
        else:
            assert res.optimum == best
