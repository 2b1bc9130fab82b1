"""Named polytope families and the integer-decomposition gap checks."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import BudgetExceeded, NonLatticePolytope, ParameterOutOfRange
from .linalg import dot
from .polytope import (
    box,
    cartesian_product,
    contains_point,
    dilate,
    hull_from_points,
    lattice_points,
)

DEFAULT_DP_BUDGET = 5 * 10**7


def _check(cond, msg):
    if not cond:
        raise ParameterOutOfRange(msg)


def _int(name, value):
    if isinstance(value, bool) or int(value) != value:
        raise ParameterOutOfRange(f"{name} must be an integer")
    return int(value)


def cube(d, k=1):
    d, k = _int("d", d), _int("k", k)
    _check(d >= 1 and k >= 1, "cube needs d >= 1 and k >= 1")
    return box((0,) * d, (k,) * d)


def standard_simplex(d, scale=1):
    d = _int("d", d)
    scale = Fraction(scale)
    _check(d >= 1 and scale > 0, "standard_simplex needs d >= 1 and scale > 0")
    pts = [(0,) * d] + [tuple(scale * int(i == j) for j in range(d)) for i in range(d)]
    return hull_from_points(pts)


def crosspolytope(d):
    d = _int("d", d)
    _check(d >= 1, "crosspolytope needs d >= 1")
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append(tuple(s * int(i == j) for j in range(d)))
    return hull_from_points(pts)


def wide_nonidp(d=3, k=3):
    """``conv({(3,0,-1), (0,2,-1)} ∪ [0,k]^3) x [0,k]^(d-3)``: width ``k``, not IDP."""
    d, k = _int("d", d), _int("k", k)
    _check(k >= 3, "wide_nonidp needs k >= 3")
    _check(d >= 3, "wide_nonidp needs d >= 3")
    base = hull_from_points([(3, 0, -1), (0, 2, -1)] + list(product((0, k), repeat=3)))
    if d == 3:
        return base
    return cartesian_product(base, box((0,) * (d - 3), (k,) * (d - 3)))


def empty_simplex_vol2():
    """The empty lattice tetrahedron of normalized volume 2."""
    return hull_from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])


def hirzebruch(x, y, a):
    """``conv((0,0), (x,0), (0,y), (x, y - a x))`` with ``y > a x > 0``."""
    x, y, a = _int("x", x), _int("y", y), _int("a", a)
    _check(y > a * x > 0, "hirzebruch needs y > a*x > 0")
    return hull_from_points([(0, 0), (x, 0), (0, y), (x, y - a * x)])


def wide_triangle(k):
    """``conv((0,0), (k,-1), (k+1,1))``: facet width ``2k+1``, lattice width 2 for k >= 2."""
    k = _int("k", k)
    _check(k >= 1, "wide_triangle needs k >= 1")
    return hull_from_points([(0, 0), (k, -1), (k + 1, 1)])


def gw1_diamond():
    """Size-2 diamond ``conv((1,0),(1,2),(2,1),(0,1))``."""
    return hull_from_points([(1, 0), (1, 2), (2, 1), (0, 1)])


FAMILIES = {
    "cube": (cube, {"d": 2, "k": 1}),
    "standard_simplex": (standard_simplex, {"d": 2, "scale": 1}),
    "crosspolytope": (crosspolytope, {"d": 2}),
    "wide_nonidp": (wide_nonidp, {"d": 3, "k": 3}),
    "empty_simplex_vol2": (empty_simplex_vol2, {}),
    "hirzebruch": (hirzebruch, {"x": 2, "y": 7, "a": 2}),
    "wide_triangle": (wide_triangle, {"k": 3}),
    "gw1_diamond": (gw1_diamond, {}),
}


def build(name, **params):
    """Instantiate a family; unknown parameters raise :class:`ParameterOutOfRange`."""
    if name not in FAMILIES:
        raise ParameterOutOfRange(f"unknown family {name!r}", known=sorted(FAMILIES))
    fn, defaults = FAMILIES[name]
    extra = set(params) - set(defaults)
    if extra:
        raise ParameterOutOfRange(f"unknown parameters for {name}: {sorted(extra)}")
    args = dict(defaults)
    args.update(params)
    return fn(**args)


# ------------------------------------------------------------ t-fold sums


def _sumset(a, b, keep=None):
    out = set()
    for x in a:
        for y in b:
            s = tuple(p + q for p, q in zip(x, y))
            if keep is None or keep(s):
                out.add(s)
    return out


def tfold_member(points, t, target, budget=DEFAULT_DP_BUDGET):
    """Whether ``target`` is a sum of ``t`` points from ``points`` (pruned DP).

    After ``s`` summands the remaining ``t - s`` points add something in
    ``(t - s) * bbox``, so partial sums outside that window are dropped.
    """
    d = len(target)
    lo = [min(p[i] for p in points) for i in range(d)]
    hi = [max(p[i] for p in points) for i in range(d)]
    level = {tuple(0 for _ in range(d))}
    work = 0
    for s in range(1, t + 1):
        rem = t - s

        def keep(x, rem=rem):
            return all(rem * l <= g - c <= rem * h for c, g, l, h in zip(x, target, lo, hi))

        work += len(level) * len(points)
        if work > budget:
            raise BudgetExceeded("t-fold sum DP exceeded budget", work=work)
        level = _sumset(level, points, keep)
        if not level:
            return False
    return tuple(target) in level


def tfold_level_set(points, t, axis, value, budget=DEFAULT_DP_BUDGET):
    """All ``t``-fold sums whose coordinate ``axis`` equals ``value`` (DP pruned on that axis)."""
    lo = min(p[axis] for p in points)
    hi = max(p[axis] for p in points)
    level = {tuple(0 for _ in points[0])}
    work = 0
    for s in range(1, t + 1):
        rem = t - s

        def keep(x, rem=rem):
            return rem * lo <= value - x[axis] <= rem * hi

        work += len(level) * len(points)
        if work > budget:
            raise BudgetExceeded("t-fold sum DP exceeded budget", work=work)
        level = _sumset(level, points, keep)
    return level


def generic_idp_gap(P, t, budget=DEFAULT_DP_BUDGET):
    """Lattice points of ``tP`` that are not sums of ``t`` lattice points of ``P``."""
    if not P.is_lattice:
        raise NonLatticePolytope("polytope has non-integral vertices")
    if t < 1:
        raise ParameterOutOfRange("t must be positive")
    z1 = lattice_points(P)
    level = set(z1)
    work = 0
    for s in range(2, t + 1):
        sP = dilate(P, s)
        work += len(level) * len(z1)
        if work > budget:
            raise BudgetExceeded("t-fold sum DP exceeded budget", work=work)
        level = _sumset(level, z1, lambda x, sP=sP: contains_point(sP, x))
    return [p for p in lattice_points(dilate(P, t)) if p not in level]


# ----------------------------------------------------------- witness report


@dataclass(frozen=True)
class WitnessReport:
    point: tuple
    t: int
    in_tP: bool
    halves: tuple  # two t-tuples of lattice points whose sums average to the point
    dp_member: bool
    reduction_member: bool
    level_sets_agree: bool
    method: str

    @property
    def witness_found(self):
        return (
            self.in_tP
            and not self.dp_member
            and not self.reduction_member
            and self.level_sets_agree
        )


def _detect_k(P):
    d = P.dim
    if d < 3:
        return None
    k = int(max(v[0] for v in P.vertices))
    try:
        if k >= 3 and wide_nonidp(d, k) == P:
            return k
    except ParameterOutOfRange:
        return None
    return None


def _pad(v, d):
    return tuple(v) + (0,) * (d - len(v))


def idp_witness_check(P, t, budget=DEFAULT_DP_BUDGET):
    """Check ``p = (3t-4, 1, 1-t)`` against ``tP`` and the ``t``-fold sums.

    Membership in ``tP`` is certified by two explicit ``t``-fold sums whose
    average is ``p``.  Non-membership in the sum set is decided twice: by a
    pruned DP over all ``t``-fold sums, and by the reduction to the
    third-coordinate level ``1 - t``, where a sum must use ``t - 1`` points of
    level ``-1`` and one of level ``0``.

    Polytopes outside the family fall back to :func:`generic_idp_gap` and
    report its first gap point (``method == "generic"``).
    """
    t = _int("t", t)
    _check(t >= 2, "t must be at least 2")
    k = _detect_k(P)
    d = P.dim
    if k is None:
        gaps = generic_idp_gap(P, t, budget)
        if not gaps:
            return WitnessReport(None, t, False, (), True, True, True, "generic")
        p = gaps[0]
        return WitnessReport(p, t, True, (), False, False, True, "generic")
    p = _pad((3 * t - 4, 1, 1 - t), d)
    q1 = [_pad((3, 0, -1), d)] * (t - 1) + [_pad((0, 0, 0), d)]
    q2 = [_pad((3, 0, -1), d)] * (t - 2) + [_pad((0, 2, -1), d), _pad((1, 0, 0), d)]
    s1 = tuple(sum(c) for c in zip(*q1))
    s2 = tuple(sum(c) for c in zip(*q2))
    halves_ok = (
        all(contains_point(P, q) for q in q1 + q2)
        and all(Fraction(a + b, 2) == c for a, b, c in zip(s1, s2, p))
    )
    in_tP = halves_ok and contains_point(dilate(P, t), p)
    z1 = lattice_points(P)
    dp_member = tfold_member(z1, t, p, budget)

    # reduction: levels of the third coordinate
    minus = [q for q in z1 if q[2] == -1]
    zero = [q for q in z1 if q[2] == 0]
    assert min(q[2] for q in z1) == -1
    red = set(zero)
    for _ in range(t - 1):
        red = _sumset(red, minus)
    reduction_member = p in red
    full_level = tfold_level_set(z1, t, 2, 1 - t, budget)
    agree = full_level == red
    return WitnessReport(p, t, in_tP, (tuple(q1), tuple(q2)), dp_member, reduction_member, agree, "family")
