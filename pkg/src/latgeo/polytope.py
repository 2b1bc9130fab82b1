"""Rational polytopes: V/H conversions, lattice points, affine transforms.

A full-dimensional :class:`Polytope` carries both representations.  Facets
are stored as ``(u, phi)`` with ``u`` a primitive inner normal and the
polytope equal to ``{x : <u, x> >= -phi}`` over all facets.  Every
enumeration is in lexicographic order.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, floor

from . import linalg
from .errors import BudgetExceeded, Empty, LowerDimensional, Unbounded
from .linalg import common_denominator, det, dot, normal_vector, primitive

DEFAULT_CELL_BUDGET = 10**7


def _vec(p):
    return tuple(linalg.as_rat(x) for x in p)


def _ceil(x):
    return ceil(Fraction(x))


def _floor(x):
    return floor(Fraction(x))


class Polytope:
    """Immutable convex hull of finitely many rational points.

    Use :func:`hull_from_points` or :func:`vertices_from_halfspaces` rather
    than the constructor, which trusts its arguments.
    """

    __slots__ = ("dim", "vertices", "halfspaces", "chart", "__dict__")

    def __init__(self, dim, vertices, halfspaces=None, chart=None):
        self.dim = dim
        self.vertices = tuple(sorted(vertices))
        self.halfspaces = None if halfspaces is None else tuple(sorted(halfspaces))
        self.chart = chart

    @property
    def is_full_dimensional(self):
        return self.halfspaces is not None

    @property
    def affine_dim(self):
        return self.dim if self.chart is None else self.chart.rank

    @property
    def normals(self):
        return [u for u, _ in self.halfspaces]

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, affine_dim={self.affine_dim})"

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __contains__(self, x):
        return contains_point(self, x)

    @cached_property
    def is_lattice(self):
        return all(c.denominator == 1 for v in self.vertices for c in v)

    @cached_property
    def scaled_vertices(self):
        """``(D, V)`` with ``D * vertex`` integral for every vertex in ``V``."""
        den = common_denominator(c for v in self.vertices for c in v)
        return den, [tuple(int(c * den) for c in v) for v in self.vertices]

    @cached_property
    def incidence(self):
        """For each vertex, the indices of facets containing it."""
        out = []
        for v in self.vertices:
            out.append(frozenset(
                k for k, (u, phi) in enumerate(self.halfspaces) if dot(u, v) == -phi
            ))
        return out

    @cached_property
    def edges(self):
        """Vertex index pairs spanning edges."""
        if self.dim == 1:
            return [(0, 1)]
        out = []
        inc = self.incidence
        for i, j in combinations(range(len(self.vertices)), 2):
            common = inc[i] & inc[j]
            if len(common) < self.dim - 1:
                continue
            if linalg.rank([self.halfspaces[k][0] for k in common]) == self.dim - 1:
                out.append((i, j))
        return out

    @cached_property
    def integer_halfspaces(self):
        """``(u, c)`` pairs with ``<u, x> >= c`` equivalent to the facet on lattice points."""
        return [(u, _ceil(-phi)) for u, phi in self.halfspaces]

    @cached_property
    def bbox(self):
        lo = [min(v[i] for v in self.vertices) for i in range(self.dim)]
        hi = [max(v[i] for v in self.vertices) for i in range(self.dim)]
        return lo, hi


@dataclass(frozen=True)
class AffineChart:
    """Lattice-preserving chart of a rational affine subspace.

    ``U`` is unimodular and sends the subspace to ``R^rank x {const}``; for
    a point ``x`` of the subspace, ``U x = (local, const)``.
    """

    matrix: tuple
    inverse: tuple
    rank: int
    const: tuple

    def to_local(self, x):
        return tuple(linalg.matvec(self.matrix, x)[: self.rank])

    def from_local(self, y):
        full = list(y) + list(self.const)
        return tuple(Fraction(c) for c in linalg.matvec(self.inverse, full))

    @property
    def integral(self):
        return all(Fraction(c).denominator == 1 for c in self.const)


def affine_chart(points):
    """Chart of the affine hull of ``points`` (see :class:`AffineChart`)."""
    points = [_vec(p) for p in points]
    d = len(points[0])
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    diffs = [v for v in diffs if any(v)]
    if not diffs:
        u = linalg.identity(d)
        return AffineChart(tuple(map(tuple, u)), tuple(map(tuple, u)), 0, tuple(p0))
    den = common_denominator(c for v in diffs for c in v)
    cols = [[int(c * den) for c in v] for v in diffs]
    h, u = linalg.hnf(linalg.transpose(cols))
    r = sum(1 for row in h if any(row))
    uinv = linalg.int_inverse(u)
    const = tuple(linalg.matvec(u, p0)[r:])
    return AffineChart(tuple(map(tuple, u)), tuple(map(tuple, uinv)), r, const)


def project_to_affine_hull(points):
    """Return ``(local_points, chart)`` expressing ``points`` in ``Q^rank``."""
    chart = affine_chart(points)
    return [chart.to_local(_vec(p)) for p in points], chart


# --------------------------------------------------------------------------- hulls


def _hull_1d(points):
    lo = min(p[0] for p in points)
    hi = max(p[0] for p in points)
    verts = [(lo,), (hi,)]
    hs = [((1,), -lo), ((-1,), hi)]
    return verts, hs


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    pts = sorted(set(points))
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    ring = lower[:-1] + upper[:-1]
    hs = []
    for a, b in zip(ring, ring[1:] + ring[:1]):
        u = primitive(normal_vector([(b[0] - a[0], b[1] - a[1])]))
        # counter-clockwise ring: interior lies to the left of a->b
        if u[0] * (b[1] - a[1]) - u[1] * (b[0] - a[0]) > 0:
            u = (-u[0], -u[1])
        hs.append((u, -dot(u, a)))
    return ring, hs


def _hull_nd(points, d):
    den = common_denominator(c for p in points for c in p)
    ipts = [tuple(int(c * den) for c in p) for p in points]
    facets = {}
    n = len(ipts)
    for idx in combinations(range(n), d):
        base = ipts[idx[0]]
        diffs = [tuple(a - b for a, b in zip(ipts[i], base)) for i in idx[1:]]
        u = normal_vector(diffs)
        if not any(u):
            continue
        u = primitive(u)
        h = dot(u, base)
        pos = neg = False
        for q in ipts:
            s = dot(u, q) - h
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        if neg:
            u = tuple(-c for c in u)
            h = -h
        facets[u] = Fraction(-h, den)
    hs = list(facets.items())
    verts = []
    for p in points:
        tight = [u for u, phi in hs if dot(u, p) == -phi]
        if len(tight) >= d and linalg.rank(tight) == d:
            verts.append(p)
    return verts, hs


def _full_hull(points, d):
    pts = sorted(set(points))
    if d == 1:
        return _hull_1d(pts)
    if d == 2:
        return _hull_2d(pts)
    if len(pts) > 4 * d:
        return _hull_growing(pts, d)
    return _hull_nd(pts, d)


def _hull_growing(pts, d):
    """Hull of a subset grown until no input point lies outside it.

    Starts from points extreme along directions in ``{-1,0,1}^d`` and adds,
    for every violated facet, the most violating point.
    """
    subset = set()
    for u in product((-1, 0, 1), repeat=d):
        if any(u):
            subset.add(max(pts, key=lambda p: (dot(u, p), p)))
    if len(subset) <= d or affine_chart(sorted(subset)).rank < d:
        return _hull_nd(pts, d)
    while True:
        verts, hs = _hull_nd(sorted(subset), d)
        added = False
        for u, phi in hs:
            worst = min(pts, key=lambda p: (dot(u, p), p))
            if dot(u, worst) < -phi and worst not in subset:
                subset.add(worst)
                added = True
        if not added:
            return verts, hs


def hull_from_points(points, allow_lower_dim=False):
    """Convex hull with irredundant vertices and primitive inner facet normals.

    Raises:
        LowerDimensional: the points do not affinely span their ambient space
            and ``allow_lower_dim`` is false.
    """
    pts = sorted(set(_vec(p) for p in points))
    if not pts:
        raise Empty("no points given")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points have mixed dimensions")
    chart = affine_chart(pts)
    if chart.rank == d:
        verts, hs = _full_hull(pts, d)
        return Polytope(d, verts, hs)
    if not allow_lower_dim:
        raise LowerDimensional(
            f"points span an affine subspace of dimension {chart.rank} < {d}",
            affine_dim=chart.rank,
        )
    if chart.rank == 0:
        return Polytope(d, [pts[0]], None, chart)
    local = [chart.to_local(p) for p in pts]
    lverts, _ = _full_hull(local, chart.rank)
    verts = [chart.from_local(v) for v in lverts]
    return Polytope(d, verts, None, chart)


def vertices_from_halfspaces(halfspaces):
    """Vertices of ``{x : <u, x> >= -phi}`` by enumerating all d-subsets.

    ``halfspaces`` are ``(normal, offset)`` pairs; normals may be rational
    and are rescaled to primitive integer vectors.

    Raises:
        Empty: the region is infeasible.
        Unbounded: the region is unbounded.
        LowerDimensional: the region is not full-dimensional.
    """
    hs = []
    for u, phi in halfspaces:
        u = [Fraction(c) for c in u]
        phi = Fraction(phi)
        den = common_denominator(u)
        iu = [int(c * den) for c in u]
        g = 0
        for c in iu:
            g = _gcd(g, c)
        if g == 0:
            if phi < 0:
                raise Empty("trivially infeasible constraint 0 >= -phi")
            continue
        scale = Fraction(den, g)
        hs.append((tuple(c // g for c in iu), phi * scale))
    if not hs:
        raise Unbounded("no constraints")
    d = len(hs[0][0])
    from .lp import solve_lp

    cons = [(u, -phi, ">=") for u, phi in hs]
    for i in range(d):
        for sgn in (1, -1):
            e = [0] * d
            e[i] = sgn
            res = solve_lp(e, cons)
            if res.status == "infeasible":
                raise Empty("halfspaces have empty intersection")
            if res.status == "unbounded":
                raise Unbounded(f"region is unbounded along coordinate {i}")
    verts = set()
    for idx in combinations(range(len(hs)), d):
        a = [hs[k][0] for k in idx]
        if det(a) == 0:
            continue
        x = linalg.solve_rational(a, [-hs[k][1] for k in idx])
        if all(dot(u, x) >= -phi for u, phi in hs):
            verts.add(tuple(x))
    verts = sorted(verts)
    if affine_chart(verts).rank < d:
        raise LowerDimensional("halfspaces define a lower-dimensional region")
    # drop redundant inequalities: keep those tight on an affinely spanning vertex set
    facets = {}
    for u, phi in hs:
        tight = [v for v in verts if dot(u, v) == -phi]
        if len(tight) >= d and affine_chart(tight).rank == d - 1:
            facets[u] = phi
    return Polytope(d, verts, list(facets.items()))


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


# ------------------------------------------------------------------ lattice points


def _interval(int_halfspaces, prefix, k):
    """Integer range of coordinate ``k`` given ``prefix`` (coords ``< k``)."""
    lo, hi = None, None
    for u, c in int_halfspaces:
        r = c - sum(a * b for a, b in zip(u, prefix))
        a = u[k]
        if a > 0:
            b = -((-r) // a)
            lo = b if lo is None or b > lo else lo
        elif a < 0:
            b = r // a
            hi = b if hi is None or b < hi else hi
        elif r > 0:
            return 1, 0
    return lo, hi


def _projection_halfspaces(P):
    """Integer halfspaces of the projections of ``P`` onto leading coordinates."""
    d = P.dim
    out = []
    for k in range(1, d + 1):
        if k == d:
            out.append(P.integer_halfspaces)
            continue
        proj = {v[:k] for v in P.vertices}
        _, hs = _full_hull(sorted(proj), k)
        out.append([(u, _ceil(-phi)) for u, phi in hs])
    return out


def iter_lattice_points(P):
    """Lazily yield the integer points of ``P`` in lexicographic order."""
    if not P.is_full_dimensional:
        chart = P.chart
        if not chart.integral:
            return
        if chart.rank == 0:
            v = P.vertices[0]
            if all(c.denominator == 1 for c in v):
                yield tuple(int(c) for c in v)
            return
        local = hull_from_points([chart.to_local(v) for v in P.vertices])
        found = [tuple(int(c) for c in chart.from_local(y)) for y in iter_lattice_points(local)]
        yield from sorted(found)
        return
    levels = _projection_halfspaces(P)
    d = P.dim

    def rec(prefix):
        k = len(prefix)
        lo, hi = _interval(levels[k], prefix, k)
        if lo is None or hi is None or lo > hi:
            return
        if k == d - 1:
            for x in range(lo, hi + 1):
                yield prefix + (x,)
        else:
            for x in range(lo, hi + 1):
                yield from rec(prefix + (x,))

    yield from rec(())


def lattice_points(P, budget=DEFAULT_CELL_BUDGET):
    """All integer points of ``P``, lexicographically sorted.

    Raises:
        BudgetExceeded: the integer bounding box has more than ``budget`` cells.
    """
    lo, hi = P.bbox
    cells = 1
    for a, b in zip(lo, hi):
        cells *= max(0, _floor(b) - _ceil(a) + 1)
    if budget is not None and cells > budget:
        raise BudgetExceeded(f"bounding box has {cells} cells > budget {budget}", cells=cells)
    return list(iter_lattice_points(P))


# --------------------------------------------------------------------- membership


def contains_point(P, x):
    x = _vec(x)
    if P.is_full_dimensional:
        return all(dot(u, x) >= -phi for u, phi in P.halfspaces)
    chart = P.chart
    full = linalg.matvec(chart.matrix, x)
    if tuple(full[chart.rank:]) != tuple(chart.const):
        return False
    if chart.rank == 0:
        return True
    local = hull_from_points([chart.to_local(v) for v in P.vertices])
    return contains_point(local, full[: chart.rank])


def contains_polytope(P, Q):
    """``Q ⊆ P``, checked on the vertices of ``Q``."""
    return all(contains_point(P, v) for v in Q.vertices)


# ---------------------------------------------------------------------- transforms


@dataclass(frozen=True)
class UnimodularMap:
    """``x -> A x + b`` with ``A`` in GL(d, Z).

    ``mode`` is ``"z"`` (``b`` integral) or ``"r"`` (``b`` real).
    """

    matrix: tuple
    translation: tuple
    mode: str = "r"

    def __post_init__(self):
        a = tuple(tuple(int(c) for c in row) for row in self.matrix)
        b = tuple(Fraction(c) for c in self.translation)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "translation", b)
        if self.mode not in ("z", "r"):
            raise ValueError("mode must be 'z' or 'r'")
        if len(a) != len(b) or any(len(row) != len(b) for row in a):
            raise ValueError("matrix and translation dimensions differ")
        if abs(det(a)) != 1:
            raise ValueError("matrix is not unimodular (|det| != 1)")
        if self.mode == "z" and any(c.denominator != 1 for c in b):
            raise ValueError("a Z-mode map needs an integral translation")

    @classmethod
    def identity(cls, d, mode="z"):
        return cls(linalg.identity(d), [0] * d, mode)

    @property
    def dim(self):
        return len(self.translation)

    def __call__(self, x):
        return tuple(
            sum(a * c for a, c in zip(row, x)) + b for row, b in zip(self.matrix, self.translation)
        )

    def compose(self, other):
        """``self ∘ other``."""
        a = linalg.matmul(self.matrix, other.matrix)
        b = self(other.translation)
        mode = "z" if self.mode == other.mode == "z" else "r"
        return UnimodularMap(a, b, mode)

    def inverse(self):
        ai = linalg.int_inverse(self.matrix)
        b = tuple(-c for c in linalg.matvec(ai, self.translation))
        return UnimodularMap(ai, b, self.mode)


def apply_map(P, T):
    """Image ``T(P)``."""
    if T.dim != P.dim:
        raise ValueError("map and polytope dimensions differ")
    verts = [T(v) for v in P.vertices]
    if not P.is_full_dimensional:
        return hull_from_points(verts, allow_lower_dim=True)
    ait = linalg.transpose(linalg.int_inverse(T.matrix))
    hs = []
    for u, phi in P.halfspaces:
        u2 = tuple(linalg.matvec(ait, u))
        hs.append((u2, phi - dot(u2, T.translation)))
    return Polytope(P.dim, verts, hs)


def translate(P, b):
    return apply_map(P, UnimodularMap(linalg.identity(P.dim), b, "r"))


def dilate(P, t):
    t = Fraction(t)
    if t <= 0:
        raise ValueError("dilation factor must be positive")
    verts = [tuple(t * c for c in v) for v in P.vertices]
    if not P.is_full_dimensional:
        return hull_from_points(verts, allow_lower_dim=True)
    return Polytope(P.dim, verts, [(u, t * phi) for u, phi in P.halfspaces])


def minkowski_sum(P, Q):
    if P.dim != Q.dim:
        raise ValueError("ambient dimensions differ")
    if len(Q.vertices) == 1:
        return translate(P, Q.vertices[0]) if P.is_full_dimensional else hull_from_points(
            [tuple(a + b for a, b in zip(v, Q.vertices[0])) for v in P.vertices],
            allow_lower_dim=True,
        )
    pts = {tuple(a + b for a, b in zip(v, w)) for v in P.vertices for w in Q.vertices}
    return hull_from_points(pts, allow_lower_dim=True)


def cartesian_product(P, Q):
    """``P x Q`` in ``R^(p+q)``; both factors full-dimensional."""
    verts = [v + w for v in P.vertices for w in Q.vertices]
    zq = (0,) * Q.dim
    zp = (0,) * P.dim
    hs = [(u + zq, phi) for u, phi in P.halfspaces] + [(zp + u, phi) for u, phi in Q.halfspaces]
    return Polytope(P.dim + Q.dim, verts, hs)


def box(lo, hi):
    """Axis-parallel box ``prod [lo_i, hi_i]``."""
    corners = list(product(*[(Fraction(a), Fraction(b)) for a, b in zip(lo, hi)]))
    d = len(lo)
    hs = []
    for i in range(d):
        e = tuple(int(j == i) for j in range(d))
        hs.append((e, -Fraction(lo[i])))
        hs.append((tuple(-c for c in e), Fraction(hi[i])))
    return Polytope(d, corners, hs)
