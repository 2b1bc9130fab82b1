"""Brute-force reference computations used to derive expected values.

Nothing here imports the library: each oracle is a small, slow, obviously
correct computation on explicit point lists.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import ceil, gcd

import numpy as np


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return sign * out


def _rank(vectors):
    if not vectors:
        return 0
    arr = np.array([[float(x) for x in v] for v in vectors])
    return int(np.linalg.matrix_rank(arr))


def width_bruteforce(vertices, radius=10):
    """Min over nonzero integer u with ``|u|_inf <= radius`` of max - min of <u, v>."""
    d = len(vertices[0])
    best = None
    for u in product(range(-radius, radius + 1), repeat=d):
        if not any(u):
            continue
        vals = [sum(Fraction(a) * b for a, b in zip(u, v)) for v in vertices]
        w = max(vals) - min(vals)
        if best is None or w < best:
            best = w
    return best


def facets_bruteforce(vertices):
    """Supporting hyperplanes through d affinely independent vertices (numpy cross products).

    Vertices must be integral.  Returns a set of ``(primitive normal, rhs)``
    meaning ``<n, x> >= rhs`` on the hull.
    """
    pts = np.array(_ints(vertices), dtype=np.int64)
    d = pts.shape[1]
    out = set()
    for sub in combinations(range(len(pts)), d):
        base = pts[sub[0]]
        diffs = pts[list(sub[1:])] - base
        if d == 2:
            n = np.array([-diffs[0][1], diffs[0][0]])
        elif d == 3:
            n = np.cross(diffs[0], diffs[1])
        else:
            # cofactors of the (d-1) x d difference matrix
            n = np.array(
                [
                    (-1) ** i * round(np.linalg.det(np.delete(diffs, i, axis=1)))
                    for i in range(d)
                ]
            )
        if not n.any():
            continue
        g = 0
        for c in n:
            g = gcd(g, int(c))
        n = n // g
        vals = pts @ n
        rhs = int(base @ n)
        if (vals >= rhs).all():
            out.add((tuple(int(c) for c in n), rhs))
        elif (vals <= rhs).all():
            out.add((tuple(int(-c) for c in n), -rhs))
    return out


def _ints(vertices):
    out = [tuple(int(c) for c in v) for v in vertices]
    assert all(c == x for v, w in zip(vertices, out) for c, x in zip(v, w)), "integral vertices expected"
    return out


def inside(facets, x):
    return all(sum(a * b for a, b in zip(n, x)) >= rhs for n, rhs in facets)


def lattice_points_bruteforce(vertices):
    """Integer points of the hull of integral ``vertices`` by box enumeration."""
    vertices = _ints(vertices)
    facets = facets_bruteforce(vertices)
    d = len(vertices[0])
    lo = [min(v[i] for v in vertices) for i in range(d)]
    hi = [max(v[i] for v in vertices) for i in range(d)]
    return sorted(
        p for p in product(*(range(a, b + 1) for a, b in zip(lo, hi))) if inside(facets, p)
    )


def flt1_bruteforce(xs, n=120):
    """Largest width (to within ``1/n``) of an interval missing every ``±X + m``.

    Scans left ends ``a`` on a ``1/n`` grid in [0, 1) and grows the length in
    steps of ``1/n`` while no copy fits.  Returns the largest length seen
    without a copy; the true supremum lies in ``[value, value + 2/n]``.
    """
    xs = [Fraction(x) for x in xs]
    copies = [xs, [-x for x in xs]]
    step = Fraction(1, n)

    def has_copy(a, b):
        for c in copies:
            lo, hi = min(c), max(c)
            m = ceil(a - lo)  # smallest shift putting the copy right of a
            if hi + m <= b:
                return True
        return False

    best = Fraction(0)
    for k in range(n):
        a = k * step
        length = step
        while not has_copy(a, a + length):
            length += step
            if length > 10:
                break
        best = max(best, length - step)
    return best


def affine_index_data(points):
    """(rank, gcd of maximal minors) of the difference vectors of ``points``."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    diffs = [v for v in diffs if any(v)]
    r = _rank(diffs)
    if r == 0:
        return 0, 1
    d = len(base)
    g = 0
    for rows in combinations(range(len(diffs)), r):
        for cols in combinations(range(d), r):
            m = [[diffs[i][j] for j in cols] for i in rows]
            g = gcd(g, int(_det(m)))
            if g == 1:
                return r, g
    return r, g


def same_affine_lattice(subset, allpoints):
    """Subset of ``allpoints`` generating the same affine lattice (rank and minor gcd agree)."""
    return affine_index_data(list(subset)) == affine_index_data(list(allpoints))


def spanning_rank_bruteforce(points):
    pts = sorted(points)
    for n in range(1, len(pts) + 1):
        for sub in combinations(pts, n):
            if same_affine_lattice(sub, pts):
                return n
    raise AssertionError


def is_spanning_bruteforce(points):
    d = len(points[0])
    return affine_index_data(points) == (d, 1)


def tfold_sums(points, t):
    return {tuple(sum(c) for c in zip(*combo)) for combo in combinations_with_replacement(points, t)}


def csr_bruteforce(points, box=2, coeff=7):
    """Least ``n`` such that every lifted lattice element in ``[-box, box]^(d+1)`` is
    ``sum c_i (p_i, 1)`` over some ``n`` points with integer ``|c_i| <= coeff``."""
    lifted = [tuple(p) + (1,) for p in points]
    dim = len(lifted[0])
    targets = {t for t in product(range(-box, box + 1), repeat=dim)}
    for n in range(1, len(lifted) + 1):
        reach = set()
        for sub in combinations(lifted, n):
            for cs in product(range(-coeff, coeff + 1), repeat=n):
                reach.add(tuple(sum(c * v[k] for c, v in zip(cs, sub)) for k in range(dim)))
        if targets <= reach:
            return n
    raise AssertionError


def unimodular_triangles_in(points):
    """All lattice triangles (as sorted tuples) with normalized area 1 among ``points``."""
    out = []
    for a, b, c in combinations(points, 3):
        m = [[b[0] - a[0], b[1] - a[1]], [c[0] - a[0], c[1] - a[1]]]
        if abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) == 1:
            out.append((a, b, c))
    return out


def delzant_bruteforce_polygon(vertices):
    """Counter-clockwise lattice polygon: every corner's primitive edge pair has det ±1."""
    pts = [np.array(v, dtype=float) for v in vertices]
    c = sum(pts) / len(pts)
    order = sorted(range(len(vertices)), key=lambda i: np.arctan2(*(pts[i] - c)[::-1]))
    vs = [vertices[i] for i in order]
    n = len(vs)
    for i in range(n):
        p, q, r = vs[i - 1], vs[i], vs[(i + 1) % n]
        e1 = _prim([p[0] - q[0], p[1] - q[1]])
        e2 = _prim([r[0] - q[0], r[1] - q[1]])
        if abs(e1[0] * e2[1] - e1[1] * e2[0]) != 1:
            return False
    return True


def _prim(v):
    g = gcd(*(int(x) for x in v))
    return [x // g for x in v]


def lambda_bruteforce(facets, max_total):
    """Max of ``sum a_k * offset_k`` over relations ``sum a_k n_k = 0`` with ``0 < sum a_k <= max_total``.

    ``facets`` are ``(n, rhs)`` with ``<n, x> >= rhs``, so the offset is ``-rhs``.
    """
    fs = sorted(facets)
    d = len(fs[0][0])
    best = None
    for a in product(range(max_total + 1), repeat=len(fs)):
        if not 0 < sum(a) <= max_total:
            continue
        if any(sum(c * n[i] for c, (n, _) in zip(a, fs)) for i in range(d)):
            continue
        v = sum(-c * rhs for c, (_, rhs) in zip(a, fs))
        if best is None or v > best:
            best = v
    return best
