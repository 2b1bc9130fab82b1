"""Seeded generators for test corpora (all output is exact)."""

import random
from fractions import Fraction
from itertools import product
from math import floor

from . import linalg
from .errors import LowerDimensional
from .polytope import (
    UnimodularMap,
    apply_map,
    box,
    hull_from_points,
    vertices_from_halfspaces,
)
from .width import lattice_width


def make_rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_lattice_polytope(rng, d, bound=5, m=None, min_width=None, max_tries=10_000):
    """Hull of ``m`` (default random in ``[d+1, 12]``) integer points of ``[-bound, bound]^d``.

    With ``min_width`` the draw is repeated until the lattice width is at
    least that value.
    """
    rng = make_rng(rng)
    for _ in range(max_tries):
        n = m if m is not None else rng.randint(d + 1, 12)
        pts = [tuple(rng.randint(-bound, bound) for _ in range(d)) for _ in range(n)]
        try:
            P = hull_from_points(pts)
        except LowerDimensional:
            continue
        if min_width is not None and lattice_width(P).value < min_width:
            continue
        return P
    raise RuntimeError("could not draw a polytope with the requested width")


def random_lattice_simplex(rng, d, bound=3):
    rng = make_rng(rng)
    while True:
        pts = [tuple(rng.randint(-bound, bound) for _ in range(d)) for _ in range(d + 1)]
        diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
        if linalg.det(diffs) != 0:
            return hull_from_points(pts)


def random_unimodular_matrix(rng, d, steps=None, entry_bound=1):
    """Product of random elementary operations, a permutation and signs."""
    rng = make_rng(rng)
    a = linalg.identity(d)
    steps = steps if steps is not None else 2 * d
    for _ in range(steps):
        if d == 1:
            break
        i, j = rng.sample(range(d), 2)
        c = rng.choice([x for x in range(-entry_bound, entry_bound + 1) if x])
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
    perm = list(range(d))
    rng.shuffle(perm)
    a = [a[p] for p in perm]
    signs = [rng.choice((1, -1)) for _ in range(d)]
    a = [[s * c for c in row] for s, row in zip(signs, a)]
    return a


def random_rational(rng, lo=-3, hi=3, max_den=7):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_unimodular_map(rng, d, mode="z", shift=5):
    rng = make_rng(rng)
    a = random_unimodular_matrix(rng, d)
    if mode == "z":
        b = [rng.randint(-shift, shift) for _ in range(d)]
    else:
        b = [random_rational(rng, -shift, shift) for _ in range(d)]
    return UnimodularMap(a, b, mode)


# ---------------------------------------------------------------- Delzant


def _blow_up(rng, P, lattice):
    """Cut a vertex along the sum of its incident normals (stays Delzant)."""
    d = P.dim
    vi = rng.randrange(len(P.vertices))
    v = P.vertices[vi]
    inc = sorted(P.incidence[vi])
    normals = [P.halfspaces[k][0] for k in inc]
    u = tuple(sum(c) for c in zip(*normals))
    # edge directions at v form the dual basis, so the cut hits edge j at lattice depth eps
    edge_len = []
    den, verts = P.scaled_vertices
    for i, j in P.edges:
        if vi in (i, j):
            other = P.vertices[j if i == vi else i]
            diff = [a - b for a, b in zip(other, v)]
            edge_len.append(max(abs(dot_) for dot_ in [sum(x * y for x, y in zip(n, diff)) for n in normals]))
    m = min(edge_len)
    if lattice:
        if m < 2:
            return P
        eps = Fraction(rng.randint(1, int(m) - 1)) if m == int(m) else Fraction(rng.randint(1, max(1, int(m) - 1)))
        if eps >= m:
            return P
    else:
        eps = m * Fraction(rng.randint(1, 9), 10)
    phi = -(linalg.dot(u, v) + eps)
    hs = list(P.halfspaces) + [(u, phi)]
    return vertices_from_halfspaces(hs)


def random_delzant(rng, d, lattice=False, blowups=None, max_side=6):
    """A random Delzant polytope in dimension ``d`` (1 to 3).

    Starts from a box, a dilated simplex or (``d >= 2``) a Hirzebruch polygon
    (times a segment in dimension 3), applies random vertex blow-ups, then a
    random unimodular map and translation.
    """
    rng = make_rng(rng)

    def length():
        if lattice:
            return Fraction(rng.randint(1, max_side))
        return Fraction(rng.randint(2, 8 * max_side), 8)

    kind = rng.choice(["box", "simplex"] + (["hirzebruch"] if d >= 2 else []))
    if kind == "box":
        P = box((0,) * d, tuple(length() for _ in range(d)))
    elif kind == "simplex":
        s = length()
        P = hull_from_points([(0,) * d] + [tuple(s * int(i == j) for j in range(d)) for i in range(d)])
    else:
        a = rng.randint(0, 3)
        x = length()
        y = x * a + length()
        base = [(0, 0), (x, 0), (0, y), (x, y - a * x)]
        if d == 2:
            P = hull_from_points(base)
        else:
            h = length()
            extra = [tuple(0 for _ in range(d - 3))]
            P = hull_from_points(
                [p + (z,) + e for p in base for z in (0, h) for e in extra]
            )
    n = rng.randint(0, 2) if blowups is None else blowups
    for _ in range(n):
        P = _blow_up(rng, P, lattice)
    T = random_unimodular_map(rng, d, "z" if lattice else "r", shift=3)
    return apply_map(P, T)


def random_nested_pair(rng, d, bound=6):
    """``(P, Q)`` with ``P ⊆ Q``: ``Q`` is a random polytope, ``P`` the hull of some of its points."""
    rng = make_rng(rng)
    Q = random_lattice_polytope(rng, d, bound)
    while True:
        lo, hi = Q.bbox
        pts = []
        for _ in range(rng.randint(d + 1, 8)):
            w = [Fraction(rng.randint(0, 10), 10) for _ in Q.vertices]
            s = sum(w)
            if s == 0:
                continue
            pts.append(tuple(sum(c * v[i] for c, v in zip(w, Q.vertices)) / s for i in range(d)))
        try:
            return hull_from_points(pts), Q
        except (LowerDimensional, Exception):
            continue


def random_cube_lemma_pair(rng, d, extra=3):
    """``(K, X, T)`` with ``T`` an R-mode map and ``T(X + [0,1]^d) ⊆ K``.

    ``X`` is one to three rational points of ``[0,1)^d``; ``K`` is the hull of
    ``T(X + [0,1]^d)`` and a few random points near it.
    """
    rng = make_rng(rng)
    xs = [tuple(random_rational(rng, 0, 1, 4) for _ in range(d)) for _ in range(rng.randint(1, 3))]
    xs = [tuple(c - floor(c) for c in x) for x in xs]
    X = hull_from_points(xs, allow_lower_dim=True)
    T = random_unimodular_map(rng, d, "r", shift=3)
    pts = [T(tuple(a + b for a, b in zip(x, corner))) for x in xs for corner in product((0, 1), repeat=d)]
    lo = [min(p[i] for p in pts) - 1 for i in range(d)]
    hi = [max(p[i] for p in pts) + 1 for i in range(d)]
    for _ in range(extra):
        pts.append(tuple(lo[i] + (hi[i] - lo[i]) * Fraction(rng.randint(0, 8), 8) for i in range(d)))
    return hull_from_points(pts), X, T


def random_rational_polytope(rng, d, bound=3, m=None):
    rng = make_rng(rng)
    while True:
        n = m if m is not None else rng.randint(d + 1, 8)
        pts = [tuple(random_rational(rng, -bound, bound, 4) for _ in range(d)) for _ in range(n)]
        try:
            return hull_from_points(pts)
        except LowerDimensional:
            continue
