"""Directional and lattice width, facet width, successive minima of P - P."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import linalg
from .errors import BudgetExceeded, ZeroDirection
from .linalg import dot, normal_vector, primitive

DEFAULT_CANDIDATE_BUDGET = 2_000_000


@dataclass(frozen=True)
class WidthCertificate:
    value: Fraction
    direction: tuple
    enumeration_radius: Fraction
    candidates_checked: int
    certified: bool = True
    degenerate: bool = False
    box: tuple = ()

    @property
    def status(self):
        return "certified" if self.certified else "heuristic"


@dataclass(frozen=True)
class MinimaCertificate:
    lambdas: tuple
    witness_vectors: tuple
    candidates_checked: int = 0


def directional_width(P, u):
    if not any(u):
        raise ZeroDirection("width along the zero functional is undefined")
    den, verts = P.scaled_vertices
    vals = [dot(u, v) for v in verts]
    return Fraction(max(vals) - min(vals), den)


def _sign_normalize(u):
    for c in u:
        if c:
            return tuple(u) if c > 0 else tuple(-x for x in u)
    return tuple(u)


def _tie_key(u):
    # smaller l1 norm first, then lexicographically largest (so e_1 beats e_d)
    return (sum(abs(c) for c in u), tuple(-c for c in u))


def edge_directions(P):
    """Primitive integer edge directions of ``P`` up to sign."""
    den, verts = P.scaled_vertices
    dirs = set()
    for i, j in P.edges:
        w = primitive([a - b for a, b in zip(verts[j], verts[i])])
        dirs.add(_sign_normalize(w))
    return sorted(dirs)


def difference_body_normals(P):
    """Normals ``n`` (up to sign) whose inequalities ``|<n, z>| <= width_n(P)`` cut out ``P - P``.

    Every facet of ``P - P`` is parallel to ``d - 1`` independent edge
    directions of ``P``; extra (redundant) normals are harmless.
    """
    d = P.dim
    if d == 1:
        return [(1,)]
    dirs = edge_directions(P)
    out = set()
    for sub in combinations(dirs, d - 1):
        n = normal_vector(list(sub))
        if any(n):
            out.add(_sign_normalize(primitive(n)))
    return sorted(out)


class Gauge:
    """Gauge function of the symmetric body ``P - P``."""

    def __init__(self, P):
        self.dim = P.dim
        self.terms = [(n, directional_width(P, n)) for n in difference_body_normals(P)]

    def __call__(self, z):
        best = Fraction(0)
        for n, w in self.terms:
            v = Fraction(abs(dot(n, z))) / w
            if v > best:
                best = v
        return best


def _degenerate_certificate(P):
    chart = P.chart
    row = chart.matrix[chart.rank]
    u = _sign_normalize(primitive(row))
    return WidthCertificate(Fraction(0), u, Fraction(0), 0, True, True)


def _shell(r, bounds):
    """Integer vectors with sup-norm exactly ``r``, |u_i| <= bounds[i], positive leading entry."""
    d = len(bounds)
    ranges = [range(-min(r, b), min(r, b) + 1) for b in bounds]
    for u in product(*ranges):
        if max(abs(c) for c in u) != r:
            continue
        lead = next(c for c in u if c)
        if lead > 0:
            yield u


def lattice_width(P, budget=DEFAULT_CANDIDATE_BUDGET):
    """Certified lattice width.

    Any integer ``u`` with ``width_u(P) <= w`` satisfies
    ``|u_i| <= w * g(e_i)`` where ``g`` is the gauge of ``P - P`` (the
    segment ``[-e_i, e_i] / g(e_i)`` lies in ``P - P``).  Starting from the
    best coordinate width, candidates are scanned shell by shell while the
    box shrinks with every improvement.
    """
    if not P.is_full_dimensional:
        return _degenerate_certificate(P)
    d = P.dim
    gauge = Gauge(P)
    ge = [gauge(tuple(int(i == j) for j in range(d))) for i in range(d)]
    best_w, best_u = None, None
    for i in range(d):
        e = tuple(int(i == j) for j in range(d))
        w = directional_width(P, e)
        if best_w is None or w < best_w or (w == best_w and _tie_key(e) < _tie_key(best_u)):
            best_w, best_u = w, e

    def bounds_for(w):
        return [int(w * g) for g in ge]

    bounds = bounds_for(best_w)
    radius = max(bounds)
    checked = 0
    r = 1
    certified = True
    while r <= max(bounds):
        for u in _shell(r, bounds):
            checked += 1
            if checked > budget:
                certified = False
                break
            if linalg_gcd(u) != 1:
                continue
            w = directional_width(P, u)
            if w < best_w or (w == best_w and _tie_key(u) < _tie_key(best_u)):
                if w < best_w:
                    bounds = bounds_for(w)
                best_w, best_u = w, u
        if not certified:
            break
        r += 1
    return WidthCertificate(
        best_w, best_u, Fraction(radius), checked, certified, False, tuple(bounds)
    )


def linalg_gcd(u):
    from math import gcd

    g = 0
    for c in u:
        g = gcd(g, c)
    return g


def facet_width(P):
    """``(min over facet normals of the width, index of a minimizing facet)``."""
    best, idx = None, None
    for k, (u, _) in enumerate(P.halfspaces):
        w = directional_width(P, u)
        if best is None or w < best:
            best, idx = w, k
    return best, idx


def _independent(vectors, v):
    return linalg.rank(list(vectors) + [v]) == len(vectors) + 1


def successive_minima_diffbody(P, budget=DEFAULT_CANDIDATE_BUDGET):
    """Successive minima of ``P - P`` with witness vectors.

    Vectors ``z`` with gauge at most ``lam`` satisfy ``|z_i| <= lam * W_i``
    with ``W_i`` the width of ``P`` along ``e_i``; the scan stops once the
    shell radius exceeds that bound for the current upper estimate of
    ``lambda_d``.
    """
    if not P.is_full_dimensional:
        raise ValueError("successive minima need a full-dimensional polytope")
    d = P.dim
    gauge = Gauge(P)
    widths = [directional_width(P, tuple(int(i == j) for j in range(d))) for i in range(d)]
    found = []
    checked = 0

    def extract():
        ordered = sorted(found, key=lambda t: (t[0], _tie_key(t[1])))
        chosen, lams = [], []
        for g, z in ordered:
            if _independent(chosen, z):
                chosen.append(z)
                lams.append(g)
                if len(chosen) == d:
                    break
        return lams, chosen

    r = 1
    lam_star = None
    while True:
        if lam_star is not None and r > max(int(lam_star * w) for w in widths):
            break
        for z in _shell(r, [r] * d):
            checked += 1
            if checked > budget:
                raise BudgetExceeded("successive minima scan exceeded budget", checked=checked)
            g = gauge(z)
            if lam_star is None or g <= lam_star:
                found.append((g, z))
        lams, chosen = extract()
        if len(chosen) == d:
            lam_star = lams[-1]
            found = [t for t in found if t[0] <= lam_star]
        r += 1
    lams, chosen = extract()
    return MinimaCertificate(tuple(lams), tuple(chosen), checked)
