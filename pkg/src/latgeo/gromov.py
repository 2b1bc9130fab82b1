"""Polytope-side bounds for the Gromov width of toric manifolds.

Everything here works with the facet convention ``<u_k, x> >= -phi_k``.  The
quantities ``Lambda`` and ``Upsilon`` are sums ``sum a_k phi_k`` over
nonnegative integer relations ``sum a_k u_k = 0``; such sums do not change
under real translations of the polytope.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .errors import NotDelzant, NotFound, WrongDimension
from .flatness import FltTable, _matrices, largest_simplex_dilate
from .linalg import det, dot
from .lp import solve_lp
from .polytope import contains_point, iter_lattice_points
from .width import directional_width, facet_width, lattice_width


def is_delzant(P):
    """Every vertex lies on exactly ``d`` facets whose normals form a basis of ``Z^d``."""
    if not P.is_full_dimensional:
        return False
    d = P.dim
    for inc in P.incidence:
        if len(inc) != d:
            return False
        if abs(det([list(P.halfspaces[k][0]) for k in sorted(inc)])) != 1:
            return False
    return True


def _require_delzant(P):
    if not is_delzant(P):
        raise NotDelzant("polytope is not Delzant")


def _relations(normals, max_total):
    """Nonzero nonnegative integer vectors ``a`` with ``sum a <= max_total`` and ``sum a_k u_k = 0``."""
    m = len(normals)
    d = len(normals[0])

    def rec(k, remaining, partial, acc):
        if k == m:
            if any(acc) or not any(partial):
                return
            yield tuple(partial)
            return
        for c in range(remaining + 1):
            nxt = [x + c * y for x, y in zip(acc, normals[k])]
            partial.append(c)
            yield from rec(k + 1, remaining - c, partial, nxt)
            partial.pop()

    yield from rec(0, max_total, [], [0] * d)


@dataclass(frozen=True)
class LuValue:
    value: Fraction
    multiplicities: tuple  # a_k per facet, in facet order

    def combination(self, P):
        return [(P.halfspaces[k][0], a) for k, a in enumerate(self.multiplicities) if a]


def lu_lambda(P):
    """Maximum of ``sum a_k phi_k`` over relations with ``sum a_k <= d + 1``."""
    _require_delzant(P)
    normals = [u for u, _ in P.halfspaces]
    phis = [phi for _, phi in P.halfspaces]
    best = None
    for a in _relations(normals, P.dim + 1):
        v = sum(c * phi for c, phi in zip(a, phis))
        if best is None or v > best.value:
            best = LuValue(v, a)
    if best is None:
        raise NotFound("no facet relation with at most d+1 summands")
    return best


@dataclass(frozen=True)
class UpsilonResult:
    value: Fraction
    multiplicities: tuple
    facet: int
    cross_checked_upto: int


def lu_upsilon(P, cross_check=None):
    """Minimum positive ``sum a_k phi_k`` over all relations; equals the facet width.

    The witness is built at a vertex maximizing the chosen facet normal
    ``u_m``: there ``-u_m`` is a nonnegative integral combination of the
    (unimodular) incident normals.  ``cross_check`` (default ``d + 2``)
    bounds an exhaustive search confirming no smaller positive sum exists.
    """
    _require_delzant(P)
    d = P.dim
    fw, m = facet_width(P)
    normals = [u for u, _ in P.halfspaces]
    phis = [phi for _, phi in P.halfspaces]
    um = normals[m]
    vals = [dot(um, v) for v in P.vertices]
    vi = vals.index(max(vals))
    inc = sorted(P.incidence[vi])
    basis = [list(normals[k]) for k in inc]
    coeffs = linalg.solve_rational(linalg.transpose(basis), [-c for c in um])
    mult = [0] * len(normals)
    mult[m] += 1
    for k, c in zip(inc, coeffs):
        mult[k] += int(c)
    value = sum(a * phi for a, phi in zip(mult, phis))
    assert value == fw
    bound = d + 2 if cross_check is None else cross_check
    for a in _relations(normals, bound):
        v = sum(c * phi for c, phi in zip(a, phis))
        if v < fw:
            raise AssertionError(f"relation {a} gives {v} below the facet width {fw}")
    return UpsilonResult(fw, tuple(mult), m, bound)


# ------------------------------------------------------------------- diamonds


@dataclass(frozen=True)
class DiamondSpec:
    """``conv(x + k_i b_i, x - l_i b_i)`` with ``k_i + l_i = a``."""

    basis: tuple  # b_1..b_d as integer vectors
    center: tuple
    k: tuple
    l: tuple
    a: Fraction

    @property
    def vertices(self):
        out = []
        for b, ki, li in zip(self.basis, self.k, self.l):
            out.append(tuple(x + ki * c for x, c in zip(self.center, b)))
            out.append(tuple(x - li * c for x, c in zip(self.center, b)))
        return out

    def problems(self, P=None):
        out = []
        if abs(det(linalg.transpose([list(b) for b in self.basis]))) != 1:
            out.append("basis determinant ≠ ±1")
        if any(ki < 0 or li < 0 for ki, li in zip(self.k, self.l)):
            out.append("negative split")
        if any(ki + li != self.a for ki, li in zip(self.k, self.l)):
            out.append("k_i + l_i ≠ a")
        if P is not None:
            for v in self.vertices:
                if not contains_point(P, v):
                    out.append(f"diamond vertex {[str(c) for c in v]} outside the polytope")
        return out


def _diamond_lp(P, cols):
    d = P.dim
    n = 3 * d + 1  # x, k, l, a

    def var(kind, i=0):
        return {"x": i, "k": d + i, "l": 2 * d + i, "a": 3 * d}[kind]

    cons = []
    for u, phi in P.halfspaces:
        for i, b in enumerate(cols):
            ub = dot(u, b)
            row = [0] * n
            row[: d] = u
            row[var("k", i)] = ub
            cons.append((row, -phi, ">="))
            row = [0] * n
            row[: d] = u
            row[var("l", i)] = -ub
            cons.append((row, -phi, ">="))
    for i in range(d):
        for kind in ("k", "l"):
            row = [0] * n
            row[var(kind, i)] = 1
            cons.append((row, 0, ">="))
        row = [0] * n
        row[var("k", i)] = 1
        row[var("l", i)] = 1
        row[var("a")] = -1
        cons.append((row, 0, "=="))
    obj = [0] * n
    obj[var("a")] = 1
    res = solve_lp(obj, cons)
    if not res.ok:
        return None
    w = res.witness
    return DiamondSpec(
        tuple(tuple(b) for b in cols),
        tuple(w[:d]),
        tuple(w[d : 2 * d]),
        tuple(w[2 * d : 3 * d]),
        res.optimum,
    )


def _basis_key(cols):
    norm = []
    for c in cols:
        lead = next(x for x in c if x)
        norm.append(tuple(c) if lead > 0 else tuple(-x for x in c))
    return tuple(sorted(norm))


def _diamond_bases(P, matrix_bound):
    den, verts = P.scaled_vertices
    nbrs = {i: [] for i in range(len(verts))}
    for i, j in P.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    d = P.dim
    for i in sorted(nbrs):
        dirs = [linalg.primitive([a - b for a, b in zip(verts[j], verts[i])]) for j in nbrs[i]]
        for sub in combinations(dirs, d):
            if abs(det(linalg.transpose([list(c) for c in sub]))) == 1:
                yield [list(c) for c in sub]
    for A in _matrices(d, matrix_bound):
        yield linalg.transpose(A)


@dataclass(frozen=True)
class DiamondResult:
    diamond: DiamondSpec
    bases_tried: int
    matrix_bound: int


def largest_diamond(P, matrix_bound=1):
    """Best diamond over edge-cone bases and small unimodular bases (a lower bound)."""
    seen = set()
    best = None
    for cols in _diamond_bases(P, matrix_bound):
        key = _basis_key(cols)
        if key in seen:
            continue
        seen.add(key)
        spec = _diamond_lp(P, cols)
        if spec is not None and (best is None or spec.a > best.a):
            best = spec
    return DiamondResult(best, len(seen), matrix_bound)


# --------------------------------------------------------------------- report


@dataclass(frozen=True)
class GromovReport:
    lower_bound: Fraction
    lattice_width: Fraction
    delzant: bool
    lambda_upper: Fraction = None
    upsilon: Fraction = None
    simplex: object = None
    diamond: object = None
    lambda_witness: tuple = None
    notes: tuple = field(default_factory=tuple)

    @property
    def bracket(self):
        """``[lower bound, lattice width]``; the upper end is conjectural."""
        return (self.lower_bound, self.lattice_width)


def gromov_bounds(P, matrix_bound=1):
    """Lower bounds from simplices and diamonds, the relation upper bound, and the width."""
    d = P.dim
    simplex = largest_simplex_dilate(P)
    diamond = largest_diamond(P, matrix_bound)
    lower = max(simplex.R, diamond.diamond.a)
    width = lattice_width(P).value
    floor_bound = width / (FltTable.upper(d) * d)
    if lower < floor_bound:
        raise AssertionError("lower bound below the guaranteed width/(Flt(d) d)")
    notes = ["lattice width is a conjectural upper bound"]
    if not is_delzant(P):
        notes.append("not Delzant: Lambda and Upsilon omitted")
        return GromovReport(lower, width, False, simplex=simplex, diamond=diamond, notes=tuple(notes))
    lam = lu_lambda(P)
    ups = lu_upsilon(P)
    return GromovReport(
        lower,
        width,
        True,
        lam.value,
        ups.value,
        simplex,
        diamond,
        lam.multiplicities,
        tuple(notes),
    )


# ------------------------------------------------------------ polygon tags


def _interior_lattice_points(P):
    return [
        p for p in iter_lattice_points(P) if all(dot(u, p) > -phi for u, phi in P.halfspaces)
    ]


def _lattice_length(p, q):
    from math import gcd

    g = 0
    for a, b in zip(p, q):
        g = gcd(g, int(b - a))
    return g


def delzant_polygon_classify(P):
    """Tag a Delzant lattice polygon.

    Returns ``"has-interior-point"``, ``"2Δ₂-equivalent"`` or
    ``"trapezoid(y,a)"`` (unimodularly ``conv((0,0),(1,0),(0,y),(1,y-a))``).
    """
    if P.dim != 2:
        raise WrongDimension("classification is for polygons")
    _require_delzant(P)
    if not P.is_lattice:
        raise ValueError("classification is for lattice polygons")
    if _interior_lattice_points(P):
        return "has-interior-point"
    verts = P.vertices
    if len(verts) == 3:
        lengths = [_lattice_length(p, q) for p, q in combinations(verts, 2)]
        if lengths == [2, 2, 2]:
            return "2Δ₂-equivalent"
    cert = lattice_width(P)
    if cert.value != 1:
        return "unclassified"
    u = cert.direction
    vals = [dot(u, v) for v in verts]
    lo = min(vals)
    lens = []
    for level in (lo, lo + 1):
        on = [v for v, x in zip(verts, vals) if x == level]
        lens.append(_lattice_length(on[0], on[-1]) if len(on) == 2 else 0)
    y = max(lens)
    a = abs(lens[0] - lens[1])
    return f"trapezoid({y},{a})"
