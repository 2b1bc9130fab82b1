"""Affine lattices spanned by lattice points, generating subsets, spanning ranks."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, inf, prod

from . import linalg
from .errors import NonLatticePolytope
from .flatness import FltTable, find_unimodular_simplex
from .polytope import affine_chart, hull_from_points, iter_lattice_points, lattice_points
from .width import lattice_width

DEFAULT_SR_BUDGET = 24
DEFAULT_CSR_BUDGET = 200_000


@dataclass(frozen=True)
class AffineLattice:
    """``base + Z-span(basis)``; ``basis`` rows are the nonzero HNF rows of the differences."""

    base: tuple
    basis: tuple
    index: object  # int, or math.inf when not full rank
    dim: int

    @property
    def rank(self):
        return len(self.basis)

    def contains(self, p):
        diff = [a - b for a, b in zip(p, self.base)]
        return linalg.lattice_basis([list(r) for r in self.basis] + [diff], self.dim) == list(
            self.basis
        )

    def same_as(self, other):
        return self.basis == other.basis and other.contains(self.base)


def _index(basis, d):
    if len(basis) < d:
        return inf
    s, _, _ = linalg.snf([list(r) for r in basis])
    return prod(abs(s[i][i]) for i in range(d))


def affine_lattice_of_points(points):
    pts = sorted(tuple(int(c) for c in p) for p in points)
    if not pts:
        raise ValueError("need at least one point")
    d = len(pts[0])
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    basis = tuple(linalg.lattice_basis(diffs, d))
    return AffineLattice(base, basis, _index(basis, d), d)


def _require_lattice(P):
    if not P.is_lattice:
        raise NonLatticePolytope("polytope has non-integral vertices")


def is_spanning(P):
    """Whether the lattice points of ``P`` affinely generate ``Z^d``.

    Points are consumed lazily and the scan stops as soon as the generated
    lattice has index 1.
    """
    _require_lattice(P)
    d = P.dim
    base = None
    basis = []
    for p in iter_lattice_points(P):
        if base is None:
            base = p
            continue
        diff = [a - b for a, b in zip(p, base)]
        if linalg.lattice_basis(basis + [diff], d) == basis:
            continue
        basis = [list(r) for r in linalg.lattice_basis(basis + [diff], d)]
        if len(basis) == d and abs(prod(basis[i][i] for i in range(d))) == 1:
            return True
    return False


# ------------------------------------------------------------------ bounds


def size_bound_C(d):
    """``C(d) = prod_k (2 Flt(k) k + 1)`` with table upper bounds; ``C(0) = 2``."""
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    if d == 0:
        return Fraction(2)
    return prod((2 * FltTable.upper(k) * k + 1 for k in range(1, d + 1)), start=Fraction(1))


def sr_dim_bound(d):
    """Upper bound for the maximal spanning rank in dimension ``d``."""
    return size_bound_C(d)


# ------------------------------------------------------------ generating sets


@dataclass(frozen=True)
class GenSet:
    points: tuple
    method: str
    bound_used: Fraction


def _recursive_generators(points):
    """Subset generating the same affine lattice as ``points``.

    ``points`` must be all lattice points of some lattice polytope (for
    instance a slice of one).
    """
    chart = affine_chart(points)
    e = chart.rank
    if e == 0:
        return [tuple(points[0])]
    local = [tuple(int(c) for c in chart.to_local(p)) for p in points]
    Q = hull_from_points(local)
    cert = lattice_width(Q)
    back = lambda y: tuple(int(c) for c in chart.from_local(y))  # noqa: E731
    if cert.value >= FltTable.simplex_threshold(e, "z"):
        simplex = find_unimodular_simplex(Q, "z")
        return [back(p) for p in simplex.points]
    u = cert.direction
    slices = {}
    for y in local:
        slices.setdefault(linalg.dot(u, y), []).append(y)
    out = []
    for j in sorted(slices):
        for y in _recursive_generators(slices[j]):
            out.append(back(y))
    return out


def _prune(subset, target):
    """Drop points greedily (last first) while the affine lattice is unchanged."""
    keep = list(subset)
    for p in sorted(subset, reverse=True):
        trial = [q for q in keep if q != p]
        if trial and affine_lattice_of_points(trial).same_as(target):
            keep = trial
    return keep


def generating_subset_recursive(P, budget=None, prune=True):
    """Generating subset following the slicing induction, then greedily pruned."""
    _require_lattice(P)
    pts = lattice_points(P) if budget is None else lattice_points(P, budget)
    target = affine_lattice_of_points(pts)
    chosen = sorted(set(_recursive_generators(pts)))
    if prune:
        chosen = _prune(chosen, target)
    return GenSet(tuple(sorted(chosen)), "recursive", size_bound_C(P.dim))


@dataclass(frozen=True)
class SpanningRank:
    value: int
    witness: tuple
    exact: bool

    @property
    def flag(self):
        return "exact" if self.exact else "upper-bound-only"


def _spans(subset, target):
    lat = affine_lattice_of_points(subset)
    return lat.basis == target.basis


def spanning_rank(P, budget=DEFAULT_SR_BUDGET):
    """Minimal number of lattice points generating the affine lattice of all of them.

    Exhaustive subset search (lexicographic within each size) when there are
    at most ``budget`` lattice points; otherwise the recursive generating set
    is returned as an upper bound.
    """
    _require_lattice(P)
    pts = lattice_points(P)
    if len(pts) > budget:
        g = generating_subset_recursive(P)
        return SpanningRank(len(g.points), g.points, False)
    target = affine_lattice_of_points(pts)
    e = target.rank
    for n in range(e + 1, len(pts) + 1):
        for sub in combinations(pts, n):
            if _spans(sub, target):
                return SpanningRank(n, tuple(sub), True)
    raise AssertionError("the full point set always spans")  # pragma: no cover


# ------------------------------------------------------ Caratheodory spanning rank


@dataclass(frozen=True)
class CSRResult:
    """Caratheodory spanning rank, or a bracket when the exact test is too large."""

    value: object  # int or None
    lower: int
    upper: int
    exact: bool
    quotient_size: object = None

    @property
    def flag(self):
        return "exact" if self.exact else "upper-bound-only"


def _lift(points):
    return [list(p) + [1] for p in points]


def caratheodory_spanning_rank(P, budget=DEFAULT_CSR_BUDGET, sr_budget=DEFAULT_SR_BUDGET):
    """Exact CSR by a finite covering test.

    The elements expressible with a fixed ``n``-subset ``S`` form the lattice
    ``L_S``; CSR is the least ``n`` for which these lattices cover ``Λ``.
    Lattices of infinite index cannot help a finite cover, and the remaining
    ones all contain their intersection ``N``, so testing one representative
    per class of ``Λ / N`` decides the question (stopping at the first
    uncovered class).  If ``budget`` classes pass without a decision only
    the bracket ``SR/(d+1) <= CSR <= SR`` is returned.
    """
    _require_lattice(P)
    d = P.dim
    sr = spanning_rank(P, sr_budget)
    pts = lattice_points(P)
    lifted = _lift(pts)
    # coordinates relative to a basis of Λ
    lam_basis, _ = linalg.hnf(lifted)
    lam_basis = [r for r in lam_basis if any(r)]
    r = len(lam_basis)
    lower = max(r, ceil(sr.value / r))
    if sr.value <= r:
        return CSRResult(sr.value, sr.value, sr.value, sr.exact)
    if not sr.exact:
        return CSRResult(None, lower, sr.value, False)
    coord_pts = [_solve_in_basis(lam_basis, v) for v in lifted]
    for n in range(r, sr.value):
        lattices = []
        for sub in combinations(range(len(coord_pts)), n):
            gens = [coord_pts[i] for i in sub]
            if linalg.rank(gens) < r:
                continue
            lattices.append([list(g) for g in linalg.lattice_basis(gens, r)])
        if not lattices:
            continue
        verdict, size = _covers(lattices, r, budget)
        if verdict is None:
            return CSRResult(None, lower, sr.value, False, size)
        if verdict:
            return CSRResult(n, n, n, sr.exact, size)
        lower = n + 1
    return CSRResult(sr.value, sr.value, sr.value, sr.exact)


def _solve_in_basis(basis, v):
    """Integer coordinates of ``v`` in an echelon-form lattice basis."""
    pivots = [next(j for j, c in enumerate(row) if c) for row in basis]
    rem = list(v)
    out = []
    for row, j in zip(basis, pivots):
        q, m = divmod(rem[j], row[j])
        if m:
            raise ValueError("vector not in lattice")
        out.append(q)
        rem = [a - q * b for a, b in zip(rem, row)]
    if any(rem):
        raise ValueError("vector not in lattice")
    return out


def _intersect(a, b):
    """Basis rows of the intersection of two full-rank lattices (bases as rows)."""
    r = len(a)
    # x a = y b  <=>  (x, y) in the left kernel of [a; -b]
    stacked = [list(row) for row in a] + [[-c for c in row] for row in b]
    h, u = linalg.hnf(stacked)
    kernel = [u[i][:r] for i in range(len(h)) if not any(h[i])]
    vecs = [linalg.matvec(linalg.transpose(a), x) for x in kernel]
    return [list(v) for v in linalg.lattice_basis(vecs, r)]


def _member(basis, x):
    return linalg.lattice_basis([list(r) for r in basis] + [list(x)], len(x)) == [
        tuple(r) for r in basis
    ]


def _covers(lattices, r, budget):
    """Whether the union of full-rank sublattices of ``Z^r`` is all of ``Z^r``.

    Every lattice contains the intersection ``N``, so it suffices to test one
    representative per class of ``Z^r / N``.  Returns ``(verdict, |Z^r/N|)``
    with verdict ``None`` when the budget ran out before a decision.
    """
    n = lattices[0]
    for other in lattices[1:]:
        n = _intersect(n, other)
    # with U N^T V = S, the points U^{-1} y (0 <= y_i < s_i) represent Z^r / N
    s, u, _ = linalg.snf(linalg.transpose(n))
    uinv = linalg.int_inverse(u)
    diag = [abs(s[i][i]) for i in range(r)]
    size = prod(diag)
    count = 0
    for y in product(*[range(q) for q in diag]):
        count += 1
        if count > budget:
            return None, size
        x = linalg.matvec(uinv, list(y))
        if not any(_member(lat, x) for lat in lattices):
            return False, size
    return True, size
