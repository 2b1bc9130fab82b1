"""Unimodular simplices in wide bodies and generalized flatness oracles.

Two modes appear throughout: ``"z"`` (lattice translations, so every point
of a copy is a lattice point) and ``"r"`` (arbitrary real translations).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import ceil, floor, isqrt

from . import linalg
from .errors import IndependenceViolation, NotFound, VerificationFailed
from .linalg import det, dot, matvec
from .lp import solve_lp
from .polytope import UnimodularMap, contains_point, dilate
from .width import directional_width, lattice_width, successive_minima_diffbody


# ----------------------------------------------------------------- flatness table


class FltTable:
    """Rational upper bounds for the flatness constants ``Flt(d)``."""

    _fixed = {1: Fraction(1), 2: Fraction(2783, 1291), 3: Fraction(1061, 250)}

    @classmethod
    def upper(cls, d):
        if d < 1:
            raise ValueError("dimension must be positive")
        if d in cls._fixed:
            return cls._fixed[d]
        # ceil(1000 * sqrt((d+1)(2d+1)/6 * d^3)) / 1000
        s = Fraction((d + 1) * (2 * d + 1) * d**3, 6)
        target = s * 10**6
        n = isqrt(ceil(target))
        while n * n < target:
            n += 1
        return Fraction(n, 1000)

    @classmethod
    def simplex_threshold(cls, d, mode="z"):
        """Width guaranteeing a unimodular simplex: ``2 Flt(d) d`` (Z) or ``Flt(d) d`` (R)."""
        t = cls.upper(d) * d
        return 2 * t if mode == "z" else t


# ------------------------------------------------------------------- certificates


@dataclass(frozen=True)
class SimplexCertificate:
    """``d + 1`` points forming a (real-)unimodular copy of the standard simplex."""

    mode: str
    points: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "points", tuple(tuple(Fraction(c) for c in p) for p in self.points)
        )

    @property
    def dim(self):
        return len(self.points[0])

    @property
    def edge_matrix(self):
        """Columns ``p_i - p_0``."""
        p0 = self.points[0]
        cols = [[a - b for a, b in zip(p, p0)] for p in self.points[1:]]
        return linalg.transpose(cols)

    def to_map(self):
        """Unimodular map sending the standard simplex onto the certificate."""
        e = self.edge_matrix
        return UnimodularMap([[int(c) for c in row] for row in e], self.points[0], self.mode)

    def problems(self, K=None):
        """Reasons the certificate is invalid (empty when valid)."""
        out = []
        d = len(self.points[0]) if self.points else 0
        if len(self.points) != d + 1:
            return [f"expected {d + 1} points, got {len(self.points)}"]
        e = self.edge_matrix
        if any(c.denominator != 1 for row in e for c in row):
            out.append("edge vectors are not integral")
        elif abs(det(e)) != 1:
            out.append("determinant ≠ ±1")
        if self.mode == "z" and any(c.denominator != 1 for p in self.points for c in p):
            out.append("points are not lattice points")
        if K is not None:
            for p in self.points:
                if not contains_point(K, p):
                    out.append(f"point {[str(c) for c in p]} is outside the body")
        return out

    def verify(self, K=None):
        bad = self.problems(K)
        if bad:
            raise VerificationFailed("; ".join(bad), reasons=bad)
        return True


# ------------------------------------------------------ parallelepiped construction


def _reduce_into(x, w):
    """Lattice point in ``x + W [0,1)^n`` (``W`` has integer independent columns)."""
    n = len(x)
    z0 = [0] * n
    coeffs = linalg.solve_rational(w, [a - b for a, b in zip(z0, x)])
    k = [floor(c) for c in coeffs]
    shift = matvec(w, k)
    return [a - b for a, b in zip(z0, shift)]


def _lemma(a, vs, tau):
    """Lattice points ``p_0..p_d`` of a unimodular simplex in ``a + sum [0, tau v_i]``."""
    d = len(a)
    if d == 1:
        v = vs[0][0]
        lo = min(a[0], a[0] + tau * v)
        k = ceil(lo)
        if tau == 1:
            # integral endpoint: start at a and step towards the other end
            step = 1 if v > 0 else -1
            return [[int(a[0])], [int(a[0]) + step]]
        return [[k], [k + 1]]
    n = linalg.primitive(linalg.normal_vector([list(v) for v in vs[:-1]]))
    u = linalg.complete_to_unimodular(n)
    uinv = linalg.int_inverse(u)
    a2 = matvec(u, a)
    v2 = [matvec(u, v) for v in vs]
    vd = v2[-1]
    h = vd[-1]
    sub_vs = [v[:-1] for v in v2[:-1]]
    w = linalg.transpose(sub_vs)
    if tau == 1:
        k = a2[-1]
        base = a2[:-1]
        other_height = k + (1 if h > 0 else -1)
        extra_base = [c + Fraction(x, abs(h)) for c, x in zip(a2[:-1], vd[:-1])]
    else:
        # slice of the parallelepiped at height y: a + 2 t(y) v_d + (lower faces)
        def slice_base(y):
            t = Fraction(y - a2[-1], 2 * h)
            return [c + 2 * t * x for c, x in zip(a2[:-1], vd[:-1])]

        k = ceil(min(a2[-1], a2[-1] + 2 * h))
        base = slice_base(k)
        other_height = k + 1
        extra_base = slice_base(k + 1)
    sub = _lemma(base, sub_vs, tau)
    pts = [list(p) + [k] for p in sub]
    z = _reduce_into(extra_base, w)
    pts.append(list(z) + [other_height])
    return [[int(c) for c in matvec(uinv, p)] for p in pts]


def simplex_in_parallelepiped(a, vectors, mode="z"):
    """Unimodular simplex inside ``a + sum [0, v_i]`` (Z) or ``a + sum [0, 2 v_i]`` (R).

    In Z-mode ``a`` must be integral.  The output points are always lattice
    points; ``mode`` is recorded in the certificate.

    Raises:
        IndependenceViolation: the vectors are dependent.
    """
    a = [Fraction(c) for c in a]
    vs = [[int(c) for c in v] for v in vectors]
    d = len(a)
    if len(vs) != d or any(len(v) != d for v in vs):
        raise ValueError("need d vectors of length d")
    if det(linalg.transpose(vs)) == 0:
        raise IndependenceViolation("parallelepiped edge vectors are linearly dependent")
    if mode == "z":
        if any(c.denominator != 1 for c in a):
            raise ValueError("Z-mode needs an integral base point")
        pts = _lemma(a, vs, 1)
    else:
        pts = _lemma(a, vs, 2)
    return SimplexCertificate(mode, pts)


def _parallelepiped_contains(a, vs, tau, p):
    coeffs = linalg.solve_rational(linalg.transpose(vs), [x - y for x, y in zip(p, a)])
    return all(0 <= c <= tau for c in coeffs)


# --------------------------------------------------------------- simplex search


def _segment_in(K, mu, v):
    """Point ``x`` with ``x`` and ``x + v`` in ``mu K`` (LP), or ``None``."""
    d = K.dim
    cons = []
    for u, phi in K.halfspaces:
        cons.append((list(u), -mu * phi, ">="))
        cons.append((list(u), -mu * phi - dot(u, v), ">="))
    res = solve_lp([0] * d, cons)
    return list(res.witness) if res.ok else None


def find_unimodular_simplex(K, mode="z", direct=True):
    """Certified unimodular simplex in ``K`` via the successive-minima route.

    The standard simplex placed by a lattice (Z) or real (R) translation is
    tried first (skip with ``direct=False``).  Otherwise, with ``lambda_d(K - K)`` at most ``1/(2d)`` (Z)
    or ``1/d`` (R), the minima witnesses become segments anchored inside a
    scaled copy of ``K`` and the parallelepiped construction produces the
    simplex.

    Raises:
        NotFound: neither route applies (``K`` may still contain a copy).
    """
    d = K.dim
    if direct:
        found = _identity_copy(K, mode)
        if found is not None:
            return found
    mins = successive_minima_diffbody(K)
    lam = mins.lambdas[-1]
    mu = Fraction(1, 2 * d) if mode == "z" else Fraction(1, d)
    if lam > mu:
        raise NotFound(
            f"lambda_d(K-K) = {lam} exceeds {mu}; sufficient condition fails",
            lambda_d=str(lam),
            threshold=str(mu),
        )
    anchors = []
    for v in mins.witness_vectors:
        x = _segment_in(K, mu, v)
        if x is None:  # cannot happen when v lies in mu (K - K)
            raise NotFound("segment realisation failed")
        anchors.append(x)
    total = [sum(c) for c in zip(*anchors)]
    vs = [list(v) for v in mins.witness_vectors]
    if mode == "z":
        a = [2 * c for c in total]
        cert = simplex_in_parallelepiped(a, vs, "r")
        cert = SimplexCertificate("z", cert.points)
    else:
        base = simplex_in_parallelepiped([0] * d, vs, "z")
        cert = SimplexCertificate("r", [[c + t for c, t in zip(p, total)] for p in base.points])
    cert.verify(K)
    return cert


def _identity_copy(K, mode):
    d = K.dim
    pts = [tuple(0 for _ in range(d))] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
    b = _translate_into(K, [[int(i == j) for j in range(d)] for i in range(d)], pts, mode)
    if b is None:
        return None
    return SimplexCertificate(mode, [[c + t for c, t in zip(p, b)] for p in pts])


# ----------------------------------------------------------- containment oracle


@dataclass(frozen=True)
class Unknown:
    """Honest negative from a bounded search."""

    bound: int
    matrices_checked: int = 0

    def __bool__(self):
        return False


class _TranslateSolver:
    """Feasible translates ``{b : A X + b ⊆ K}`` for a fixed body ``K``.

    The region has the facet normals of ``K`` and only its offsets depend on
    ``A X``, so the inverses of all nonsingular d-subsets of normals are
    computed once and reused to list candidate vertices.
    """

    def __init__(self, K):
        self.K = K
        self.normals = [u for u, _ in K.halfspaces]
        self.phis = [phi for _, phi in K.halfspaces]
        d = K.dim
        self.bases = []
        m = len(self.normals)
        self.use_lp = m > 16 and d >= 3
        if not self.use_lp:
            for idx in combinations(range(m), d):
                rows = [self.normals[k] for k in idx]
                if det(rows) != 0:
                    self.bases.append((idx, linalg.inverse(rows)))

    def region(self, points):
        """Offsets ``psi`` with the region ``{b : <u_k, b> >= -psi_k}``."""
        return [
            phi + min(dot(u, p) for p in points) for u, phi in zip(self.normals, self.phis)
        ]

    def vertices(self, psi):
        out = set()
        for idx, inv in self.bases:
            rhs = [-psi[k] for k in idx]
            b = tuple(matvec(inv, rhs))
            if all(dot(u, b) >= -s for u, s in zip(self.normals, psi)):
                out.add(b)
        return sorted(out)

    def _lp_point(self, psi):
        d = self.K.dim
        cons = [(list(u), -s, ">=") for u, s in zip(self.normals, psi)]
        res = solve_lp([0] * d, cons)
        return res.witness if res.ok else None

    def real_point(self, psi):
        if self.use_lp:
            return self._lp_point(psi)
        for idx, inv in self.bases:
            b = tuple(matvec(inv, [-psi[k] for k in idx]))
            if all(dot(u, b) >= -s for u, s in zip(self.normals, psi)):
                return b
        return None

    def lattice_point(self, psi):
        d = self.K.dim
        if self.use_lp:
            lo, hi = [], []
            for i in range(d):
                e = [int(i == j) for j in range(d)]
                cons = [(list(u), -s, ">=") for u, s in zip(self.normals, psi)]
                r1 = solve_lp(e, cons, maximize=False)
                if not r1.ok:
                    return None
                r2 = solve_lp(e, cons, maximize=True)
                lo.append(ceil(r1.optimum))
                hi.append(floor(r2.optimum))
        else:
            verts = self.vertices(psi)
            if not verts:
                return None
            lo = [ceil(min(v[i] for v in verts)) for i in range(d)]
            hi = [floor(max(v[i] for v in verts)) for i in range(d)]
        if any(a > b for a, b in zip(lo, hi)):
            return None
        for b in product(*[range(a, c + 1) for a, c in zip(lo, hi)]):
            if all(dot(u, b) >= -s for u, s in zip(self.normals, psi)):
                return b
        return None


def _translate_into(K, A, points, mode, solver=None):
    solver = solver or _TranslateSolver(K)
    img = [matvec(A, p) for p in points]
    psi = solver.region(img)
    if mode == "z":
        return solver.lattice_point(psi)
    return solver.real_point(psi)


def _matrices(d, bound):
    """Matrices in GL(d, Z) with sup-norm ``1..bound``: the identity, then shell by shell
    (lexicographic within a shell)."""
    ident = linalg.identity(d)
    yield ident
    for r in range(1, bound + 1):
        vals = range(-r, r + 1)
        rows = [row for row in product(vals, repeat=d) if any(row)]
        for rs in product(rows, repeat=d):
            if max(max(abs(c) for c in row) for row in rs) != r:
                continue
            m = [list(row) for row in rs]
            if m != ident and abs(det(m)) == 1:
                yield m


def contains_unimodular_copy(K, X, mode="z", matrix_bound=3):
    """Search ``A`` in GL(d, Z) with ``|A|_inf <= matrix_bound`` and ``b`` with ``A X + b ⊆ K``.

    Sound but incomplete: returns a :class:`~latgeo.polytope.UnimodularMap`
    or :class:`Unknown` carrying the searched bound.
    """
    if matrix_bound < 1:
        raise ValueError("matrix_bound must be at least 1")
    d = K.dim
    pts = [tuple(v) for v in X.vertices]
    solver = _TranslateSolver(K)
    kw = [directional_width(K, tuple(int(i == j) for j in range(d))) for i in range(d)]
    fw = [(u, directional_width(K, u)) for u, _ in K.halfspaces]

    def xwidth(u):
        vals = [dot(u, p) for p in pts]
        return max(vals) - min(vals)

    checked = 0
    row_ok = {}
    for A in _matrices(d, matrix_bound):
        ok = True
        for i, row in enumerate(A):
            key = (i, tuple(row))
            if key not in row_ok:
                row_ok[key] = xwidth(row) <= kw[i]
            if not row_ok[key]:
                ok = False
                break
        if not ok:
            continue
        at = linalg.transpose(A)
        if any(xwidth(matvec(at, u)) > w for u, w in fw):
            continue
        checked += 1
        b = _translate_into(K, A, pts, mode, solver)
        if b is not None:
            return UnimodularMap(A, b, mode)
    return Unknown(matrix_bound, checked)


def cube_lemma_map(T):
    """From ``T(X + [0,1]^d) ⊆ K`` (R-mode) build a Z-mode map with ``T'(X) ⊆ K``.

    With ``T x = A x + b`` write ``A^{-1} b = c' - c''`` where ``c'`` is
    integral and ``c''`` lies in ``[0,1)^d``; then ``A (X + c')`` is contained in
    ``A (X + [0,1]^d) + b``.
    """
    a = T.matrix
    c = linalg.solve_rational(a, T.translation)
    cprime = [ceil(x) for x in c]
    return UnimodularMap(a, matvec(a, cprime), "z")


# ------------------------------------------------------------------ one dimension


def flt1_exact(X):
    """Exact ``Flt_1(X)`` for a finite set of rationals.

    An interval of length ``L`` avoids every copy ``±X + n`` iff the two
    admissible-shift windows of length ``L - diam X`` can both miss the
    integers; with ``c = frac(min X + max X)`` this allows ``L - diam X`` up
    to ``max(c, 1 - c)``, or up to 1 when ``c = 0``.
    """
    xs = [Fraction(x) for x in X]
    if not xs:
        raise ValueError("X must be nonempty")
    lo, hi = min(xs), max(xs)
    s = lo + hi
    c = s - floor(s)
    gap = Fraction(1) if c == 0 else max(c, 1 - c)
    return hi - lo + gap


# --------------------------------------------------------- largest simplex dilate


@dataclass(frozen=True)
class SimplexDilate:
    R: Fraction
    map: UnimodularMap
    candidates: int
    guaranteed: Fraction

    @property
    def points(self):
        d = self.map.dim
        pts = [[0] * d] + [[self.R * int(i == j) for j in range(d)] for i in range(d)]
        return [self.map(p) for p in pts]


def _dilate_lp(K, A):
    d = K.dim
    cols = linalg.transpose(A)
    cons = []
    for u, phi in K.halfspaces:
        cons.append((list(u) + [0], -phi, ">="))
        for col in cols:
            cons.append((list(u) + [dot(u, col)], -phi, ">="))
    cons.append(([0] * d + [1], 0, ">="))
    res = solve_lp([0] * d + [1], cons)
    if not res.ok:
        return None, None
    return res.optimum, list(res.witness[:d])


def _simplex_key(A):
    cols = [tuple(c) for c in linalg.transpose(A)]
    verts = [tuple(0 for _ in cols[0])] + cols
    m = min(verts)
    return tuple(sorted(tuple(a - b for a, b in zip(v, m)) for v in verts))


def _edge_cone_bases(K):
    den, verts = K.scaled_vertices
    nbrs = {i: [] for i in range(len(verts))}
    for i, j in K.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    d = K.dim
    out = []
    for i, js in nbrs.items():
        dirs = [linalg.primitive([a - b for a, b in zip(verts[j], verts[i])]) for j in js]
        for sub in combinations(dirs, d):
            cols = [list(c) for c in sub]
            A = linalg.transpose(cols)
            if abs(det(A)) == 1:
                out.append(A)
    return out


def _signed_permutations(d):
    for perm in permutations(range(d)):
        for signs in product((1, -1), repeat=d):
            yield [[signs[i] * int(perm[i] == j) for j in range(d)] for i in range(d)]


def largest_simplex_dilate(K, matrix_bound=1):
    """Lower bound on the largest ``R`` with an R-unimodular copy of ``R Δ_d`` in ``K``.

    Candidates are the unimodular edge-cone bases at the vertices of ``K``,
    signed permutations, small matrices (``d <= 2``) and the matrix from the
    certified simplex in ``(Flt(d) d / width) K``, so the result is at least
    ``width(K) / (Flt(d) d)``.
    """
    d = K.dim
    w = lattice_width(K).value
    guaranteed = w / (FltTable.upper(d) * d)
    cands = list(_edge_cone_bases(K))
    cands.extend(_signed_permutations(d))
    if d <= 2:
        cands.extend(_matrices(d, matrix_bound))
    try:
        cert = find_unimodular_simplex(dilate(K, 1 / guaranteed), "r")
        cands.append([[int(c) for c in row] for row in cert.edge_matrix])
    except NotFound:
        pass
    seen = set()
    best = None
    for A in cands:
        key = _simplex_key(A)
        if key in seen:
            continue
        seen.add(key)
        R, b = _dilate_lp(K, A)
        if R is None:
            continue
        if best is None or R > best[0]:
            best = (R, A, b)
    R, A, b = best
    return SimplexDilate(R, UnimodularMap(A, b, "r"), len(seen), guaranteed)
