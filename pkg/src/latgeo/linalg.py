"""Exact integer and rational linear algebra.

Scalars are Python ``int`` and :class:`fractions.Fraction`; matrices are
row-major lists of lists.  Nothing here ever touches a float.

Hermite normal form convention
------------------------------
:func:`hnf` returns ``H = U @ M`` built with unimodular *row* operations, so
``H`` is in row echelon form: pivots are positive, every entry above a pivot
is reduced into ``[0, pivot)``, and rows below the rank are zero.  Transposed,
``H.T = M.T @ U.T`` is the lower-triangular column-style HNF of ``M.T``.  The
form is unique for the row lattice of ``M``, so two generating matrices span
the same lattice iff their nonzero HNF rows coincide.
"""

from fractions import Fraction
from functools import reduce
from math import gcd

__all__ = [
    "Rat",
    "as_rat",
    "parse_rat",
    "format_rat",
    "identity",
    "transpose",
    "matmul",
    "matvec",
    "dot",
    "det",
    "rank",
    "hnf",
    "snf",
    "solve_rational",
    "inverse",
    "int_inverse",
    "primitive",
    "common_denominator",
    "normal_vector",
    "lattice_basis",
    "lattice_equal",
    "complete_to_unimodular",
]

Rat = Fraction


def as_rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rat(s):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        den = int(den)
        if den == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(int(num), den)
    return Fraction(int(s))


def format_rat(x):
    # str(Fraction) already gives "p/q" or "n" in lowest terms
    return str(Fraction(x))


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(r) for r in zip(*m)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def det(m):
    """Determinant via fraction-free Bareiss elimination (exact for ints)."""
    n = len(m)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) and x.denominator != 1 for r in m for x in r):
        return _det_rational(m)
    a = [[int(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _det_rational(m):
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        result *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return result


def rank(m):
    if not m:
        return 0
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                for j in range(c, cols):
                    a[i][j] -= f * a[r][j]
        r += 1
        if r == rows:
            break
    return r


def _row_combine(rows, i, j, a, b, c, d):
    """Replace (row_i, row_j) by (a*row_i + b*row_j, c*row_i + d*row_j)."""
    ri, rj = rows[i], rows[j]
    rows[i] = [a * x + b * y for x, y in zip(ri, rj)]
    rows[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hnf(m):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ M`` and ``|det U| = 1``.  An empty
    matrix yields empty ``H`` and the identity for ``U``.
    """
    rows = len(m)
    if rows == 0:
        return [], []
    cols = len(m[0])
    h = [[int(x) for x in row] for row in m]
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            g, s, t = _xgcd(h[r][c], h[i][c])
            a_r, a_i = h[r][c] // g, h[i][c] // g
            # [[s, t], [-a_i, a_r]] has determinant s*a_r + t*a_i = 1
            _row_combine(h, r, i, s, t, -a_i, a_r)
            _row_combine(u, r, i, s, t, -a_i, a_r)
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        p = h[r][c]
        for i in range(r):
            q = h[i][c] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def snf(m):
    """Smith normal form ``S = U @ M @ V`` with ``s_1 | s_2 | ...`` and ``s_i >= 0``."""
    rows = len(m)
    if rows == 0:
        return [], [], []
    cols = len(m[0])
    s = [[int(x) for x in row] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def col_combine(i, j, a, b, c, d):
        # (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
        for mat in (s, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y

    for t in range(min(rows, cols)):
        nz = [(abs(s[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if s[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            changed = False
            for i in range(t + 1, rows):
                if s[i][t] and s[i][t] % s[t][t] == 0:
                    q = s[i][t] // s[t][t]
                    _row_combine(s, t, i, 1, 0, -q, 1)
                    _row_combine(u, t, i, 1, 0, -q, 1)
                elif s[i][t]:
                    g, x, y = _xgcd(s[t][t], s[i][t])
                    a, b = s[t][t] // g, s[i][t] // g
                    _row_combine(s, t, i, x, y, -b, a)
                    _row_combine(u, t, i, x, y, -b, a)
                    changed = True
            for j in range(t + 1, cols):
                if s[t][j] and s[t][j] % s[t][t] == 0:
                    col_combine(t, j, 1, 0, -(s[t][j] // s[t][t]), 1)
                elif s[t][j]:
                    g, x, y = _xgcd(s[t][t], s[t][j])
                    a, b = s[t][t] // g, s[t][j] // g
                    col_combine(t, j, x, y, -b, a)
                    changed = True
            if changed:
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            p = s[t][t]
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            s[t] = [x + y for x, y in zip(s[t], s[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return s, u, v


def solve_rational(a, b):
    """Solve ``A x = b`` exactly; ``None`` when ``A`` is singular."""
    n = len(a)
    if n == 0:
        return []
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n] for row in aug]


def inverse(a):
    n = len(a)
    cols = [solve_rational(a, [int(i == j) for i in range(n)]) for j in range(n)]
    if any(c is None for c in cols):
        return None
    return transpose(cols)


def int_inverse(a):
    """Inverse of a unimodular integer matrix, as integers."""
    inv = inverse(a)
    if inv is None:
        raise ValueError("matrix is singular")
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def primitive(v):
    g = reduce(gcd, (int(x) for x in v), 0)
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def common_denominator(values):
    den = 1
    for x in values:
        q = Fraction(x).denominator
        den = den * q // gcd(den, q)
    return den


def normal_vector(vectors):
    """Integer vector orthogonal to ``d-1`` vectors in ``Q^d`` (generalized cross product).

    Entries are the signed maximal minors; the result is zero iff the inputs
    are linearly dependent.  Not normalized.
    """
    if not vectors:
        return (1,)
    d = len(vectors[0])
    den = common_denominator(x for v in vectors for x in v)
    m = [[int(x * den) for x in v] for v in vectors]
    out = []
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in m]
        out.append((-1) ** (d - 1 + j) * det(minor))
    return tuple(out)


def lattice_basis(vectors, dim):
    """Nonzero HNF rows of the lattice generated by integer ``vectors``."""
    if not vectors:
        return []
    h, _ = hnf([list(v) for v in vectors])
    return [tuple(r) for r in h if any(r)][:dim]


def lattice_equal(gens_a, gens_b, dim):
    return lattice_basis(gens_a, dim) == lattice_basis(gens_b, dim)


def complete_to_unimodular(u):
    """Matrix in GL(d, Z) whose last row is the primitive vector ``u``."""
    d = len(u)
    col = [[int(c)] for c in u]
    h, m = hnf(col)
    if h[0][0] != 1:
        raise ValueError("vector is not primitive")
    # m @ u = e_1, so u is the first column of m^{-1}
    rows = transpose(int_inverse(m))
    return rows[1:] + rows[:1]
