"""Exact rational linear programming.

A dense two-phase primal simplex over the integers (fraction-free "integer
pivoting": every tableau entry is an integer minor of the scaled input and
the common denominator is the previous pivot).  Pivot rule is Bland's rule
throughout: entering variable = lowest index with improving reduced cost,
leaving variable = lowest index among minimum-ratio rows.  Bland's rule
cannot cycle, so every call terminates, and the result is a deterministic
function of the input order.

Variables are free (unrestricted in sign); bounds are ordinary constraints.
"""

from dataclasses import dataclass
from fractions import Fraction

from .linalg import common_denominator

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_FLIP = {"<=": ">=", ">=": "<=", "==": "=="}


@dataclass(frozen=True)
class LPResult:
    status: str
    optimum: Fraction | None = None
    witness: tuple | None = None

    @property
    def ok(self):
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows, basis, n_cols, art_start):
        self.rows = rows          # constraint rows followed by two objective rows
        self.basis = basis
        self.n_cols = n_cols      # structural + slack + artificial columns (rhs excluded)
        self.art_start = art_start
        self.den = 1
        self.m = len(basis)

    def pivot(self, r, c):
        rows = self.rows
        pr = rows[r]
        p = pr[c]
        den = self.den
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                rows[i] = [(x * p - f * y) // den for x, y in zip(row, pr)]
            elif p != den:
                rows[i] = [x * p // den for x in row]
        self.den = p
        self.basis[r] = c

    def ratio_row(self, c):
        best = None
        rhs = self.n_cols
        for i in range(self.m):
            a = self.rows[i][c]
            if a <= 0:
                continue
            b = self.rows[i][rhs]
            if best is None:
                best = i
                continue
            bb, ba = self.rows[best][rhs], self.rows[best][c]
            lhs, rhs_ = b * ba, bb * a
            if lhs < rhs_ or (lhs == rhs_ and self.basis[i] < self.basis[best]):
                best = i
        return best

    def run(self, obj_index, allowed):
        obj = self.rows[obj_index]
        while True:
            obj = self.rows[obj_index]
            c = next((j for j in range(allowed) if obj[j] < 0), None)
            if c is None:
                return True
            r = self.ratio_row(c)
            if r is None:
                return False
            self.pivot(r, c)


def solve_lp(objective, constraints, maximize=True):
    """Optimize ``objective . x`` subject to ``constraints``.

    Args:
        objective: sequence of rationals (length n).
        constraints: iterable of ``(coeffs, rhs, rel)`` with ``rel`` one of
            ``"<="``, ``">="``, ``"=="``.
        maximize: maximize when true, else minimize.

    Returns:
        :class:`LPResult`.  Infeasible and unbounded problems are statuses,
        not exceptions.
    """
    n = len(objective)
    cons = []
    for coeffs, rhs, rel in constraints:
        if rel not in _FLIP:
            raise ValueError(f"unknown relation {rel!r}")
        coeffs = [Fraction(x) for x in coeffs]
        if len(coeffs) != n:
            raise ValueError("constraint length does not match objective")
        rhs = Fraction(rhs)
        if rhs < 0:
            coeffs = [-x for x in coeffs]
            rhs = -rhs
            rel = _FLIP[rel]
        cons.append((coeffs, rhs, rel))

    m = len(cons)
    n_slack = sum(1 for _, _, rel in cons if rel != "==")
    n_art = sum(1 for _, _, rel in cons if rel != "<=")
    art_start = 2 * n + n_slack
    n_cols = art_start + n_art
    rows = []
    basis = []
    art_rows = []
    s_idx = 2 * n
    a_idx = art_start
    for i, (coeffs, rhs, rel) in enumerate(cons):
        scale = common_denominator(coeffs + [rhs])
        a = [int(x * scale) for x in coeffs]
        row = a + [-x for x in a] + [0] * (n_slack + n_art) + [int(rhs * scale)]
        if rel == "<=":
            row[s_idx] = 1
            basis.append(s_idx)
            s_idx += 1
        else:
            if rel == ">=":
                row[s_idx] = -1
                s_idx += 1
            row[a_idx] = 1
            basis.append(a_idx)
            art_rows.append(i)
            a_idx += 1
        rows.append(row)

    cscale = common_denominator(objective) if n else 1
    sign = 1 if maximize else -1
    c = [int(Fraction(x) * cscale) * sign for x in objective]
    obj2 = [-x for x in c] + c + [0] * (n_slack + n_art) + [0]
    obj1 = [0] * (n_cols + 1)
    for i in art_rows:
        obj1 = [x - y for x, y in zip(obj1, rows[i])]
    for j in range(art_start, n_cols):
        obj1[j] = 0
    rows.append(obj2)
    rows.append(obj1)
    tab = _Tableau(rows, basis, n_cols, art_start)
    i_obj2, i_obj1 = m, m + 1

    if art_rows:
        tab.run(i_obj1, n_cols)
        if tab.rows[i_obj1][n_cols] < 0:
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis
        i = 0
        while i < tab.m:
            if tab.basis[i] < art_start:
                i += 1
                continue
            row = tab.rows[i]
            j = next((j for j in range(art_start) if row[j] != 0), None)
            if j is None:
                del tab.rows[i]
                del tab.basis[i]
                tab.m -= 1
                i_obj2 -= 1
                i_obj1 -= 1
                continue
            if row[j] < 0:
                tab.rows[i] = [-x for x in row]
            tab.pivot(i, j)
            i += 1

    if not tab.run(i_obj2, art_start):
        return LPResult(UNBOUNDED)

    den = tab.den
    y = [Fraction(0)] * art_start
    for i, b in enumerate(tab.basis):
        if b < art_start:
            y[b] = Fraction(tab.rows[i][n_cols], den)
    x = tuple(y[j] - y[n + j] for j in range(n))
    value = Fraction(tab.rows[i_obj2][n_cols], den * cscale) * sign
    return LPResult(OPTIMAL, value, x)


def feasible_point(constraints, n):
    """Any point satisfying ``constraints`` in ``Q^n``, or ``None``."""
    res = solve_lp([0] * n, constraints)
    return res.witness if res.ok else None
