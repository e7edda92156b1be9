"""Exact rational linear algebra on small integer matrices.

Row reduction, null spaces and a dense simplex method over
:class:`fractions.Fraction`. Matrices are lists of rows. Sizes here are tens
of rows at most, so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(a: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    r = to_fractions(a)
    if not r:
        return r, []
    n_rows, n_cols = len(r), len(r[0])
    pivots: list[int] = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        piv = next((i for i in range(row, n_rows) if r[i][col] != 0), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        p = r[row][col]
        r[row] = [x / p for x in r[row]]
        for i in range(n_rows):
            if i != row and r[i][col] != 0:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1])


def null_space(a: Sequence[Sequence], n_cols: int | None = None) -> Matrix:
    """Basis of ``{x : a x = 0}``, one vector per free column.

    ``n_cols`` is needed only when ``a`` has no rows.
    """
    if not a:
        if n_cols is None:
            raise ValueError("n_cols required for a matrix without rows")
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    r, pivots = rref(a)
    n = len(r[0])
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][f]
        basis.append(v)
    return basis


def left_null_space(a: Sequence[Sequence], n_rows: int | None = None) -> Matrix:
    """Basis of ``{c : c^T a = 0}``."""
    rows = len(a) if a else (n_rows or 0)
    if a and len(a[0]) == 0:
        return null_space([], n_cols=rows)
    return null_space(transpose(a), n_cols=rows)


def primitive_integer(v: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def mat_vec_left(c: Sequence, a: Sequence[Sequence]) -> list[Fraction]:
    """``c^T a`` in exact arithmetic."""
    if not a:
        return []
    return [sum((Fraction(ci) * Fraction(row[j]) for ci, row in zip(c, a)), Fraction(0))
            for j in range(len(a[0]))]


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status: str, x: list[Fraction] | None, value: Fraction | None):
        self.status = status  # "optimal" | "unbounded"
        self.x = x
        self.value = value

    def __repr__(self):
        return f"LPResult(status={self.status!r}, value={self.value!r})"


def simplex_max(
    objective: Sequence,
    a_ub: Sequence[Sequence],
    b_ub: Sequence,
) -> LPResult:
    """Maximize ``objective . x`` subject to ``a_ub x <= b_ub``, ``x >= 0``.

    Requires ``b_ub >= 0`` so the slack basis at ``x = 0`` is feasible and a
    single phase suffices. Bland's rule guarantees termination on the
    degenerate problems produced by homogeneous constraints.
    """
    n = len(objective)
    rows = len(a_ub)
    b = [Fraction(x) for x in b_ub]
    if any(x < 0 for x in b):
        raise ValueError("simplex_max requires a nonnegative right-hand side")
    # tableau: rows x (n + rows + 1); last column is the rhs
    tab = []
    for i, row in enumerate(a_ub):
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")
        slack = [Fraction(int(i == k)) for k in range(rows)]
        tab.append([Fraction(x) for x in row] + slack + [b[i]])
    # reduced costs row stored as -objective (we pivot while any entry < 0)
    z = [-Fraction(x) for x in objective] + [Fraction(0)] * rows + [Fraction(0)]
    basis = [n + i for i in range(rows)]
    width = n + rows

    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(rows):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return LPResult("unbounded", None, None)
        p = tab[leave][enter]
        tab[leave] = [x / p for x in tab[leave]]
        for i in range(rows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if z[enter] != 0:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, tab[leave])]
        basis[leave] = enter

    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][-1]
    return LPResult("optimal", x, z[-1])
