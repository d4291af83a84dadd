"""Exact solution of rational linear systems."""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integer_row(row, rhs_value):
    vals = [Fraction(v) for v in row] + [Fraction(rhs_value)]
    scale = lcm(*(v.denominator for v in vals)) if vals else 1
    return [int(v * scale) for v in vals]


def linsolve(matrix, rhs, ncols=None):
    """Solve ``matrix @ v = rhs`` exactly.

    Rows are scaled to integers and reduced to echelon form by fraction-free
    (Bareiss) elimination; the solution is then recovered by back-substitution
    over the rationals.  Free variables are set to zero.  Returns a list of
    Fractions, or ``None`` if the system is inconsistent.

    ``ncols`` is only needed when ``matrix`` has no rows.
    """
    if len(matrix) != len(rhs):
        raise ValueError("matrix and right-hand side have different row counts")
    if matrix:
        width = len(matrix[0])
        if any(len(r) != width for r in matrix):
            raise ValueError("matrix rows have different lengths")
        if ncols is not None and ncols != width:
            raise ValueError("ncols disagrees with the matrix width")
        ncols = width
    elif ncols is None:
        ncols = 0
    rows = [_integer_row(r, b) for r, b in zip(matrix, rhs)]
    nrows = len(rows)

    pivots = []  # (row, col)
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            a_ic = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, ncols + 1):
                q, rem = divmod(piv * row_i[j] - a_ic * row_r[j], prev)
                assert rem == 0, "Bareiss step must divide exactly"
                row_i[j] = q
            row_i[c] = 0
        prev = piv
        pivots.append((r, c))
        r += 1

    # rows below the last pivot have zero coefficients
    for i in range(r, nrows):
        if rows[i][ncols]:
            return None

    solution = [Fraction(0)] * ncols
    for pr, pc in reversed(pivots):
        row = rows[pr]
        acc = Fraction(row[ncols])
        for j in range(pc + 1, ncols):
            if row[j] and solution[j]:
                acc -= row[j] * solution[j]
        solution[pc] = acc / row[pc]
    return solution
