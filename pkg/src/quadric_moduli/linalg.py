"""Row reduction and small linear solves over an exact field.

Everything here works on lists of rows of canonical field values and is
deliberately tiny: the matrices in this package are at most 12 x 12.
"""

from __future__ import annotations


def rref(field, rows):
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_columns).  Input rows are not modified.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if mat[i][c] != field.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != field.zero:
                factor = mat[i][c]
                mat[i] = [field.sub(v, field.mul(factor, w)) for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat, pivots


def rank(field, rows) -> int:
    return len(rref(field, rows)[1])


def solve(field, rows, rhs):
    """Solve the (possibly overdetermined) system rows . x = rhs exactly.

    Returns the solution vector if the system is consistent and the
    coefficient matrix has full column rank, None if inconsistent.
    Raises ValueError when the solution is not unique.
    """
    ncols = len(rows[0]) if rows else 0
    augmented = [list(r) + [v] for r, v in zip(rows, rhs)]
    reduced, pivots = rref(field, augmented)
    if ncols in pivots:
        return None  # pivot in the constants column: inconsistent
    if len(pivots) < ncols:
        raise ValueError("underdetermined system")
    solution = [field.zero] * ncols
    for i, c in enumerate(pivots):
        solution[c] = reduced[i][ncols]
    return solution
