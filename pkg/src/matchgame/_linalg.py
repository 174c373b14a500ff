"""Small exact linear algebra routines (dense, rational) used for
affine-hull bookkeeping and vertex enumeration."""

from __future__ import annotations

from ._rational import Q, ZERO


def rref(rows):
    """Reduced row echelon form. Returns (new_rows, pivot_columns).

    `rows` is a list of lists of rationals; the input is not modified.
    """
    m = [list(map(Q, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} for the given rows over `ncols` columns."""
    if not rows:
        return _identity(ncols)
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = Q(1)
        for i, p in enumerate(pivots):
            vec[p] = -red[i][f]
        basis.append(vec)
    return basis


def _identity(n):
    out = []
    for j in range(n):
        vec = [ZERO] * n
        vec[j] = Q(1)
        out.append(vec)
    return out


def solve_square(rows, rhs):
    """Solve A x = b for square nonsingular A; returns None if singular."""
    n = len(rows)
    aug = [list(map(Q, rows[i])) + [Q(rhs[i])] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]
