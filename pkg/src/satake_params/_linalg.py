"""Small exact rational linear algebra helpers."""

from fractions import Fraction
from typing import Optional, Sequence


def row_reduce(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows) -> int:
    return len(row_reduce(rows)[1])


def solve(columns: Sequence[Sequence], v: Sequence) -> Optional[tuple]:
    """A rational solution x of sum x_j columns[j] = v, or None."""
    n = len(v)
    k = len(columns)
    if k == 0:
        return () if not any(v) else None
    aug = [[columns[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    red, piv = row_reduce(aug)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for row, c in zip(red, piv):
        x[c] = row[k]
    return tuple(x)


def kernel(rows, ncols: int) -> list[tuple]:
    """Rational basis of the null space of the matrix with the given rows."""
    red, piv = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))
