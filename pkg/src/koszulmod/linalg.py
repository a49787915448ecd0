"""Dense exact linear algebra over the rationals (row reduction, rank, kernels)."""

from __future__ import annotations

from typing import Sequence

from .polycore import ONE, ZERO, rational


def to_matrix(rows) -> list[list]:
    return [[rational(x) for x in row] for row in rows]


def zeros(nrows: int, ncols: int) -> list[list]:
    return [[ZERO] * ncols for _ in range(nrows)]


def identity(n: int) -> list[list]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None) -> list[list]:
    if not a:
        return []
    ncols = len(b[0]) if b else 0
    out = zeros(len(a), ncols)
    for i, row in enumerate(a):
        target = out[i]
        for k, aik in enumerate(row):
            if aik:
                for j, bkj in enumerate(b[k]):
                    if bkj:
                        target[j] += aik * bkj
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def rref(m: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns; pivots are taken left to right."""
    rows = [list(r) for r in m]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = ONE / rows[r][c]
        pivot_row = [x * inv for x in rows[r]]
        rows[r] = pivot_row
        nz = [j for j in range(c, ncols) if pivot_row[j]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                row_i = rows[i]
                for j in nz:
                    row_i[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {v : m v = 0}, one vector per free column, in free-column order."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        basis = []
        for j in range(ncols):
            v = [ZERO] * ncols
            v[j] = ONE
            basis.append(v)
        return basis
    red, pivots = rref(m)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def row_space_basis(vectors: Sequence[Sequence]) -> list[list]:
    if not vectors:
        return []
    return rref(vectors)[0]


def solve(m: Sequence[Sequence], b: Sequence) -> list | None:
    """One solution of m x = b, or None."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    aug = [list(m[i]) + [rational(b[i])] for i in range(nrows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def reduce_vector(v: Sequence, echelon: Sequence[Sequence], pivots: Sequence[int]) -> list:
    """Reduce v against rows of a reduced echelon form."""
    out = list(v)
    for row, p in zip(echelon, pivots):
        f = out[p]
        if f:
            for j, x in enumerate(row):
                if x:
                    out[j] -= f * x
    return out
