"""Small exact integer linear algebra: column Hermite form, kernels, saturation."""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[int]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_hnf(a: Matrix) -> tuple[Matrix, Matrix, list[int]]:
    """H = A*U in column echelon Hermite form with U unimodular.

    Returns (H, U, pivot_rows).  Columns past len(pivot_rows) of H are zero,
    so the matching columns of U span the integer kernel of A.
    """
    m = len(a)
    c = len(a[0]) if m else 0
    h = [row[:] for row in a]
    u = [[int(i == j) for j in range(c)] for i in range(c)]

    def colop(j1: int, j2: int, p: int, q: int, r: int, s: int) -> None:
        # (col j1, col j2) <- (p*c1 + q*c2, r*c1 + s*c2)
        for mat in (h, u):
            for row in mat:
                x, y = row[j1], row[j2]
                row[j1], row[j2] = p * x + q * y, r * x + s * y

    pivots: list[int] = []
    col = 0
    for i in range(m):
        if col >= c:
            break
        for j in range(col + 1, c):
            if h[i][j]:
                x, y = h[i][col], h[i][j]
                g, s, t = _xgcd(x, y)
                # [x y] * [[s, -y/g], [t, x/g]] = [g, 0]
                colop(col, j, s, t, -y // g, x // g)
        if h[i][col] == 0:
            continue
        if h[i][col] < 0:
            for mat in (h, u):
                for row in mat:
                    row[col] = -row[col]
        piv = h[i][col]
        for j in range(col):
            q = h[i][j] // piv
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[col]
        pivots.append(i)
        col += 1
    return h, u, pivots


def integer_kernel(a: Matrix, ncols: int) -> Matrix:
    """Basis (as columns, m = ncols rows) of {x in Z^ncols : A x = 0}."""
    if not a:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    _, u, piv = column_hnf(a)
    r = len(piv)
    return [row[r:] for row in u]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def saturate_columns(b: Matrix, m: int) -> Matrix:
    """Basis (columns) of span_Q(cols of b) intersected with Z^m."""
    if not b or not b[0]:
        return [[] for _ in range(m)]
    bt = transpose(b)
    left = integer_kernel(bt, m)  # m x k, columns y with y^T b = 0
    if not left or not left[0]:
        return [[int(i == j) for j in range(m)] for i in range(m)]
    return integer_kernel(transpose(left), m)


def solve_lower(h: Matrix, pivots: list[int], rhs: list[Fraction]) -> list[Fraction]:
    """p with (H p)[pivots] = rhs[pivots], H in column echelon form."""
    r = len(pivots)
    p = [Fraction(0)] * r
    for j, i in enumerate(pivots):
        acc = rhs[i] - sum(h[i][t] * p[t] for t in range(j))
        p[j] = acc / h[i][j]
    return p
