"""Dense exact linear algebra over Fraction.

Matrices are lists of rows.  A ``rows x cols`` matrix with zero rows is stored
as ``[]`` and carries its column count separately where it matters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def to_fraction(m: Sequence[Sequence]) -> Matrix:
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in m]


def shape(m: Matrix, cols: int | None = None) -> tuple[int, int]:
    if m:
        return len(m), len(m[0])
    return 0, cols or 0


def matmul(a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """a (r x k) times b (k x c).  ``cols`` is needed when b has no rows."""
    r = len(a)
    k = len(b) if b else (inner or 0)
    c = len(b[0]) if b else (cols or 0)
    out = zeros(r, c)
    if not k:
        return out
    bt = list(zip(*b)) if c else []
    for i in range(r):
        ai = a[i]
        nz = [(p, x) for p, x in enumerate(ai) if x]
        if not nz:
            continue
        row = out[i]
        for j in range(c):
            col = bt[j]
            s = 0
            for p, x in nz:
                y = col[p]
                if y:
                    s += x * y
            row[j] = Fraction(s)
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def transpose(a: Matrix, cols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (exact)."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / Fraction(piv)
            m[r] = [x * inv for x in m[r]]
        pr = m[r]
        nzc = [j for j in range(c, cols) if pr[j]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                mi = m[i]
                for j in nzc:
                    mi[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1]) if a else 0


def nullspace(a: Matrix, cols: int | None = None) -> list[list[Fraction]]:
    """Basis (list of vectors) of {x : a x = 0}."""
    n = len(a[0]) if a else (cols or 0)
    if not a:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, piv = rref(a)
    free = [j for j in range(n) if j not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(r, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def column_space(a: Matrix) -> list[list[Fraction]]:
    """Pivot columns of ``a`` (a basis of the image)."""
    if not a:
        return []
    _, piv = rref(a)
    return [[row[j] for row in a] for j in piv]


def det(a: Matrix) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in a]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        piv = Fraction(m[c][c])
        d *= piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / piv
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return d


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some X with a X = b, or None.  a is r x n, b is r x c (both with r > 0)."""
    n = len(a[0])
    c = len(b[0]) if b else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    r, piv = rref(aug)
    if any(p >= n for p in piv):
        return None
    x = zeros(n, c)
    for row, p in zip(r, piv):
        x[p] = row[n:]
    return x


def columns_to_matrix(cols: list[list], nrows: int) -> Matrix:
    """Matrix whose columns are the given vectors."""
    return [[col[i] for col in cols] for i in range(nrows)]
