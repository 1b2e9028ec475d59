"""Exact dense linear algebra over Z and Q.

Matrices are plain lists of row lists holding Python ``int`` (arbitrary
precision) or ``fractions.Fraction`` entries.  No function here mutates its
arguments and nothing is ever converted to floating point.

Canonical Hermite form used throughout (row style):

* nonzero rows first, zero rows last;
* the pivot (leading nonzero entry) of each row is positive and lies strictly
  to the right of the pivot of the row above;
* entries above a pivot lie in ``[0, pivot)``.

With this convention ``[[2, 4], [1, 3]]`` reduces to ``[[1, 1], [0, 2]]``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


class SnfResult(NamedTuple):
    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.v)))]


class HnfResult(NamedTuple):
    h: IntMatrix
    u: IntMatrix


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def copy_matrix(m) -> list[list]:
    return [list(row) for row in m]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m, cols: int | None = None) -> list[list]:
    """Transpose; ``cols`` gives the column count for matrices with no rows."""
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a, b) -> list[list]:
    inner = len(b)
    bt = transpose(b)
    if not bt:
        return [[] for _ in a]
    if inner == 0:
        return [[0] * len(bt) for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(m, v) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def to_fraction_matrix(m) -> RatMatrix:
    return [[Fraction(x) for x in row] for row in m]


def as_int_matrix(m) -> IntMatrix:
    """Convert a matrix of ints or integral Fractions; raise on fractional entries."""
    out = []
    for row in m:
        new = []
        for x in row:
            if type(x) is int:
                new.append(x)
                continue
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"entry {x} is not an integer")
            new.append(int(x))
        out.append(new)
    return out


def det(m) -> int | Fraction:
    """Signed determinant by fraction-free (Bareiss) elimination.

    Integer input gives an ``int``; rational input is scaled to integers first.
    """
    rows, cols = shape(m)
    if rows != cols:
        raise ValueError(f"determinant of a non-square {rows}x{cols} matrix")
    if rows == 0:
        return 1
    denom = lcm(*(x.denominator for row in m for x in row if isinstance(x, Fraction)))
    if denom == 1:
        a = [[int(x) for x in row] for row in m]
    else:
        a = [[int(x * denom) for x in row] for row in m]
    n = rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    result = sign * a[n - 1][n - 1]
    if denom == 1:
        return result
    return Fraction(result, denom**n)


def smith_normal_form(m) -> SnfResult:
    """Return unimodular ``u``, ``v`` and diagonal ``d`` with ``u @ m @ v == d``.

    The diagonal is nonnegative, each nonzero entry divides the next, and zero
    entries trail.  Pivots are chosen as the entry of least absolute value in
    row-major scan order, which makes the transforms deterministic.
    """
    rows, cols = shape(m)
    a = as_int_matrix(m) if rows else []
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return _finish_snf(a, u, v)
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, rows)) or any(
                a[t][j] for j in range(t + 1, cols)
            ):
                continue
            offender = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if a[i][j] % p
                ),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return _finish_snf(a, u, v)


def _finish_snf(a, u, v) -> SnfResult:
    for t in range(min(len(a), len(v))):
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SnfResult(u, a, v)


def hermite_normal_form(m) -> HnfResult:
    """Row-style Hermite form ``h`` with unimodular ``u`` such that ``u @ m == h``."""
    rows, cols = shape(m)
    h = as_int_matrix(m) if rows else []
    u = identity(rows)
    r = 0
    for j in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if h[i][j]]
            if not nz:
                break
            pi = min(nz, key=lambda i: (abs(h[i][j]), i))
            if pi != r:
                h[r], h[pi] = h[pi], h[r]
                u[r], u[pi] = u[pi], u[r]
            p = h[r][j]
            done = True
            for i in range(r + 1, rows):
                if h[i][j]:
                    q = h[i][j] // p
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][j]:
                        done = False
            if done:
                break
        if r < rows and h[r][j]:
            if h[r][j] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            p = h[r][j]
            for i in range(r):
                q = h[i][j] // p
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return HnfResult(h, u)


def hnf_rows(m) -> IntMatrix:
    """Nonzero rows of the Hermite form: the canonical basis of the row lattice."""
    return [row for row in hermite_normal_form(m).h if any(row)]


def kernel_basis_z(m, cols: int | None = None) -> IntMatrix:
    """Saturated basis of ``{x in Z^cols : m @ x == 0}``, one vector per row.

    The basis is returned in canonical Hermite form.  ``cols`` is only needed
    when ``m`` has no rows.
    """
    rows, ncols = shape(m)
    if rows == 0:
        return identity(cols or 0)
    # u @ m^T = h; rows of u facing zero rows of h span the kernel, and since
    # u is unimodular they extend to a basis of Z^cols (saturation).
    h, u = hermite_normal_form(transpose(m))
    kernel = [u[i] for i in range(ncols) if not any(h[i])]
    if not kernel:
        return []
    return hnf_rows(kernel)


def rank(m) -> int:
    return len(hnf_rows(m)) if m else 0


def solve_rational(a, b) -> list[Fraction]:
    """Solve ``x @ a == b`` for a rational row vector ``x`` (``a`` of full row rank)."""
    # Gauss-Jordan on the transposed system a^T x^T = b^T.
    at = to_fraction_matrix(transpose(a))
    n_eq, n_var = shape(at)
    aug = [row + [Fraction(bi)] for row, bi in zip(at, b)]
    pivots = []
    r = 0
    for j in range(n_var):
        pi = next((i for i in range(r, n_eq) if aug[i][j] != 0), None)
        if pi is None:
            continue
        aug[r], aug[pi] = aug[pi], aug[r]
        p = aug[r][j]
        aug[r] = [x / p for x in aug[r]]
        for i in range(n_eq):
            if i != r and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(j)
        r += 1
    if any(row[-1] != 0 for row in aug[r:]):
        raise ValueError("vector is not in the row span")
    x = [Fraction(0)] * n_var
    for i, j in enumerate(pivots):
        x[j] = aug[i][-1]
    return x


def inverse_rational(m) -> RatMatrix:
    """Exact inverse of a nonsingular square matrix."""
    n, cols = shape(m)
    if n != cols:
        raise ValueError("inverse of a non-square matrix")
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(m)
    ]
    for j in range(n):
        pi = next((i for i in range(j, n) if aug[i][j] != 0), None)
        if pi is None:
            raise ZeroDivisionError("matrix is singular")
        aug[j], aug[pi] = aug[pi], aug[j]
        p = aug[j][j]
        aug[j] = [x / p for x in aug[j]]
        for i in range(n):
            if i != j and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[j])]
    return [row[n:] for row in aug]
