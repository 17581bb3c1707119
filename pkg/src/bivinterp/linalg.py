"""Exact dense linear algebra over the rationals and over polynomial rings.

Rational matrices are lists of rows of Fractions.  Elimination runs on
integer matrices (rows scaled by the lcm of their denominators) with the
fraction-free Gauss-Jordan update, where every division by the previous
pivot is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .arith import Poly, exact_div


class SingularMatrixError(ArithmeticError):
    pass


def _integer_rows(rows):
    out = []
    for row in rows:
        den = math.lcm(*(Fraction(v).denominator for v in row)) if row else 1
        out.append([int(Fraction(v) * den) for v in row])
    return out


def _ff_gauss_jordan(A: list[list[int]], ncols: int):
    """In-place fraction-free Gauss-Jordan on an integer matrix.

    Returns the pivot columns.  Afterwards row ``i`` (for ``i`` below the
    rank) has its pivot in ``pivots[i]`` and zeros in every other pivot
    column; all pivots share the same value.
    """
    m = len(A)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        prow = A[r]
        p = prow[c]
        for i in range(m):
            if i == r:
                continue
            row = A[i]
            a = row[c]
            if a:
                A[i] = [(p * x - a * y) // prev for x, y in zip(row, prow)]
            elif prev != p:
                A[i] = [(p * x) // prev for x in row]
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    A = _integer_rows(rows)
    pivots = _ff_gauss_jordan(A, ncols)
    R = []
    for i, c in enumerate(pivots):
        p = A[i][c]
        R.append([Fraction(v, p) for v in A[i]])
    return R, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    A = _integer_rows(rows)
    return len(_ff_gauss_jordan(A, len(A[0])))


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    A = []
    for row in rows:
        den = math.lcm(*(Fraction(v).denominator for v in row))
        scale /= den
        A.append([int(Fraction(v) * den) for v in row])
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        for i in range(k + 1, n):
            a = A[i][k]
            A[i] = [(p * x - a * y) // prev for x, y in zip(A[i], A[k])]
        prev = p
    return sign * A[n - 1][n - 1] * scale


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : rows @ v = 0}`` in reduced row echelon form."""
    if not rows:
        R, pivots = [], []
    else:
        R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(v)
    if not basis:
        return []
    B, _ = rref(basis, ncols)
    return B


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``A x = b`` (free variables zero) or ``None``."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][ncols]
    return x


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise SingularMatrixError(f"matrix is singular (rank {len(pivots)} < {n})")
    return [row[n:] for row in R]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def solve_left(X, Y) -> list[list[Fraction]] | None:
    """Find ``C`` with ``C @ Y == X`` (rows of ``X`` in the row space of ``Y``)."""
    Yt = transpose(Y)
    C = []
    for row in X:
        c = solve(Yt, row)
        if c is None:
            return None
        C.append(c)
    return C


# ---------------------------------------------------------------------------
# polynomial matrices


def poly_det(M: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix (Bareiss elimination)."""
    n = len(M)
    if n == 0:
        return Poly.const(1)
    A = [list(r) for r in M]
    sign = 1
    prev = Poly.const(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return Poly()
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        for i in range(k + 1, n):
            a = A[i][k]
            new = []
            for j in range(k + 1, n):
                num = p * A[i][j] - a * A[k][j]
                q = exact_div(num, prev)
                if q is None:
                    raise ArithmeticError("inexact Bareiss division")
                new.append(q)
            A[i] = [Poly()] * (k + 1) + new
        prev = p
    return A[n - 1][n - 1] * sign


def poly_rank(M: Sequence[Sequence[Poly]]) -> int:
    """Rank over the field of rational functions, by fraction-free elimination."""
    A = [list(r) for r in M]
    m = len(A)
    if m == 0:
        return 0
    ncols = len(A[0])
    prev = Poly.const(1)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            row = []
            for j in range(ncols):
                q = exact_div(p * A[i][j] - a * A[r][j], prev)
                if q is None:
                    raise ArithmeticError("inexact fraction-free division")
                row.append(q)
            A[i] = row
        prev = p
        r += 1
    return r
