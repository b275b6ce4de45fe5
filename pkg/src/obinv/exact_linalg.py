"""Exact linear algebra over Z and Q.

Matrices are plain lists of rows holding Python ints (or Fractions where
noted).  Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Matrix = list  # list[list[int]]


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class NotSymmetric(LinalgError):
    pass


class NotSquare(LinalgError):
    pass


def shape(A: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if any(len(row) != cols for row in A):
        raise DimensionMismatch("ragged matrix")
    return rows, cols


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence], cols: int | None = None) -> Matrix:
    m, n = shape(A)
    if m == 0:
        return [[] for _ in range(cols or 0)]
    return [[A[i][j] for i in range(m)] for j in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    m, k = shape(A)
    k2, n = shape(B)
    if k != k2 and not (m == 0 or n == 0):
        raise DimensionMismatch(f"cannot multiply {m}x{k} by {k2}x{n}")
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(n)] for i in range(m)]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    m, n = shape(A)
    if m and len(x) != n:
        raise DimensionMismatch(f"matrix has {n} columns, vector has {len(x)} entries")
    return [sum(A[i][j] * x[j] for j in range(n)) for i in range(m)]


def _copy(A) -> Matrix:
    return [list(row) for row in A]


# -- Smith normal form ------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular."""

    U: tuple
    D: tuple
    V: tuple

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _freeze(A) -> tuple:
    return tuple(tuple(row) for row in A)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    m, n = shape(A)
    D = _copy(A)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            # smallest non-zero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            # pivot must divide the whole trailing block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(_freeze(U), _freeze(D), _freeze(V))


def check_smith(A, snf: SmithDecomposition) -> None:
    """Raise AssertionError unless every Smith postcondition holds."""
    U, D, V = snf.U, snf.D, snf.V
    m, n = shape(A)
    assert matmul(matmul(U, A), V) == [list(r) for r in D], "U A V != D"
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0, "D not diagonal"
    diag = snf.diagonal
    assert all(d >= 0 for d in diag), "negative diagonal entry"
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0), "divisibility chain broken"
    assert abs(determinant(U)) == 1, "U not unimodular"
    assert abs(determinant(V)) == 1, "V not unimodular"


# -- solving ----------------------------------------------------------------

@dataclass(frozen=True)
class LinearSolution:
    """A particular solution and a basis of the kernel."""

    x: tuple
    kernel: tuple

    @property
    def unique(self) -> bool:
        return not self.kernel


def _check_rhs(A, b):
    m, n = shape(A)
    if len(b) != m:
        raise DimensionMismatch(f"matrix has {m} rows, right-hand side has {len(b)} entries")
    return m, n


def solve_integral(A: Sequence[Sequence[int]], b: Sequence[int], cols: int | None = None) -> Optional[LinearSolution]:
    """Integer solution of ``A x = b`` or ``None``.

    Coordinates that are free in the Smith basis are set to zero, so the
    answer is deterministic.  ``cols`` gives the column count of an empty
    matrix.
    """
    m, n = _check_rhs(A, b)
    if m == 0:
        n = cols or 0
        return LinearSolution((0,) * n, tuple(tuple(r) for r in identity(n)))
    snf = smith_normal_form(A)
    c = matvec(snf.U, b)
    diag = snf.diagonal
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d
    x = tuple(matvec(snf.V, y))
    r = snf.rank
    kernel = tuple(tuple(snf.V[i][j] for i in range(n)) for j in range(r, n))
    return LinearSolution(x, kernel)


def rref(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    M = [[Fraction(v) for v in row] for row in A]
    m, n = shape(A) if A else (0, 0)
    pivots = []
    r = 0
    for j in range(n):
        p = next((i for i in range(r, m) if M[i][j] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][j]
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][j] != 0:
                f = M[i][j]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return M, pivots


def solve_rational(A: Sequence[Sequence], b: Sequence, cols: int | None = None) -> Optional[LinearSolution]:
    """Rational solution of ``A x = b`` with free (non-pivot) coordinates zero."""
    m, n = _check_rhs(A, b)
    if m == 0:
        n = cols or 0
        return LinearSolution((Fraction(0),) * n, tuple(tuple(Fraction(v) for v in r) for r in identity(n)))
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    M, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, j in enumerate(pivots):
        x[j] = M[r][n]
    kernel = []
    for f in range(n):
        if f in pivots:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, j in enumerate(pivots):
            v[j] = -M[r][f]
        kernel.append(tuple(v))
    return LinearSolution(tuple(x), tuple(kernel))


# -- determinant and signature ----------------------------------------------

def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    m, n = shape(A)
    if m != n:
        raise NotSquare(f"determinant of a {m}x{n} matrix")
    if n == 0:
        return 1
    M = _copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def is_symmetric(S: Sequence[Sequence]) -> bool:
    m, n = shape(S)
    return m == n and all(S[i][j] == S[j][i] for i in range(n) for j in range(i + 1, n))


def signature(S: Sequence[Sequence]) -> int:
    """Positive minus negative inertia, by symmetric congruence over Q."""
    if not is_symmetric(S):
        raise NotSymmetric("signature needs a symmetric matrix")
    M = [[Fraction(v) for v in row] for row in S]
    sig = 0
    while M:
        n = len(M)
        k = next((i for i in range(n) if M[i][i] != 0), None)
        if k is not None:
            d = M[k][k]
            sig += 1 if d > 0 else -1
            rest = [i for i in range(n) if i != k]
            M = [[M[i][j] - M[i][k] * M[k][j] / d for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if M[i][j] != 0), None)
        if pair is None:
            break  # zero block: no further inertia
        # split off the hyperbolic plane [[0, c], [c, 0]], signature 0.
        i, j = pair
        c = M[i][j]
        rest = [t for t in range(n) if t not in pair]
        # inverse of [[0, c], [c, 0]] is [[0, 1/c], [1/c, 0]]
        M = [
            [M[p][q] - (M[p][i] * M[j][q] + M[p][j] * M[i][q]) / c for q in rest]
            for p in rest
        ]
    return sig
