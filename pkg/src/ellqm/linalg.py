"""Small dense linear algebra over the rationals (lists of lists of Fraction)."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["SingularMatrixError", "solve", "rref", "nullspace", "charpoly", "matmul", "matpow", "identity"]


class SingularMatrixError(ValueError):
    pass


def _copy(A):
    return [[Fraction(x) for x in row] for row in A]


def rref(A):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    R = _copy(A)
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def solve(A, b):
    """Solve ``A x = b`` for square nonsingular ``A``."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("solve expects a square matrix")
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [R[i][n] for i in range(n)]


def nullspace(A):
    """A basis of ``{x : A x = 0}`` as a list of vectors."""
    cols = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matpow(A, k):
    """``A**k`` by repeated squaring; entries keep their input type."""
    n = len(A)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = [list(row) for row in A]
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def charpoly(A):
    """Coefficients ``[c_0, ..., c_n]`` of ``det(x I - A)``, lowest degree first.

    Faddeev-LeVerrier; exact because every division is by a nonzero integer.
    """
    n = len(A)
    A = _copy(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        M = matmul(A, M)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            M[i][i] += c_prev
        AM = matmul(A, M)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return coeffs
