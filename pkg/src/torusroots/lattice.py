"""Exact integer linear algebra.

Everything here works on Python ints, so intermediate values never overflow.
Matrices are small (desk scale), so the algorithms favour clarity over
asymptotic speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

Vector = Tuple[int, ...]


class IntegerMatrix:
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: Optional[int] = None):
        data = tuple(tuple(_as_int(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("cannot infer column count of an empty matrix")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged rows: expected %d columns, got %d" % (ncols, len(row)))
        self._rows = data
        self._ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls((((1 if i == j else 0) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls(((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self._rows), self._ncols)

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix((self.column(j) for j in range(self._ncols)), self.nrows)

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
            cols = [other.column(j) for j in range(other.ncols)]
            return IntegerMatrix(((dot(r, c) for c in cols) for r in self._rows), other.ncols)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch %s @ vector of length %d" % (self.shape, len(vec)))
        return tuple(dot(r, vec) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        return "IntegerMatrix(%r)" % (self.tolist(),)


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        # numpy integers and the like are accepted, floats are not
        if hasattr(x, "__index__") and not isinstance(x, bool):
            return int(x.__index__())
        raise TypeError("matrix entries must be integers, got %r" % (x,))
    return x


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hermite_normal_form(M: IntegerMatrix) -> Tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. Pivots of ``H``
    are positive, each lies strictly right of the pivot in the row above, and
    entries above a pivot are reduced into ``[0, pivot)``. Zero rows come last.
    """
    m, n = M.shape
    H = M.tolist()
    U = IntegerMatrix.identity(m).tolist()
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            g, s, t = xgcd(a, b)
            # [[s, t], [-b/g, a/g]] has determinant 1
            p, q = -b // g, a // g
            for rows in (H, U):
                top, bot = rows[r], rows[i]
                rows[r] = [s * x + t * y for x, y in zip(top, bot)]
                rows[i] = [p * x + q * y for x, y in zip(top, bot)]
        pivot = H[r][c]
        if pivot == 0:
            continue
        if pivot < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            pivot = -pivot
        for k in range(r):
            f = H[k][c] // pivot
            if f:
                H[k] = [x - f * y for x, y in zip(H[k], H[r])]
                U[k] = [x - f * y for x, y in zip(U[k], U[r])]
        r += 1
    return IntegerMatrix(H, n), IntegerMatrix(U, m)


def rank(M: IntegerMatrix) -> int:
    """Rank over the rationals (number of nonzero HNF rows)."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    H, _ = hermite_normal_form(M)
    return sum(1 for row in H if any(row))


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n, ncols = M.shape
    if n != ncols:
        raise ValueError("determinant of a non-square %dx%d matrix" % (n, ncols))
    if n == 0:
        return 1
    A = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def adjugate(M: IntegerMatrix) -> IntegerMatrix:
    """Classical adjoint, so that ``M @ adj(M) == det(M) * I``."""
    n, ncols = M.shape
    if n != ncols:
        raise ValueError("adjugate of a non-square matrix")
    if n == 1:
        return IntegerMatrix([[1]])
    rows = M.tolist()
    cof = []
    for i in range(n):
        cof_row = []
        for j in range(n):
            minor = IntegerMatrix([r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i], n - 1)
            cof_row.append((-1) ** (i + j) * determinant(minor))
        cof.append(cof_row)
    return IntegerMatrix(cof, n).transpose()


@dataclass(frozen=True)
class DiophantineSolution:
    """One integer solution of ``A x = b`` plus an HNF basis of ker(A)."""

    particular: Vector
    kernel: Tuple[Vector, ...]


class IntegerSystem:
    """Integer linear system ``A x = b`` with the column echelon form of ``A`` cached.

    Factoring once lets many right-hand sides share the same reduction, which
    is how the root enumeration uses it.
    """

    def __init__(self, A: IntegerMatrix):
        self.A = A
        m, n = A.shape
        # U @ A^T = H  <=>  A @ U^T = H^T, a column echelon form of A
        H, U = hermite_normal_form(A.transpose())
        self._H = H
        self._U = U
        self._pivots = []
        for row in H:
            p = next((j for j, x in enumerate(row) if x), None)
            if p is None:
                break
            self._pivots.append(p)
        r = len(self._pivots)
        kernel_rows = [U.row(k) for k in range(r, n)]
        if kernel_rows:
            KH, _ = hermite_normal_form(IntegerMatrix(kernel_rows, n))
            self.kernel = tuple(row for row in KH if any(row))
        else:
            self.kernel = ()

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def solve(self, b: Sequence[int]) -> Optional[DiophantineSolution]:
        m, n = self.A.shape
        b = tuple(_as_int(x) for x in b)
        if len(b) != m:
            raise ValueError("right-hand side has length %d, expected %d" % (len(b), m))
        residual = list(b)
        x = [0] * n
        for k, p in enumerate(self._pivots):
            h = self._H.row(k)
            y, rem = divmod(residual[p], h[p])
            if rem:
                return None
            if y:
                residual = [u - y * v for u, v in zip(residual, h)]
                x = [u + y * v for u, v in zip(x, self._U.row(k))]
        if any(residual):
            return None
        x = _reduce_against(x, self.kernel)
        return DiophantineSolution(tuple(x), self.kernel)


def _reduce_against(x: list, basis: Sequence[Vector]) -> list:
    # basis is in HNF: reduce x at each pivot into [0, pivot)
    for row in basis:
        p = next(j for j, v in enumerate(row) if v)
        f = x[p] // row[p]
        if f:
            x = [u - f * v for u, v in zip(x, row)]
    return x


def solve_diophantine(A: IntegerMatrix, b: Sequence[int]) -> Optional[DiophantineSolution]:
    """Solve ``A x = b`` over the integers, or return None when no solution exists."""
    return IntegerSystem(A).solve(b)
