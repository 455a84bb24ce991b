"""Exact integer and rational dense matrices.

Everything here is exact: IntMatrix holds arbitrary-precision Python
ints, RatMatrix holds fractions.Fraction in lowest terms. No floating
point is used anywhere in the package. Matrices are immutable after
construction and safe to share between threads.

Sizes stay small (intersection matrices of resolution graphs, rarely
beyond 20x20), so the algorithms favour exactness and determinism over
asymptotics: Bareiss elimination for determinants, elementary
row/column reduction with smallest-pivot selection for Smith normal
form, plain fraction Gaussian elimination for inverses and solves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SingularMatrixError

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "SnfResult",
    "determinant",
    "smith_normal_form",
    "invert_rational",
    "is_negative_definite",
    "solve_rational",
]


class _Matrix:
    __slots__ = ("entries",)

    def __init__(self, entries, cast):
        rows = tuple(tuple(cast(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.entries = rows

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return type(self) is type(other) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return "%s[%s]" % (type(self).__name__, body)

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def to_lists(self):
        return [list(row) for row in self.entries]


class IntMatrix(_Matrix):
    """Immutable dense matrix of arbitrary-precision integers."""

    def __init__(self, entries):
        super().__init__(entries, self._cast)

    @staticmethod
    def _cast(x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError("non-integer entry %s" % x)
            return int(x)
        if not isinstance(x, int) or isinstance(x, bool):
            raise ValueError("non-integer entry %r" % (x,))
        return x

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def transpose(self):
        return IntMatrix(list(zip(*self.entries)))

    def is_symmetric(self):
        return self.is_square and self.entries == tuple(zip(*self.entries))

    def is_diagonal(self):
        return all(
            x == 0
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
            if i != j
        )

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.entries))
            return IntMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in cols]
                 for row in self.entries]
            )
        return NotImplemented

    def mul_vector(self, v):
        """Matrix times column vector, exact."""
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def to_rational(self):
        return RatMatrix(self.entries)


class RatMatrix(_Matrix):
    """Immutable dense matrix of exact rationals (lowest terms)."""

    def __init__(self, entries):
        super().__init__(entries, self._cast)

    @staticmethod
    def _cast(x):
        if isinstance(x, float):
            raise ValueError("floating point entry %r rejected" % x)
        return Fraction(x)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __matmul__(self, other):
        if isinstance(other, (RatMatrix, IntMatrix)):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.entries))
            return RatMatrix(
                [[sum((Fraction(a) * b for a, b in zip(row, col)), Fraction(0))
                  for col in cols]
                 for row in self.entries]
            )
        return NotImplemented

    def is_integral(self):
        return all(x.denominator == 1 for row in self.entries for x in row)

    def to_int(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix([[int(x) for x in row] for row in self.entries])

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(
            sum((a * Fraction(b) for a, b in zip(row, v)), Fraction(0))
            for row in self.entries
        )


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form U @ m @ V = D.

    U, V are unimodular; D is diagonal with nonnegative entries, each
    dividing the next, zeros (if any) last.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self):
        return tuple(
            self.d[i, i] for i in range(min(self.d.rows, self.d.cols))
        )

    @property
    def invariant_factors(self):
        """The nonzero diagonal entries, in divisibility order."""
        return tuple(x for x in self.diagonal if x != 0)


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise ValueError("determinant requires a square matrix")
    a = m.to_lists()
    n = m.rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division: Bareiss guarantees divisibility by prev
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Smith normal form with transforms, U @ m @ V = D.

    Pivot selection: smallest nonzero absolute value in the remaining
    block, ties broken by lowest (row, col) index, so outputs are
    deterministic. The returned result is verified by multiplication
    before it leaves this function.
    """
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).to_lists()
    v = IntMatrix.identity(nc).to_lists()

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nr, nc):
        pos = find_pivot(t)
        if pos is None:
            break
        while True:
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            if a[t][t] < 0:
                negate_row(t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t] != 0:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j] != 0:
                        dirty = True
            if dirty:
                pos = find_pivot(t)
                continue
            # enforce the divisibility chain: fold any bad entry into row t
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                 if a[i][j] % p != 0),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
            pos = find_pivot(t)
        t += 1

    d = [[a[i][j] if i == j else 0 for j in range(nc)] for i in range(nr)]
    result = SnfResult(IntMatrix(u), IntMatrix(d), IntMatrix(v))
    _check_snf(m, result)
    return result


def _check_snf(m, result):
    if (result.u @ m @ result.v).entries != result.d.entries:
        raise AssertionError("SNF verification failed: U*M*V != D")
    if abs(determinant(result.u)) != 1 or abs(determinant(result.v)) != 1:
        raise AssertionError("SNF transform not unimodular")
    diag = result.diagonal
    for x, y in zip(diag, diag[1:]):
        if x == 0 and y != 0:
            raise AssertionError("zero invariant factor before a nonzero one")
        if x != 0 and y % x != 0:
            raise AssertionError("divisibility chain broken")
    if any(x < 0 for x in diag):
        raise AssertionError("negative diagonal in SNF")


def invert_rational(m: IntMatrix) -> RatMatrix:
    """Exact inverse of a nonsingular integer matrix."""
    if not m.is_square:
        raise ValueError("inverse requires a square matrix")
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[pivot] = a[pivot], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                c = a[i][k]
                a[i] = [x - c * y for x, y in zip(a[i], a[k])]
    inv = RatMatrix([row[n:] for row in a])
    if (inv @ m) != RatMatrix.identity(n):
        raise AssertionError("inverse verification failed")
    return inv


def is_negative_definite(m: IntMatrix) -> bool:
    """Leading-principal-minor test: (-1)^k * minor_k > 0 for all k."""
    if not m.is_square:
        raise ValueError("definiteness requires a square matrix")
    if not m.is_symmetric():
        raise ValueError("definiteness requires a symmetric matrix")
    for k in range(1, m.rows + 1):
        minor = determinant(IntMatrix([row[:k] for row in m.entries[:k]]))
        if (-1) ** k * minor <= 0:
            return False
    return True


def solve_rational(m: IntMatrix, b) -> tuple:
    """Exact solution x of m @ x = b for nonsingular square m."""
    if not m.is_square:
        raise ValueError("solve requires a square matrix")
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(b[i])]
         for i, row in enumerate(m.entries)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[pivot] = a[pivot], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                c = a[i][k]
                a[i] = [x - c * y for x, y in zip(a[i], a[k])]
    x = tuple(a[i][n] for i in range(n))
    if m.to_rational().mul_vector(x) != tuple(Fraction(c) for c in b):
        raise AssertionError("solve verification failed")
    return x
