"""Exact linear algebra over the integers.

Arbitrary-precision matrices, Smith normal form with unimodular transforms,
finitely generated abelian groups in invariant-factor form, and p-adic
valuations of rationals.  Everything here is pure and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import InfiniteGroupError, NotPrimePowerError

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "FinGenAbGroup",
    "smith_normal_form",
    "cokernel",
    "group_order",
    "rational_valuation",
    "is_prime",
    "prime_power_base",
    "parity_sign",
]


def parity_sign(i: int) -> int:
    """(-1)**i as an exact int, safe for negative i."""
    return -1 if i % 2 else 1


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major entries.

    Empty shapes (0 rows and/or 0 columns) are legal and represent maps
    to or from the zero module, so complexes never need special-casing.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, data) -> IntMatrix:
        data = [list(row) for row in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        return cls(rows, cols, tuple(int(x) for row in data for x in row))

    @classmethod
    def zero(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag) -> IntMatrix:
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            m[i][i] = int(d)
        return cls.from_rows(m) if rows else cls(rows, cols, ())

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            out.append(
                [sum(ai[k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            )
        if not out:
            return IntMatrix(self.rows, other.cols, ())
        return IntMatrix.from_rows(out) if other.cols else IntMatrix(self.rows, 0, ())

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def row_slice(self, start: int, stop: int) -> IntMatrix:
        rows = self.to_rows()[start:stop]
        n = max(0, min(stop, self.rows) - start)
        if n == 0 or self.cols == 0:
            return IntMatrix(n, self.cols, ())
        return IntMatrix.from_rows(rows)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.to_rows()) + "]"


@dataclass(frozen=True)
class SmithDecomposition:
    """A = U * S * V with U, V unimodular and S in Smith normal form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.S.rows, self.S.cols)
        return tuple(self.S[i, i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class FinGenAbGroup:
    """Z^rank plus the invariant-factor chain t_1 | t_2 | ... (each >= 2)."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Diagonalize A over Z: returns (U, S, V) with A = U*S*V exactly.

    U and V are unimodular; the nonzero diagonal of S is positive and each
    entry divides the next.  Pivoting always picks a smallest nonzero entry
    of the remaining block, which keeps coefficient growth moderate.
    """
    rows, cols = A.rows, A.cols
    S = A.to_rows()
    U = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    V = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    # Each elementary operation applied to S is compensated on U or V so
    # that U*S*V = A stays true throughout.
    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        for r in range(rows):
            U[r][i], U[r][j] = U[r][j], U[r][i]

    def row_negate(i):
        S[i] = [-x for x in S[i]]
        for r in range(rows):
            U[r][i] = -U[r][i]

    def row_addmul(i, j, k):
        # S: R_i += k*R_j ; U: C_j -= k*C_i
        S[i] = [a + k * b for a, b in zip(S[i], S[j])]
        for r in range(rows):
            U[r][j] -= k * U[r][i]

    def col_swap(i, j):
        for r in range(rows):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        V[i], V[j] = V[j], V[i]

    def col_addmul(j, i, k):
        # S: C_j += k*C_i ; V: R_i -= k*R_j
        for r in range(rows):
            S[r][j] += k * S[r][i]
        V[i] = [a - k * b for a, b in zip(V[i], V[j])]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = S[i][j]
                if x != 0 and (piv is None or abs(x) < abs(S[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        if S[t][t] < 0:
            row_negate(t)

        while True:
            for i in range(t + 1, rows):
                q = S[i][t] // S[t][t]
                if q:
                    row_addmul(i, t, -q)
            rem = [i for i in range(t + 1, rows) if S[i][t] != 0]
            if rem:
                i = min(rem, key=lambda r: abs(S[r][t]))
                row_swap(t, i)
                if S[t][t] < 0:
                    row_negate(t)
                continue
            for j in range(t + 1, cols):
                q = S[t][j] // S[t][t]
                if q:
                    col_addmul(j, t, -q)
            rem = [j for j in range(t + 1, cols) if S[t][j] != 0]
            if rem:
                j = min(rem, key=lambda c: abs(S[t][c]))
                col_swap(t, j)
                if S[t][t] < 0:
                    row_negate(t)
                continue
            # pivot must divide the remaining block, otherwise fold the
            # offending row in and restart (pivot strictly shrinks)
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if S[i][j] % S[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        t += 1

    return SmithDecomposition(
        IntMatrix.from_rows(U) if rows else IntMatrix(0, 0, ()),
        IntMatrix(rows, cols, tuple(x for row in S for x in row)),
        IntMatrix.from_rows(V) if cols else IntMatrix(0, 0, ()),
    )


def cokernel(A: IntMatrix) -> FinGenAbGroup:
    """Z^rows / image(A), with A the matrix of a map Z^cols -> Z^rows."""
    snf = smith_normal_form(A)
    factors = tuple(d for d in snf.invariant_factors if d >= 2)
    return FinGenAbGroup(A.rows - snf.rank, factors)


def group_order(G: FinGenAbGroup) -> int:
    """Order of a finite group; raises for infinite groups."""
    if G.rank > 0:
        raise InfiniteGroupError(f"group {G} has positive rank {G.rank}")
    return prod(G.torsion) if G.torsion else 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power_base(q: int):
    """(p, k) with q = p**k, or None if q is not a prime power >= 2."""
    if q < 2:
        return None
    p = q
    for d in range(2, q + 1):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1 or not is_prime(p):
        return None
    return p, k


def ensure_prime_power(q: int) -> int:
    if prime_power_base(q) is None:
        raise NotPrimePowerError(f"{q} is not a prime power")
    return q


def rational_valuation(x, p: int) -> int:
    """p-adic valuation v_p(x) of a nonzero rational x."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    num = abs(x.numerator)
    while num % p == 0:
        num //= p
        v += 1
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v
