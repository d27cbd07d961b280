"""Determinants of bounded complexes of free Z-modules.

A complex is stored as ranks and differentials d^i: A^i -> A^{i+1} (so the
matrix of d^i has rank(i+1) rows and rank(i) columns).  Cohomology is exact
via Smith normal form.  When every cohomology group is finite the graded
determinant line embeds canonically into Q and is reported as the fractional
ideal (1/m)Z with m the alternating product of the cohomology orders; the
ideal generator is normalized positive, so everything is up to sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InfiniteCohomologyError, NonChainMapError
from .intlinalg import (
    FinGenAbGroup,
    IntMatrix,
    cokernel,
    group_order,
    parity_sign,
    smith_normal_form,
)

__all__ = [
    "BoundedFreeComplex",
    "GradedLine",
    "ChainMap",
    "cohomology",
    "euler_characteristics",
    "multiplicative_euler_char",
    "determinant",
    "mapping_cone",
    "shift",
    "direct_sum",
    "complex_from_json_dict",
    "complex_to_json_dict",
]


class BoundedFreeComplex:
    """Bounded complex of finitely generated free Z-modules.

    ranks: map degree -> rank (zero ranks dropped)
    differentials: map degree i -> IntMatrix of d^i (zero maps dropped)
    """

    def __init__(self, ranks, differentials=None, check=True):
        self._ranks = {int(i): int(r) for i, r in dict(ranks).items() if r}
        if any(r < 0 for r in self._ranks.values()):
            raise ValueError("ranks must be nonnegative")
        diffs = {}
        for i, mat in dict(differentials or {}).items():
            i = int(i)
            if not isinstance(mat, IntMatrix):
                mat = IntMatrix.from_rows(mat)
            expected = (self.rank(i + 1), self.rank(i))
            if (mat.rows, mat.cols) != expected:
                raise ValueError(
                    f"differential at degree {i} has shape {(mat.rows, mat.cols)}, "
                    f"expected {expected}"
                )
            if not mat.is_zero:
                diffs[i] = mat
        self._diffs = diffs
        if check:
            for i in list(self._diffs):
                nxt = self._diffs.get(i + 1)
                if nxt is not None and not (nxt @ self._diffs[i]).is_zero:
                    raise ValueError(f"d^{i + 1} o d^{i} != 0")

    @property
    def lo(self) -> int:
        return min(self._ranks, default=0)

    @property
    def hi(self) -> int:
        return max(self._ranks, default=0)

    def degrees(self):
        return sorted(self._ranks)

    def rank(self, i: int) -> int:
        return self._ranks.get(i, 0)

    def differential(self, i: int) -> IntMatrix:
        d = self._diffs.get(i)
        if d is None:
            return IntMatrix.zero(self.rank(i + 1), self.rank(i))
        return d

    @property
    def is_zero(self) -> bool:
        return not self._ranks

    def __eq__(self, other):
        if not isinstance(other, BoundedFreeComplex):
            return NotImplemented
        return self._ranks == other._ranks and self._diffs == other._diffs

    def __repr__(self):
        if self.is_zero:
            return "BoundedFreeComplex(0)"
        return f"BoundedFreeComplex(ranks={self._ranks!r})"


@dataclass(frozen=True)
class GradedLine:
    """Graded invertible Z-module (fractional ideal, grade).

    `ideal` is the positive rational generator of det inside
    det (x) Q ~ Q, defined exactly when all cohomology is torsion;
    otherwise None ("undetermined": no canonical rational trivialization).
    """

    ideal: Fraction | None
    grade: int

    def __post_init__(self):
        if self.ideal is not None and self.ideal <= 0:
            raise ValueError("ideal generator must be normalized positive")

    def __str__(self):
        gen = "undetermined" if self.ideal is None else str(self.ideal)
        return f"(ideal {gen}, grade {self.grade})"


@dataclass(frozen=True)
class ChainMap:
    """Degreewise map f^i: A^i -> B^i between two complexes."""

    source: BoundedFreeComplex
    target: BoundedFreeComplex
    components: dict

    def component(self, i: int) -> IntMatrix:
        f = self.components.get(i)
        if f is None:
            return IntMatrix.zero(self.target.rank(i), self.source.rank(i))
        return f

    def commutes(self) -> bool:
        degrees = set(self.source.degrees()) | set(self.target.degrees())
        for i in degrees:
            lhs = self.target.differential(i) @ self.component(i)
            rhs = self.component(i + 1) @ self.source.differential(i)
            if lhs.entries != rhs.entries:
                return False
        return True


def cohomology(C: BoundedFreeComplex, i: int) -> FinGenAbGroup:
    """H^i(C) = ker d^i / im d^{i-1} in invariant-factor form."""
    n = C.rank(i)
    if n == 0:
        return FinGenAbGroup(0, ())
    out = smith_normal_form(C.differential(i))
    r = out.rank
    # x in ker d^i  <=>  the first r coordinates of V*x vanish, and the
    # remaining coordinates identify ker d^i with Z^(n-r)
    if C.rank(i - 1) == 0:
        return FinGenAbGroup(n - r, ())
    W = out.V @ C.differential(i - 1)
    rows = W.to_rows()
    for k in range(r):  # d o d = 0 lands the image inside the kernel
        assert all(x == 0 for x in rows[k]), "image not contained in kernel"
    M = W.row_slice(r, n)
    return cokernel(M)


def euler_characteristics(C: BoundedFreeComplex) -> tuple[int, int]:
    """(chi, chi') with chi = sum (-1)^i rk H^i and chi' = sum (-1)^i i rk H^i."""
    chi = 0
    chi_prime = 0
    if C.is_zero:
        return 0, 0
    for i in range(C.lo, C.hi + 1):
        r = cohomology(C, i).rank
        chi += parity_sign(i) * r
        chi_prime += parity_sign(i) * i * r
    return chi, chi_prime


def multiplicative_euler_char(C: BoundedFreeComplex) -> Fraction:
    """m = prod |H^i|^((-1)^i); requires every H^i finite."""
    m = Fraction(1)
    if C.is_zero:
        return m
    for i in range(C.lo, C.hi + 1):
        H = cohomology(C, i)
        if not H.is_finite:
            raise InfiniteCohomologyError(f"H^{i} has rank {H.rank}, so m is undefined")
        m *= Fraction(group_order(H)) ** parity_sign(i)
    return m


def determinant(C: BoundedFreeComplex) -> GradedLine:
    """Graded determinant line of C, as (fractional ideal, grade).

    The grade is sum (-1)^i rank(A^i).  The ideal (1/m)Z is reported only
    in the all-torsion case, where the embedding det c det (x) Q ~ Q is
    canonical; with free cohomology present it stays undetermined.
    """
    grade = sum(parity_sign(i) * C.rank(i) for i in C.degrees())
    try:
        m = multiplicative_euler_char(C)
    except InfiniteCohomologyError:
        return GradedLine(None, grade)
    return GradedLine(1 / m, grade)


def mapping_cone(f: ChainMap) -> BoundedFreeComplex:
    """Cone(f)^i = B^i (+) A^{i+1}, fitting in A -> B -> Cone -> A[1]."""
    if not f.commutes():
        raise NonChainMapError("components do not commute with the differentials")
    A, B = f.source, f.target
    degrees = set()
    for j in A.degrees():
        degrees.add(j - 1)
    degrees.update(B.degrees())
    ranks = {i: B.rank(i) + A.rank(i + 1) for i in degrees}
    diffs = {}
    for i in degrees:
        rows_top = B.rank(i + 1)
        rows_bot = A.rank(i + 2)
        cols_left = B.rank(i)
        cols_right = A.rank(i + 1)
        if (rows_top + rows_bot) == 0 or (cols_left + cols_right) == 0:
            continue
        dB = B.differential(i).to_rows()
        fa = f.component(i + 1).to_rows()
        dA = (-A.differential(i + 1)).to_rows()
        block = []
        for r in range(rows_top):
            left = dB[r] if cols_left else []
            right = fa[r] if cols_right else []
            block.append(left + right)
        for r in range(rows_bot):
            block.append([0] * cols_left + (dA[r] if cols_right else []))
        diffs[i] = IntMatrix.from_rows(block)
    return BoundedFreeComplex(ranks, diffs)


def shift(C: BoundedFreeComplex, k: int) -> BoundedFreeComplex:
    """C[k] with C[k]^i = C^{i+k} and differentials scaled by (-1)^k."""
    sign = parity_sign(k)
    ranks = {j - k: C.rank(j) for j in C.degrees()}
    diffs = {}
    for j in C.degrees():
        d = C.differential(j)
        if not d.is_zero:
            diffs[j - k] = IntMatrix(d.rows, d.cols, tuple(sign * x for x in d.entries))
    return BoundedFreeComplex(ranks, diffs, check=False)


def direct_sum(A: BoundedFreeComplex, B: BoundedFreeComplex) -> BoundedFreeComplex:
    degrees = set(A.degrees()) | set(B.degrees())
    ranks = {i: A.rank(i) + B.rank(i) for i in degrees}
    diffs = {}
    for i in degrees:
        rows = A.rank(i + 1) + B.rank(i + 1)
        cols = A.rank(i) + B.rank(i)
        if rows == 0 or cols == 0:
            continue
        dA, dB = A.differential(i), B.differential(i)
        if dA.is_zero and dB.is_zero:
            continue
        block = []
        for r in range(dA.rows):
            block.append(dA.to_rows()[r] + [0] * dB.cols)
        for r in range(dB.rows):
            block.append([0] * dA.cols + dB.to_rows()[r])
        diffs[i] = IntMatrix.from_rows(block)
    return BoundedFreeComplex(ranks, diffs, check=False)


def two_term(k: int, lower_degree: int = -1) -> BoundedFreeComplex:
    """[Z --k--> Z] in degrees (lower_degree, lower_degree + 1)."""
    return BoundedFreeComplex(
        {lower_degree: 1, lower_degree + 1: 1},
        {lower_degree: IntMatrix.from_rows([[k]])},
    )


def complex_from_json_dict(data) -> BoundedFreeComplex:
    """Parse the on-disk complex format.

    {"ranks": {"-1": 1, "0": 1}, "differentials": {"-1": [[5]]}}
    Keys are degrees as decimal strings; the differential at key i maps
    degree i to i+1; absent degrees have rank 0.
    """
    if not isinstance(data, dict) or "ranks" not in data:
        raise ValueError('complex file must be an object with a "ranks" field')
    ranks = {int(k): int(v) for k, v in data["ranks"].items()}
    diffs = {int(k): IntMatrix.from_rows(v) for k, v in data.get("differentials", {}).items()}
    return BoundedFreeComplex(ranks, diffs)


def complex_to_json_dict(C: BoundedFreeComplex) -> dict:
    return {
        "ranks": {str(i): C.rank(i) for i in C.degrees()},
        "differentials": {
            str(i): C.differential(i).to_rows()
            for i in C.degrees()
            if not C.differential(i).is_zero
        },
    }
