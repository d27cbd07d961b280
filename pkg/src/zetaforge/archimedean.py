"""Archimedean bookkeeping: equivariant Betti dimensions and Gamma factors.

The conjectural vanishing order of zeta(X, s) at s = n < 0 is the Euler
characteristic of compactly supported cohomology of X(C) fixed by complex
conjugation with R(n) = (2 pi i)^n R coefficients.  The dimensions depend
on n only through its parity, so expressions carry a parity-indexed table.

For proper smooth X_C the same dimensions fall out of Hodge theory:

    dim H^i(X(C), R(n))^{G_R}
        = sum_{p = i/2} h^{p, (-1)^(n-p)} + sum_{p+q = i, p < q} h^{p,q},

and the identical count arises as the pole census of the archimedean
Gamma factors Gamma_R(s - p), Gamma_R(s - p + 1), Gamma_C(s - p).  Both
routes are implemented and compared in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EulerOnlyDataError
from .intlinalg import parity_sign
from .scheme_algebra import (
    Affine,
    Cellular,
    Curve,
    Disjoint,
    Glue,
    Minus,
    NumberRing,
    Point,
    Proj,
    SchemeExpr,
)

__all__ = [
    "EquivariantBetti",
    "HodgeData",
    "equivariant_dims",
    "vanishing_order_conjectural",
    "secondary_euler_vo",
    "hodge_equivariant_dims",
    "gamma_factor_order",
    "P1_HODGE",
    "ELLIPTIC_CURVE_HODGE",
]


@dataclass(frozen=True)
class EquivariantBetti:
    """dim H^i_c(X(C), R(n))^{G_R} per parity of n.

    A dims map of None means only the Euler characteristic survived the
    propagation (gluings); full maps are kept whenever the operations
    determine them degreewise.
    """

    dims_even: dict | None
    dims_odd: dict | None
    chi_even: int
    chi_odd: int

    def __post_init__(self):
        for dims, chi in ((self.dims_even, self.chi_even), (self.dims_odd, self.chi_odd)):
            if dims is not None:
                if any(v < 0 for v in dims.values()):
                    raise ValueError("dimensions must be nonnegative")
                if sum(parity_sign(i) * v for i, v in dims.items()) != chi:
                    raise ValueError("chi does not match the dimension table")

    def exactness(self, n: int) -> str:
        return "full-dims" if self.dims(n) is not None else "euler-only"

    def dims(self, n: int) -> dict | None:
        return self.dims_even if n % 2 == 0 else self.dims_odd

    def chi(self, n: int) -> int:
        return self.chi_even if n % 2 == 0 else self.chi_odd


def _dims_and_chi(e: SchemeExpr, parity: int):
    """(dims-or-None, chi) for evaluation points n of the given parity."""
    if isinstance(e, (Point, Curve)):
        return {}, 0  # no complex points
    if isinstance(e, NumberRing):
        r1, r2 = e.field_spec.signature
        d = r2 if parity else r1 + r2
        return ({0: d} if d else {}), d
    if isinstance(e, Disjoint):
        parts = [_dims_and_chi(c, parity) for c in e.children()]
        chi = sum(c for _, c in parts)
        if any(dims is None for dims, _ in parts):
            return None, chi
        merged: dict[int, int] = {}
        for dims, _ in parts:
            for i, v in dims.items():
                merged[i] = merged.get(i, 0) + v
        return merged, chi
    if isinstance(e, Glue):
        _, chi_z = _dims_and_chi(e.closed, parity)
        _, chi_u = _dims_and_chi(e.open_part, parity)
        return None, chi_z + chi_u
    if isinstance(e, Minus):
        _, chi_x = _dims_and_chi(e.total, parity)
        _, chi_z = _dims_and_chi(e.closed, parity)
        return None, chi_x - chi_z
    if isinstance(e, Affine):
        dims, chi = _dims_and_chi(e.base, (parity + e.r) % 2)
        if dims is not None:
            dims = {i + 2 * e.r: v for i, v in dims.items()}
        return dims, chi
    if isinstance(e, Proj):
        return _dims_and_chi(Cellular(e.base, tuple(range(e.r + 1))), parity)
    if isinstance(e, Cellular):
        parts = [_dims_and_chi(Affine(r, e.base), parity) for r in e.ranks]
        chi = sum(c for _, c in parts)
        if any(dims is None for dims, _ in parts):
            return None, chi
        merged = {}
        for dims, _ in parts:
            for i, v in dims.items():
                merged[i] = merged.get(i, 0) + v
        return merged, chi
    raise TypeError(f"unknown expression node {type(e).__name__}")


def equivariant_dims(e: SchemeExpr, n: int) -> EquivariantBetti:
    """Parity-indexed equivariant Betti data; `n` picks nothing beyond its
    sign convention (both parities are always populated)."""
    if n >= 0:
        raise ValueError("defined for strictly negative weights")
    dims_even, chi_even = _dims_and_chi(e, 0)
    dims_odd, chi_odd = _dims_and_chi(e, 1)
    return EquivariantBetti(dims_even, dims_odd, chi_even, chi_odd)


def vanishing_order_conjectural(e: SchemeExpr, n: int) -> int:
    """Conjectural ord_{s=n} zeta(X, s): chi of the equivariant data."""
    return equivariant_dims(e, n).chi(n)


def secondary_euler_vo(e: SchemeExpr, n: int) -> int:
    """The weighted-rank route: sum (-1)^i * i * rk H^i_{W,c}.

    The splitting rk H^i_{W,c} = d_{i-1} + d_{i-2}, with d_j the
    equivariant Betti dimensions, turns the weighted sum into the plain
    Euler characteristic; both are computed independently here and the
    equality is asserted.
    """
    data = equivariant_dims(e, n)
    dims = data.dims(n)
    if dims is None:
        raise EulerOnlyDataError(
            "secondary Euler characteristic needs full dimension tables; "
            "this expression only carries chi"
        )
    if not dims:
        return 0
    lo = min(dims) + 1
    hi = max(dims) + 2
    total = 0
    for i in range(lo, hi + 1):
        rank_w = dims.get(i - 1, 0) + dims.get(i - 2, 0)
        total += parity_sign(i) * i * rank_w
    assert total == data.chi(n), "weighted-rank route disagrees with chi"
    return total


# ---------------------------------------------------------------------------
# Hodge-theoretic route (proper smooth complex fibers)


@dataclass(frozen=True)
class HodgeData:
    """Hodge numbers h^{p,q} plus the conjugation split of the diagonal.

    weights: map (p, q) -> h^{p,q}; diagonal: map p -> (h^{p,+}, h^{p,-})
    with h^{p,+} + h^{p,-} = h^{p,p}.  Conjugation swaps H^{p,q} and
    H^{q,p}, so h^{p,q} = h^{q,p} is required.
    """

    weights: tuple
    diagonal: tuple

    @classmethod
    def make(cls, weights: dict, diagonal: dict) -> HodgeData:
        return cls(
            tuple(sorted(((p, q), h) for (p, q), h in weights.items() if h)),
            tuple(sorted((p, (plus, minus)) for p, (plus, minus) in diagonal.items())),
        )

    def __post_init__(self):
        w = dict(self.weights)
        for (p, q), h in w.items():
            if h < 0:
                raise ValueError("Hodge numbers must be nonnegative")
            if w.get((q, p), 0) != h:
                raise ValueError("Hodge symmetry h^{p,q} = h^{q,p} violated")
        diag = dict(self.diagonal)
        for p, (plus, minus) in diag.items():
            if plus < 0 or minus < 0:
                raise ValueError("eigenspace dimensions must be nonnegative")
            if plus + minus != w.get((p, p), 0):
                raise ValueError("h^{p,+} + h^{p,-} must equal h^{p,p}")

    def hpq(self, p: int, q: int) -> int:
        return dict(self.weights).get((p, q), 0)

    def diag_split(self, p: int) -> tuple[int, int]:
        return dict(self.diagonal).get(p, (0, 0))

    def degrees(self):
        return sorted({p + q for (p, q), _ in self.weights})


# conjugation acts on H^2 of a curve by -1 (orientation reversal), which
# places the top class of P^1 and of an elliptic curve in the (+)-eigenspace
# for p = 1 since (-1)^p = -1 there
P1_HODGE = HodgeData.make({(0, 0): 1, (1, 1): 1}, {0: (1, 0), 1: (1, 0)})
ELLIPTIC_CURVE_HODGE = HodgeData.make(
    {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}, {0: (1, 0), 1: (1, 0)}
)


def hodge_equivariant_dims(H: HodgeData, n: int) -> dict:
    """dim H^i(X(C), R(n))^{G_R} per degree i, from the Hodge data."""
    out: dict[int, int] = {}
    for i in H.degrees():
        total = 0
        if i % 2 == 0:
            p = i // 2
            plus, minus = H.diag_split(p)
            total += plus if (n - p) % 2 == 0 else minus
        for p in range(0, (i + 1) // 2):
            q = i - p
            if p < q:
                total += H.hpq(p, q)
        if total:
            out[i] = total
    return out


def gamma_factor_order(H: HodgeData, n: int) -> int:
    """Expected vanishing order at n < 0 as a Gamma-factor pole census.

    ord = -sum_i (-1)^i ord_{s=n} L_infty(H^i, s), where Gamma_R(s-p) has
    a simple pole at n iff n-p is even (and <= 0), Gamma_R(s-p+1) iff
    n-p+1 is even, and Gamma_C(s-p) always for n-p <= 0.
    """
    if n >= 0:
        raise ValueError("defined for strictly negative integers")
    total = 0
    for i in H.degrees():
        poles = 0
        if i % 2 == 0:
            p = i // 2
            plus, minus = H.diag_split(p)
            if n - p <= 0 and (n - p) % 2 == 0:
                poles += plus
            if n - p + 1 <= 0 and (n - p + 1) % 2 == 0:
                poles += minus
        for p in range(0, (i + 1) // 2):
            q = i - p
            if p < q and n - p <= 0:
                poles += H.hpq(p, q)
        total += parity_sign(i) * poles
    return total
