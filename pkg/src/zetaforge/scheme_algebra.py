"""Expression calculus for desk-computable arithmetic schemes.

Atoms: finite-field points Spec F_{q^m}, smooth projective curves over F_q
given by the numerator L-polynomial of their zeta function, and spectra of
rings of integers of abelian number fields.  Operations: disjoint unions,
closed-open gluings Z u U = X (and the complement X - Z), relative affine
and projective spaces, and cellular assemblies over a base.

Two propagations are implemented for every expression: the zeta function
as a ZetaProduct, and (in finite characteristic) the multiplicative Euler
characteristic chi_x of the motivic cohomology with compact-support
orientation, together with per-degree group orders where the long exact
sequences determine them.  Gluings and complements only determine chi_x,
never the individual graded orders, so those degrade by design.

There is no reduction node: every invariant computed here is insensitive
to nilpotents, so an expression always stands for its reduced scheme.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CharZeroAtomError
from .intlinalg import ensure_prime_power, parity_sign
from .lfunctions import AbelianFieldSpec
from .zetarep import (
    FiniteCharFactor,
    LFactorShifted,
    RationalFunctionT,
    ZetaProduct,
    inverse,
    multiply,
    shift_s,
)

__all__ = [
    "SchemeExpr",
    "Point",
    "Curve",
    "NumberRing",
    "Disjoint",
    "Glue",
    "Minus",
    "Affine",
    "Proj",
    "Cellular",
    "WeilOrderData",
    "Diagnostic",
    "zeta_of",
    "weil_order_data",
    "validate",
    "format_expr",
    "base_prime_powers",
    "is_finite_characteristic",
]


class SchemeExpr:
    """Base class for expression nodes; all nodes are frozen dataclasses."""

    def children(self) -> tuple[SchemeExpr, ...]:
        return ()


@dataclass(frozen=True)
class Point(SchemeExpr):
    """Spec F_{q^m} as a scheme over F_q."""

    q: int
    m: int = 1

    def __post_init__(self):
        ensure_prime_power(self.q)
        if self.m < 1:
            raise ValueError("residue degree m must be >= 1")


@dataclass(frozen=True)
class Curve(SchemeExpr):
    """Smooth projective curve over F_q with Z = P(t)/((1-t)(1-qt)).

    `lpoly` holds the coefficients of P ascending; P(0) = 1 is required for
    an honest curve but only flagged by validate(), and Weil-bound
    violations surface lazily at evaluation time.
    """

    q: int
    lpoly: tuple[int, ...]

    def __post_init__(self):
        ensure_prime_power(self.q)
        if not self.lpoly or self.lpoly[0] == 0:
            raise ValueError("L-polynomial needs a nonzero constant term")


@dataclass(frozen=True)
class NumberRing(SchemeExpr):
    """Spec O_F for an abelian number field F."""

    field_spec: AbelianFieldSpec


@dataclass(frozen=True)
class Disjoint(SchemeExpr):
    parts: tuple[SchemeExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def children(self):
        return self.parts


@dataclass(frozen=True)
class Glue(SchemeExpr):
    """X assembled from a closed subscheme and its open complement.

    The decomposition is a user assertion; no geometry is verified.
    """

    closed: SchemeExpr
    open_part: SchemeExpr

    def children(self):
        return (self.closed, self.open_part)


@dataclass(frozen=True)
class Minus(SchemeExpr):
    """Open complement U = X - Z of a user-asserted closed embedding."""

    total: SchemeExpr
    closed: SchemeExpr

    def children(self):
        return (self.total, self.closed)


@dataclass(frozen=True)
class Affine(SchemeExpr):
    """Relative affine space A^r over the base expression."""

    r: int
    base: SchemeExpr

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("affine rank must be nonnegative")

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Proj(SchemeExpr):
    """Relative projective space P^r over the base expression."""

    r: int
    base: SchemeExpr

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("projective rank must be nonnegative")

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Cellular(SchemeExpr):
    """Cellular assembly over the base: strata A^{r_j}_B for the listed ranks."""

    base: SchemeExpr
    ranks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        if not self.ranks:
            raise ValueError("cellular ranks must be nonempty")
        if any(r < 0 for r in self.ranks):
            raise ValueError("cellular ranks must be nonnegative")

    def children(self):
        return (self.base,)


# ---------------------------------------------------------------------------
# zeta propagation


def zeta_of(e: SchemeExpr) -> ZetaProduct:
    """The zeta function of the expression as a formal product."""
    if isinstance(e, Point):
        Z = RationalFunctionT.make((1,), (1,) + (0,) * (e.m - 1) + (-1,))
        return ZetaProduct.single(FiniteCharFactor(e.q, Z))
    if isinstance(e, Curve):
        den = _poly_mul((1, -1), (1, -e.q))
        return ZetaProduct.single(FiniteCharFactor(e.q, RationalFunctionT.make(e.lpoly, den)))
    if isinstance(e, NumberRing):
        return ZetaProduct.from_factors(
            [(LFactorShifted(chi, 0), 1) for chi in e.field_spec.characters()]
        )
    if isinstance(e, Disjoint):
        out = ZetaProduct.one()
        for child in e.children():
            out = multiply(out, zeta_of(child))
        return out
    if isinstance(e, Glue):
        return multiply(zeta_of(e.closed), zeta_of(e.open_part))
    if isinstance(e, Minus):
        return multiply(zeta_of(e.total), inverse(zeta_of(e.closed)))
    if isinstance(e, Affine):
        return shift_s(zeta_of(e.base), e.r)
    if isinstance(e, Proj):
        return zeta_of(Cellular(e.base, tuple(range(e.r + 1))))
    if isinstance(e, Cellular):
        base = zeta_of(e.base)
        out = ZetaProduct.one()
        for r in e.ranks:
            out = multiply(out, shift_s(base, r))
        return out
    raise TypeError(f"unknown expression node {type(e).__name__}")


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


# ---------------------------------------------------------------------------
# finite-characteristic cohomological order data


class WeilOrderData:
    """Per-degree motivic cohomology orders (when determined) and their
    alternating product chi_mult = prod |H^i|^((-1)^i)."""

    def __init__(self, graded, chi_mult: Fraction):
        self.graded = None if graded is None else {int(i): int(v) for i, v in graded.items()}
        self.chi_mult = Fraction(chi_mult)
        if self.graded is not None:
            check = Fraction(1)
            for i, order in self.graded.items():
                if order < 1:
                    raise ValueError("group orders must be positive")
                check *= Fraction(order) ** parity_sign(i)
            if check != self.chi_mult:
                raise ValueError("graded orders do not multiply to chi_mult")

    @property
    def has_graded(self) -> bool:
        return self.graded is not None

    def __eq__(self, other):
        if not isinstance(other, WeilOrderData):
            return NotImplemented
        return self.graded == other.graded and self.chi_mult == other.chi_mult

    def __repr__(self):
        return f"WeilOrderData(graded={self.graded!r}, chi_mult={self.chi_mult})"


def _merge_graded(parts):
    """Degreewise product of order maps; None if any part is undetermined."""
    if any(p is None for p in parts):
        return None
    merged: dict[int, int] = {}
    for p in parts:
        for i, v in p.items():
            merged[i] = merged.get(i, 1) * v
    return merged


def weil_order_data(e: SchemeExpr, n: int) -> WeilOrderData:
    """Cohomological order data at weight n < 0 for finite-characteristic
    expressions.

    Atoms carry full graded data; disjoint unions merge it degreewise and
    bundle operations reindex it by even shifts (degree i of the base at
    weight n - r lands in degree i - 2r).  Gluings and complements keep
    only chi_mult: their long exact sequences do not determine the
    individual groups.
    """
    if n >= 0:
        raise ValueError("order data is defined for strictly negative weights")
    if isinstance(e, Point):
        order = e.q ** (-e.m * n) - 1
        return WeilOrderData({1: order}, Fraction(1, order))
    if isinstance(e, Curve):
        t = Fraction(e.q) ** (-n)
        middle = abs(_eval_int_poly(e.lpoly, t))
        low = e.q ** (1 - n) - 1
        high = e.q ** (-n) - 1
        chi = Fraction(middle, low * high)
        return WeilOrderData({-1: low, 0: _as_int(middle), 1: high}, chi)
    if isinstance(e, NumberRing):
        raise CharZeroAtomError(
            "order data is finite-characteristic only; the expression contains Spec O_F"
        )
    if isinstance(e, Disjoint):
        parts = [weil_order_data(c, n) for c in e.children()]
        chi = Fraction(1)
        for p in parts:
            chi *= p.chi_mult
        return WeilOrderData(_merge_graded([p.graded for p in parts]), chi)
    if isinstance(e, Glue):
        a = weil_order_data(e.closed, n)
        b = weil_order_data(e.open_part, n)
        return WeilOrderData(None, a.chi_mult * b.chi_mult)
    if isinstance(e, Minus):
        a = weil_order_data(e.total, n)
        b = weil_order_data(e.closed, n)
        return WeilOrderData(None, a.chi_mult / b.chi_mult)
    if isinstance(e, Affine):
        base = weil_order_data(e.base, n - e.r)
        graded = None
        if base.graded is not None:
            graded = {i - 2 * e.r: v for i, v in base.graded.items()}
        return WeilOrderData(graded, base.chi_mult)
    if isinstance(e, Proj):
        return weil_order_data(Cellular(e.base, tuple(range(e.r + 1))), n)
    if isinstance(e, Cellular):
        parts = [weil_order_data(Affine(r, e.base), n) for r in e.ranks]
        chi = Fraction(1)
        for p in parts:
            chi *= p.chi_mult
        return WeilOrderData(_merge_graded([p.graded for p in parts]), chi)
    raise TypeError(f"unknown expression node {type(e).__name__}")


def _eval_int_poly(coeffs, t: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * t + c
    return total


def _as_int(x: Fraction) -> int:
    assert x.denominator == 1
    return x.numerator


# ---------------------------------------------------------------------------
# structural validation


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    where: str


def validate(e: SchemeExpr) -> list[Diagnostic]:
    """Structural diagnostics; gluing geometry is flagged, never verified."""
    out: list[Diagnostic] = []

    def walk(node: SchemeExpr):
        label = format_expr(node)
        if isinstance(node, Curve):
            if node.lpoly[0] != 1:
                out.append(
                    Diagnostic("error", "curve L-polynomial must have constant term 1", label)
                )
        if isinstance(node, (Glue, Minus)):
            out.append(
                Diagnostic(
                    "warning",
                    "closed-open decomposition is a user assertion; "
                    "complement plausibility is not verified",
                    label,
                )
            )
        for child in node.children():
            walk(child)

    walk(e)
    return out


# ---------------------------------------------------------------------------
# canonical printing (inverse of the CLI parser)


def format_expr(e: SchemeExpr) -> str:
    """Canonical s-expression form; parsing it back yields the same tree."""
    from .lfunctions import Q, QI

    if isinstance(e, Point):
        return f"(point {e.q})" if e.m == 1 else f"(point {e.q} {e.m})"
    if isinstance(e, Curve):
        coeffs = " ".join(str(c) for c in e.lpoly)
        return f"(curve {e.q} ({coeffs}))"
    if isinstance(e, NumberRing):
        if e.field_spec == Q:
            return "(Q)"
        if e.field_spec == QI:
            return "(Qi)"
        subgroup = " ".join(str(a) for a in e.field_spec.subgroup)
        return f"(numberring :conductor {e.field_spec.conductor} :subgroup ({subgroup}))"
    if isinstance(e, Disjoint):
        inner = " ".join(format_expr(c) for c in e.parts)
        return f"(disjoint {inner})" if inner else "(disjoint)"
    if isinstance(e, Glue):
        return f"(glue {format_expr(e.closed)} {format_expr(e.open_part)})"
    if isinstance(e, Minus):
        return f"(minus {format_expr(e.total)} {format_expr(e.closed)})"
    if isinstance(e, Affine):
        return f"(affine {e.r} {format_expr(e.base)})"
    if isinstance(e, Proj):
        return f"(proj {e.r} {format_expr(e.base)})"
    if isinstance(e, Cellular):
        ranks = " ".join(str(r) for r in e.ranks)
        return f"(cellular {format_expr(e.base)} ({ranks}))"
    raise TypeError(f"unknown expression node {type(e).__name__}")


# ---------------------------------------------------------------------------
# base bookkeeping


def base_prime_powers(e: SchemeExpr) -> set[int]:
    """Set of finite-characteristic base prime powers appearing in atoms."""
    if isinstance(e, (Point, Curve)):
        return {e.q}
    if isinstance(e, NumberRing):
        return set()
    out: set[int] = set()
    for child in e.children():
        out |= base_prime_powers(child)
    return out


def has_number_ring(e: SchemeExpr) -> bool:
    if isinstance(e, NumberRing):
        return True
    return any(has_number_ring(c) for c in e.children())


def is_finite_characteristic(e: SchemeExpr) -> bool:
    return not has_number_ring(e)
