"""Formal zeta functions: finite-characteristic rational factors times
shifted Dirichlet L-factors.

A finite-characteristic factor is a rational function Z(t) over a base q,
read via t = q^(-s); a characteristic-zero factor is L(s - k, chi).  A
ZetaProduct is a multiset of both kinds with integer exponents.  At a
strictly negative integer n the finite-characteristic part contributes a
nonzero rational (zeros and poles of Z sit on |t| = q^(w/2) by the Weil
bounds, never at t = q^(-n) > 1), so the entire vanishing order comes from
trivial zeros of the L-factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath as mp

from .errors import WeilViolationError
from .intlinalg import ensure_prime_power
from .lfunctions import (
    CyclotomicNumber,
    DirichletCharacter,
    LeadingValue,
    SpecialValue,
    TRIVIAL_CHARACTER,
    default_precision,
    leading_value,
    trivial_zero_order,
)

__all__ = [
    "RationalFunctionT",
    "FiniteCharFactor",
    "LFactorShifted",
    "ZetaProduct",
    "SpecialValue",
    "multiply",
    "inverse",
    "shift_s",
    "evaluate_at",
    "vanishing_order",
    "power_series",
    "riemann_factor",
]


def _poly_trim(coeffs) -> tuple[int, ...]:
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    return g or 1


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _poly_eval(coeffs, t: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * t + c
    return total


@dataclass(frozen=True)
class RationalFunctionT:
    """num(t)/den(t) with integer coefficients, ascending order.

    Normal form: nonzero constant terms, joint content 1, den(0) > 0.
    """

    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self):
        if not self.den or self.den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        if not self.num or self.num[0] == 0:
            raise ValueError("numerator must have a nonzero constant term")

    @classmethod
    def make(cls, num, den=(1,)) -> RationalFunctionT:
        num, den = _poly_trim(num), _poly_trim(den)
        if not den:
            raise ValueError("denominator is zero")
        if not num:
            raise ValueError("numerator is zero")
        g = gcd(_poly_content(num), _poly_content(den))
        if den[0] < 0:
            g = -g
        if g != 1:
            num = tuple(c // g for c in num)
            den = tuple(c // g for c in den)
        return cls(num, den)

    @classmethod
    def one(cls) -> RationalFunctionT:
        return cls((1,), (1,))

    def __mul__(self, other: RationalFunctionT) -> RationalFunctionT:
        return RationalFunctionT.make(_poly_mul(self.num, other.num), _poly_mul(self.den, other.den))

    def reciprocal(self) -> RationalFunctionT:
        return RationalFunctionT.make(self.den, self.num)

    def substitute_scaled(self, scale: int) -> RationalFunctionT:
        """Z(scale * t): coefficient j picks up scale^j."""
        num = tuple(c * scale**j for j, c in enumerate(self.num))
        den = tuple(c * scale**j for j, c in enumerate(self.den))
        return RationalFunctionT.make(num, den)

    def evaluate(self, t: Fraction) -> Fraction:
        den = _poly_eval(self.den, Fraction(t))
        if den == 0:
            raise ZeroDivisionError("pole of the rational function")
        return _poly_eval(self.num, Fraction(t)) / den

    def series(self, K: int) -> list[Fraction]:
        """Taylor coefficients of num/den up to t^K, by long division."""
        num = list(self.num) + [0] * (K + 1 - len(self.num))
        out = []
        d0 = Fraction(self.den[0])
        for k in range(K + 1):
            acc = Fraction(num[k]) if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(self.den) - 1) + 1):
                acc -= self.den[j] * out[k - j]
            out.append(acc / d0)
        return out

    def __str__(self):
        def fmt(p):
            terms = []
            for j, c in enumerate(p):
                if c == 0:
                    continue
                if j == 0:
                    terms.append(str(c))
                elif j == 1:
                    terms.append(f"{c}t" if c not in (1, -1) else ("t" if c == 1 else "-t"))
                else:
                    terms.append(f"{c}t^{j}" if c not in (1, -1) else (f"t^{j}" if c == 1 else f"-t^{j}"))
            return " + ".join(terms).replace("+ -", "- ") or "0"

        if self.den == (1,):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


@dataclass(frozen=True)
class FiniteCharFactor:
    """Rational function in t = q^(-s) over the base prime power q."""

    q: int
    Z: RationalFunctionT

    def __post_init__(self):
        ensure_prime_power(self.q)

    def sort_key(self):
        return (0, self.q, self.Z.num, self.Z.den)

    def __str__(self):
        return f"[q={self.q}] {self.Z}"


@dataclass(frozen=True)
class LFactorShifted:
    """L(s - shift, chi); the trivial character gives the Riemann zeta."""

    character: DirichletCharacter
    shift: int = 0

    def __post_init__(self):
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")

    def sort_key(self):
        c = self.character
        return (1, c.modulus, c.order, c.exponents, self.shift)

    def __str__(self):
        arg = "s" if self.shift == 0 else f"s-{self.shift}"
        if self.character.is_trivial and self.character.conductor == 1:
            return f"zeta({arg})"
        return f"L({arg}, {self.character.label()})"


def riemann_factor(shift: int = 0) -> LFactorShifted:
    return LFactorShifted(TRIVIAL_CHARACTER, shift)


@dataclass(frozen=True)
class ZetaProduct:
    """Multiset product of factors with nonzero integer exponents.

    Construction normalizes to a canonical form (duplicates merged, zero
    exponents dropped, factors sorted), so equality is structural.
    """

    finite_char: tuple[tuple[FiniteCharFactor, int], ...] = ()
    char_zero: tuple[tuple[LFactorShifted, int], ...] = ()

    def __post_init__(self):
        merged = ZetaProduct._merge(list(self.finite_char) + list(self.char_zero))
        object.__setattr__(self, "finite_char", merged[0])
        object.__setattr__(self, "char_zero", merged[1])

    @staticmethod
    def _merge(factors):
        fc: dict = {}
        cz: dict = {}
        for factor, exp in factors:
            if exp == 0:
                continue
            bucket = fc if isinstance(factor, FiniteCharFactor) else cz
            bucket[factor] = bucket.get(factor, 0) + exp
        return (
            tuple(sorted(((f, e) for f, e in fc.items() if e), key=lambda p: p[0].sort_key())),
            tuple(sorted(((f, e) for f, e in cz.items() if e), key=lambda p: p[0].sort_key())),
        )

    @classmethod
    def from_factors(cls, factors) -> ZetaProduct:
        fc, cz = cls._merge(factors)
        return cls(fc, cz)

    @classmethod
    def one(cls) -> ZetaProduct:
        return cls()

    @classmethod
    def single(cls, factor, exp: int = 1) -> ZetaProduct:
        return cls.from_factors([(factor, exp)])

    @property
    def factors(self):
        return self.finite_char + self.char_zero

    @property
    def is_finite_characteristic(self) -> bool:
        return not self.char_zero

    @property
    def is_one(self) -> bool:
        return not self.finite_char and not self.char_zero

    def __str__(self):
        if self.is_one:
            return "1"
        parts = []
        for f, e in self.factors:
            parts.append(f"({f})" + (f"^{e}" if e != 1 else ""))
        return " * ".join(parts)


def multiply(a: ZetaProduct, b: ZetaProduct) -> ZetaProduct:
    return ZetaProduct.from_factors(list(a.factors) + list(b.factors))


def inverse(z: ZetaProduct) -> ZetaProduct:
    return ZetaProduct.from_factors([(f, -e) for f, e in z.factors])


def shift_s(z: ZetaProduct, r: int) -> ZetaProduct:
    """Replace s by s - r: t -> q^r t on finite factors, shift += r on L-factors."""
    if r < 0:
        raise ValueError("shift must be nonnegative")
    if r == 0:
        return z
    out = []
    for f, e in z.finite_char:
        out.append((FiniteCharFactor(f.q, f.Z.substitute_scaled(f.q**r)), e))
    for f, e in z.char_zero:
        out.append((LFactorShifted(f.character, f.shift + r), e))
    return ZetaProduct.from_factors(out)


def _finite_char_value(z: ZetaProduct, n: int) -> Fraction:
    """Exact product of Z(q^(-n))^e; raises when input data violates the
    Weil bounds (a zero or pole of some factor at t = q^(-n))."""
    value = Fraction(1)
    for f, e in z.finite_char:
        t = Fraction(f.q) ** (-n)
        num = _poly_eval(f.Z.num, t)
        den = _poly_eval(f.Z.den, t)
        if num == 0 or den == 0:
            raise WeilViolationError(
                f"factor {f} has a {'zero' if num == 0 else 'pole'} at t = {f.q}^{-n}; "
                "input data violates the Weil bounds"
            )
        value *= (num / den) ** e
    return value


def vanishing_order(z: ZetaProduct, n: int) -> int:
    """Order of vanishing at s = n < 0 (no leading-value numerics).

    Validates the finite-characteristic factors (they must be nonzero and
    finite at t = q^(-n)) and sums the trivial-zero orders of the L-part.
    """
    if n >= 0:
        raise ValueError("vanishing orders are computed at strictly negative integers")
    _finite_char_value(z, n)
    return sum(e * trivial_zero_order(f.character, n - f.shift) for f, e in z.char_zero)


def evaluate_at(z: ZetaProduct, n: int, precision: int | None = None) -> SpecialValue:
    """Order of vanishing and leading Taylor coefficient at s = n < 0.

    Finite-characteristic factors contribute exact nonzero rationals and no
    vanishing; L-factors contribute trivial-zero orders and leading values.
    The result is exact when every characteristic-zero contribution is an
    exact rational (in particular for conjugation-closed character sets).
    """
    if n >= 0:
        raise ValueError("special values are computed at strictly negative integers")
    if precision is None:
        precision = default_precision()

    rational_part = _finite_char_value(z, n)
    order = 0
    leads: list[tuple[LeadingValue, int]] = []
    for f, e in z.char_zero:
        m = n - f.shift
        order += e * trivial_zero_order(f.character, m)
        leads.append((leading_value(f.character, m, precision), e))

    dps = precision + 20
    with mp.workdps(dps):
        if all(lv.exact is not None for lv, _ in leads):
            exact_cyclo = CyclotomicNumber.rational(rational_part)
            for lv, e in leads:
                exact_cyclo = exact_cyclo * lv.exact**e
            if exact_cyclo.is_rational:
                value = exact_cyclo.rational_value()
                numeric = mp.mpf(value.numerator) / mp.mpf(value.denominator)
                error = (abs(numeric) + 1) * mp.mpf(10) ** (-(precision + 5))
                return SpecialValue(order=order, exact=value, numeric=numeric, error=error)

        numeric = mp.mpf(rational_part.numerator) / mp.mpf(rational_part.denominator)
        numeric = mp.mpc(numeric)
        rel_err = mp.mpf(0)
        for lv, e in leads:
            numeric *= lv.value**e
            rel_err += abs(e) * lv.error / (abs(lv.value) + mp.mpf(10) ** (-dps))
        error = (abs(numeric) + 1) * (rel_err + mp.mpf(10) ** (-(precision + 5)))
        if abs(mp.im(numeric)) > error:
            raise ValueError(
                "special value is not real: the characteristic-zero factors are "
                "not closed under conjugation"
            )
        return SpecialValue(order=order, exact=None, numeric=mp.re(numeric), error=error)


def power_series(f: FiniteCharFactor, K: int) -> list[Fraction]:
    """Exact Taylor coefficients of Z(t) up to t^K."""
    if K < 0:
        raise ValueError("order must be nonnegative")
    return f.Z.series(K)
