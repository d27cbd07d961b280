"""Dirichlet characters, generalized Bernoulli numbers and L-values.

Exact values at nonpositive integers live in cyclotomic fields Q(zeta_N),
represented by polynomials reduced modulo the N-th cyclotomic polynomial.
Leading coefficients at trivial zeros come from the functional equation
Lambda(s, chi) = eps(chi) * Lambda(1-s, conj(chi)) with the root number
eps(chi) = tau(chi) / (i^a * sqrt(f)) evaluated from the Gauss sum.

Trivial zeros of a single Dirichlet L-function at n < 0 are always simple
(one Gamma_R factor), so only first derivatives are ever needed:

    L'(n, chi) = eps(chi) * (f/pi)^((1-2n)/2) * Gamma((1-n+a)/2)
                 * (-1)^m * m!/2 * L(1-n, conj(chi)),   m = -(n+a)/2,

with a = 0 for even chi and a = 1 for odd chi.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import mpmath as mp

from .errors import PrecisionUnderflowError, RationalityFailureError, ZetaforgeError
from .intlinalg import parity_sign

__all__ = [
    "CyclotomicNumber",
    "DirichletCharacter",
    "AbelianFieldSpec",
    "SpecialValue",
    "LeadingValue",
    "TRIVIAL_CHARACTER",
    "CHI_MINUS_4",
    "Q",
    "QI",
    "bernoulli_number",
    "bernoulli_poly_at",
    "gen_bernoulli",
    "L_at_nonpositive",
    "trivial_zero_order",
    "dedekind_order",
    "leading_value",
    "dedekind_special_value",
    "gauss_sum",
    "default_precision",
]

DEFAULT_PRECISION = 50


def default_precision() -> int:
    env = os.environ.get("ZETAFORGE_PRECISION")
    if env:
        try:
            value = int(env)
            if value > 0:
                return value
        except ValueError:
            pass
    return DEFAULT_PRECISION


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials (exact)


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """B_k with the B_1 = -1/2 convention, by the defining recurrence."""
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if k == 0:
        return Fraction(1)
    if k > 1 and k % 2 == 1:
        return Fraction(0)
    # sum_{j=0}^{k} C(k+1, j) B_j = 0
    total = Fraction(0)
    binom = 1  # C(k+1, 0)
    for j in range(k):
        total += binom * bernoulli_number(j)
        binom = binom * (k + 1 - j) // (j + 1)
    return -total / (k + 1)


def bernoulli_poly_at(k: int, x: Fraction) -> Fraction:
    """B_k(x) = sum_j C(k, j) B_j x^(k-j)."""
    x = Fraction(x)
    total = Fraction(0)
    binom = 1
    for j in range(k + 1):
        total += binom * bernoulli_number(j) * x ** (k - j)
        binom = binom * (k - j) // (j + 1)
    return total


# ---------------------------------------------------------------------------
# Exact arithmetic in Q(zeta_N)


def _euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_div_exact_int(a, b):
    """Quotient of integer polynomials with exact division (remainder 0)."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q, r = divmod(c, b[-1])
        assert r == 0
        out[i] = q
        for j, y in enumerate(b):
            a[i + j] -= q * y
    assert all(x == 0 for x in a)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@dataclass(frozen=True)
class CyclotomicNumber:
    """Element of Q(zeta_N): rational polynomial reduced mod Phi_N."""

    level: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if len(self.coeffs) != _euler_phi(self.level):
            raise ValueError("coefficient vector must have length phi(level)")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_poly(cls, level: int, poly) -> CyclotomicNumber:
        phi = _euler_phi(level)
        coeffs = [Fraction(c) for c in poly]
        modulus = cyclotomic_polynomial(level)
        deg = len(modulus) - 1  # = phi, monic
        while len(coeffs) > deg:
            top = coeffs.pop()
            if top:
                for j in range(deg):
                    coeffs[len(coeffs) - deg + j] -= top * modulus[j]
        coeffs += [Fraction(0)] * (phi - len(coeffs))
        return cls(level, tuple(coeffs))

    @classmethod
    def rational(cls, value, level: int = 1) -> CyclotomicNumber:
        return cls.from_poly(level, [Fraction(value)])

    @classmethod
    def root_of_unity(cls, level: int, k: int) -> CyclotomicNumber:
        k %= level
        return cls.from_poly(level, [0] * k + [1])

    # -- predicates and conversions ----------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise RationalityFailureError(f"{self} is not rational")
        return self.coeffs[0]

    def promoted(self, level: int) -> CyclotomicNumber:
        if level == self.level:
            return self
        if level % self.level != 0:
            raise ValueError("can only promote to a multiple level")
        step = level // self.level
        result = CyclotomicNumber.rational(0, level)
        for j, c in enumerate(self.coeffs):
            if c:
                term = CyclotomicNumber.root_of_unity(level, j * step)
                result = result + term * CyclotomicNumber.rational(c, level)
        return result

    def numeric(self, dps: int):
        """Complex embedding zeta_N -> exp(2*pi*i/N) at `dps` digits."""
        with mp.workdps(dps):
            z = mp.e ** (2j * mp.pi / self.level)
            total = mp.mpc(0)
            power = mp.mpc(1)
            for c in self.coeffs:
                if c:
                    total += power * mp.mpf(c.numerator) / mp.mpf(c.denominator)
                power *= z
            return total

    # -- arithmetic ----------------------------------------------------------

    def _common(self, other):
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(other, 1)
        level = lcm(self.level, other.level)
        return self.promoted(level), other.promoted(level)

    def __add__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.level, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.level, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._common(other)
        return b + (-a)

    def __mul__(self, other):
        a, b = self._common(other)
        poly = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        poly[i + j] += x * y
        return CyclotomicNumber.from_poly(a.level, poly)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self * other.inverse()
        return self * CyclotomicNumber.rational(Fraction(1, 1) / Fraction(other), 1)

    def inverse(self) -> CyclotomicNumber:
        """1/x via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational:
            return CyclotomicNumber.rational(1 / self.coeffs[0], self.level)
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.level)]
        a = list(self.coeffs)
        # extended gcd of a and modulus in Q[x]
        r0, r1 = modulus, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _degree(r1) > 0:
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul_frac(q, s1)))
        if _degree(r1) < 0:
            raise ZeroDivisionError("not invertible modulo the cyclotomic polynomial")
        c = r1[0]
        inv = [x / c for x in s1]
        return CyclotomicNumber.from_poly(self.level, inv)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicNumber.rational(1, self.level)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __str__(self):
        if self.is_rational:
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.level}^{j}" if j else str(c))
        return " + ".join(terms)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _degree(p):
    return len(p) - 1


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mul_frac(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod_frac(a, b):
    a = list(a)
    b = _trim(b)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        if len(a) < len(b) + i:
            continue
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    return q, a[: len(b) - 1]


# ---------------------------------------------------------------------------
# Dirichlet characters


def _canonical_residue(a: int, modulus: int) -> int:
    """Residue representative in [1, modulus] (so modulus 1 uses 1)."""
    return (a - 1) % modulus + 1


def _units(modulus: int) -> list[int]:
    if modulus == 1:
        return [1]
    return [a for a in range(1, modulus + 1) if gcd(a, modulus) == 1]


@dataclass(frozen=True)
class DirichletCharacter:
    """Character of (Z/modulus)^* with values in mu_order.

    `exponents` lists (a, k_a) over units a, with chi(a) = zeta_order^(k_a).
    `conductor` is the conductor of the primitive character this one induces.
    """

    modulus: int
    order: int
    exponents: tuple[tuple[int, int], ...]
    conductor: int

    def __post_init__(self):
        table = dict(self.exponents)
        if table.get(1, None) != 0:
            raise ValueError("chi(1) must be 1")
        k = table.get(_canonical_residue(-1, self.modulus))
        allowed = {0} | ({self.order // 2} if self.order % 2 == 0 else set())
        if k not in allowed:
            raise ValueError("chi(-1) must be +1 or -1")

    # -- lookups -------------------------------------------------------------

    def _table(self):
        return dict(self.exponents)

    def exponent(self, a: int):
        """k with chi(a) = zeta_order^k, or None when gcd(a, modulus) > 1."""
        a = _canonical_residue(a, self.modulus)
        return self._table().get(a)

    def value(self, a: int) -> CyclotomicNumber:
        k = self.exponent(a)
        if k is None:
            return CyclotomicNumber.rational(0, self.order)
        return CyclotomicNumber.root_of_unity(self.order, k)

    @property
    def is_trivial(self) -> bool:
        return all(k == 0 for _, k in self.exponents)

    @property
    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        k = self.exponent(-1)
        return 1 if k == 0 else -1

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(
            self.modulus,
            self.order,
            tuple((a, (-k) % self.order) for a, k in self.exponents),
            self.conductor,
        )

    def primitive(self) -> DirichletCharacter:
        """The primitive character inducing this one."""
        if self.is_primitive:
            return self
        f = self.conductor
        table = self._table()
        exps = []
        for a in _units(f):
            b = a
            while gcd(b, self.modulus) != 1:
                b += f
            exps.append((a, table[_canonical_residue(b, self.modulus)]))
        return DirichletCharacter(f, self.order, tuple(sorted(exps)), f)

    def label(self) -> str:
        if self.is_trivial and self.conductor == 1:
            return "zeta"
        return f"chi_{self.modulus}.{self.order}.{'.'.join(str(k) for _, k in self.exponents)}"

    def __str__(self):
        if self.is_trivial and self.conductor == 1:
            return "trivial character"
        return f"character mod {self.modulus} of order {self.order}"


TRIVIAL_CHARACTER = DirichletCharacter(1, 1, ((1, 0),), 1)
CHI_MINUS_4 = DirichletCharacter(4, 2, ((1, 0), (3, 1)), 4)


@lru_cache(maxsize=None)
def _unit_group_generators(modulus: int) -> tuple[tuple[int, int], ...]:
    """Generators (g, order) of (Z/modulus)^* via CRT over prime powers."""
    if modulus <= 2:
        return ()

    def crt_lift(g, q):
        rest = modulus // q
        if rest == 1:
            return g % modulus
        # x = g mod q, x = 1 mod rest
        inv = pow(rest, -1, q)
        return (1 + rest * ((g - 1) * inv % q)) % modulus

    def primitive_root(p, e):
        # a generator mod p that stays primitive mod p^2 works for all e
        phi_p = p - 1
        factors = set()
        m = phi_p
        d = 2
        while d * d <= m:
            if m % d == 0:
                factors.add(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            factors.add(m)
        for g in range(2, p):
            if all(pow(g, phi_p // f, p) != 1 for f in factors):
                break
        if e > 1 and pow(g, p - 1, p * p) == 1:
            g += p
        return g

    gens = []
    m = modulus
    p = 2
    while m > 1:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            q = p**e
            if p == 2:
                if e == 2:
                    gens.append((crt_lift(3, q), 2))
                elif e >= 3:
                    gens.append((crt_lift(q - 1, q), 2))
                    gens.append((crt_lift(5, q), 2 ** (e - 2)))
            else:
                g = primitive_root(p, e)
                gens.append((crt_lift(g, q), _euler_phi(q)))
        p += 1 if p == 2 else 2
    return tuple(gens)


@lru_cache(maxsize=None)
def _unit_logs(modulus: int):
    """Map unit -> exponent vector over the generators."""
    gens = _unit_group_generators(modulus)
    logs = {1: tuple([0] * len(gens))}
    frontier = [1]
    while frontier:
        a = frontier.pop()
        vec = logs[a]
        for idx, (g, order) in enumerate(gens):
            b = a * g % modulus
            b = _canonical_residue(b, modulus)
            if b not in logs:
                new = list(vec)
                new[idx] = (new[idx] + 1) % order
                logs[b] = tuple(new)
                frontier.append(b)
    return logs


def characters_mod(modulus: int) -> tuple[DirichletCharacter, ...]:
    """All Dirichlet characters of (Z/modulus)^*, trivial one first."""
    if modulus <= 2:
        return (_induced_trivial(modulus),)
    gens = _unit_group_generators(modulus)
    logs = _unit_logs(modulus)
    exponent = lcm(*[order for _, order in gens]) if gens else 1
    chars = []
    choices = [range(order) for _, order in gens]

    def rec(idx, chosen):
        if idx == len(choices):
            chars.append(tuple(chosen))
            return
        for k in choices[idx]:
            rec(idx + 1, chosen + [k])

    rec(0, [])
    result = []
    for chosen in sorted(chars):
        table = {}
        for a, vec in logs.items():
            t = 0
            for (_, order), k, e in zip(gens, chosen, vec):
                t = (t + k * e * (exponent // order)) % exponent
            table[a] = t
        g = exponent
        for t in table.values():
            g = gcd(g, t)
        order = exponent // g if g else 1
        exps = tuple(sorted((a, t // (exponent // order) if order > 1 else 0) for a, t in table.items()))
        cond = _conductor_of_table(modulus, table)
        result.append(DirichletCharacter(modulus, order, exps, cond))
    result.sort(key=lambda c: (not c.is_trivial, c.order, c.exponents))
    return tuple(result)


def _induced_trivial(modulus: int) -> DirichletCharacter:
    return DirichletCharacter(modulus, 1, tuple((a, 0) for a in _units(modulus)), 1)


def _conductor_of_table(modulus: int, table) -> int:
    for f in sorted(d for d in range(1, modulus + 1) if modulus % d == 0):
        ok = True
        for a in _units(modulus):
            if a % f == 1 % f and table[a] != 0:
                ok = False
                break
        if ok:
            return f
    return modulus


# ---------------------------------------------------------------------------
# Abelian number fields given by (conductor, subgroup)


@dataclass(frozen=True)
class AbelianFieldSpec:
    """Fixed field of H <= (Z/f)^* inside Q(zeta_f)."""

    conductor: int
    subgroup: tuple[int, ...]

    def __post_init__(self):
        f = self.conductor
        if f < 1:
            raise ValueError("conductor must be >= 1")
        elements = set(self.subgroup)
        if not elements:
            raise ValueError("subgroup must contain 1")
        units = set(_units(f))
        if not elements <= units:
            raise ValueError("subgroup elements must be units modulo the conductor")
        closed = {1}
        frontier = [1]
        while frontier:
            a = frontier.pop()
            for h in elements:
                b = _canonical_residue(a * h, f)
                if b not in closed:
                    closed.add(b)
                    frontier.append(b)
        if closed != elements:
            raise ValueError("subgroup is not closed under multiplication")

    @classmethod
    def from_generators(cls, conductor: int, generators) -> AbelianFieldSpec:
        closed = {1}
        frontier = [1]
        gens = [_canonical_residue(int(g), conductor) for g in generators]
        for g in gens:
            if conductor > 1 and gcd(g, conductor) != 1:
                raise ValueError(f"{g} is not a unit mod {conductor}")
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = _canonical_residue(a * g, conductor)
                if b not in closed:
                    closed.add(b)
                    frontier.append(b)
        return cls(conductor, tuple(sorted(closed)))

    @property
    def degree(self) -> int:
        return len(_units(self.conductor)) // len(self.subgroup)

    def characters(self) -> tuple[DirichletCharacter, ...]:
        """Primitive characters trivial on the subgroup (one per embedding)."""
        table = set(self.subgroup)
        selected = [
            chi for chi in characters_mod(self.conductor)
            if all(chi.exponent(h) == 0 for h in table)
        ]
        if len(selected) != self.degree:
            raise ZetaforgeError(
                f"character enumeration found {len(selected)} characters, expected {self.degree}"
            )
        return tuple(chi.primitive() for chi in selected)

    @property
    def is_totally_real(self) -> bool:
        return self.conductor <= 2 or _canonical_residue(-1, self.conductor) in self.subgroup

    @property
    def signature(self) -> tuple[int, int]:
        """(r1, r2): all-real or all-complex, by parity of the characters."""
        d = self.degree
        if self.is_totally_real:
            return d, 0
        if d % 2 != 0:
            raise ZetaforgeError("non-real abelian field must have even degree")
        return 0, d // 2

    def __str__(self):
        if self.conductor == 1:
            return "Q"
        if self == QI:
            return "Q(i)"
        return f"field(conductor={self.conductor}, subgroup={list(self.subgroup)})"


Q = AbelianFieldSpec(1, (1,))
QI = AbelianFieldSpec(4, (1,))


# ---------------------------------------------------------------------------
# Exact L-values at nonpositive integers


def gen_bernoulli(chi: DirichletCharacter, k: int) -> CyclotomicNumber:
    """Generalized Bernoulli number B_{k,chi} = f^{k-1} sum_a chi(a) B_k(a/f).

    Computed for the primitive character inducing chi; the sum runs over
    a = 1..f, so for f = 1 it degenerates to B_k(1) (giving B_1 = +1/2,
    which is the right convention for zeta(0) = -1/2).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    chi = chi.primitive()
    f = chi.modulus
    level = chi.order
    scale = Fraction(f) ** (k - 1)
    acc = {}
    for a in range(1, f + 1):
        e = chi.exponent(a)
        if e is None:
            continue
        b = bernoulli_poly_at(k, Fraction(a, f)) * scale
        if b:
            acc[e % level] = acc.get(e % level, Fraction(0)) + b
    poly = [Fraction(0)] * level
    for e, c in acc.items():
        poly[e] = c
    return CyclotomicNumber.from_poly(level, poly)


def L_at_nonpositive(chi: DirichletCharacter, n: int) -> CyclotomicNumber:
    """Exact L(n, chi) for n <= 0, via L(1-k, chi) = -B_{k,chi}/k."""
    if n > 0:
        raise ValueError("n must be <= 0")
    k = 1 - n
    return gen_bernoulli(chi, k) * Fraction(-1, k)


def trivial_zero_order(chi: DirichletCharacter, n: int) -> int:
    """1 when the Gamma factor forces a (simple) zero at n < 0, else 0.

    Parity rule: the zero occurs exactly when chi(-1) != (-1)^(1-n); the
    shortcut is asserted against the exact value.
    """
    if n >= 0:
        raise ValueError("n must be < 0")
    chi = chi.primitive()
    predicted = 1 if chi.parity != parity_sign(1 - n) else 0
    exact_zero = L_at_nonpositive(chi, n).is_zero
    assert exact_zero == bool(predicted), "parity shortcut disagrees with exact L-value"
    return predicted


def dedekind_order(field: AbelianFieldSpec, n: int) -> int:
    """Vanishing order of zeta_F at n < 0 (sum of trivial-zero orders)."""
    total = sum(trivial_zero_order(chi, n) for chi in field.characters())
    r1, r2 = field.signature
    expected = r2 if n % 2 != 0 else r1 + r2
    if total != expected:
        raise ZetaforgeError(
            f"character count {total} disagrees with signature formula {expected}"
        )
    return total


# ---------------------------------------------------------------------------
# Numeric leading values


@dataclass(frozen=True)
class LeadingValue:
    """High-precision complex value with an error bound."""

    value: object  # mpmath mpc
    error: object  # mpmath mpf
    order: int
    exact: CyclotomicNumber | None = None


@dataclass(frozen=True)
class SpecialValue:
    """Vanishing order and leading Taylor coefficient at s = n.

    `exact` is set when the value is provably an exact rational; `numeric`
    always holds a real high-precision evaluation with `error` bound.
    """

    order: int
    exact: Fraction | None
    numeric: object  # mpmath mpf
    error: object  # mpmath mpf

    def __post_init__(self):
        if self.exact is not None:
            delta = abs(
                self.numeric - mp.mpf(self.exact.numerator) / mp.mpf(self.exact.denominator)
            )
            if not delta <= self.error:
                raise ValueError("numeric mirror disagrees with the exact value")

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __str__(self):
        if self.is_exact:
            return f"order {self.order}, value {self.exact} (exact)"
        return f"order {self.order}, value ~ {mp.nstr(self.numeric, 20)} (+/- {mp.nstr(self.error, 3)})"


def _working_dps(precision: int, conductor: int) -> int:
    if precision < 1:
        raise PrecisionUnderflowError("precision must be a positive digit count")
    guard = 15 + len(str(conductor + 2))
    return precision + guard


def gauss_sum(chi: DirichletCharacter, precision: int = DEFAULT_PRECISION):
    """tau(chi) = sum_a chi(a) e^(2 pi i a / f) by direct summation."""
    chi = chi.primitive()
    f = chi.modulus
    dps = _working_dps(precision, f)
    with mp.workdps(dps):
        total = mp.mpc(0)
        for a in range(1, f + 1):
            k = chi.exponent(a)
            if k is None:
                continue
            angle = 2 * mp.pi * (mp.mpf(k) / chi.order + mp.mpf(a) / f)
            total += mp.e ** (1j * angle)
        return total


def _hurwitz_L(chi: DirichletCharacter, s, dps: int):
    """L(s, chi) = f^(-s) sum_a chi(a) zeta(s, a/f) (any s != 1 pole case)."""
    f = chi.modulus
    with mp.workdps(dps):
        total = mp.mpc(0)
        for a in range(1, f + 1):
            k = chi.exponent(a)
            if k is None:
                continue
            root = mp.e ** (2j * mp.pi * mp.mpf(k) / chi.order)
            total += root * mp.zeta(s, mp.mpf(a) / f)
        return total * mp.mpf(f) ** (-s)


def leading_value(chi: DirichletCharacter, n: int, precision: int | None = None) -> LeadingValue:
    """Leading Taylor coefficient of L(s, chi) at s = n < 0.

    Order 0: the exact value, embedded numerically.  Order 1: L'(n, chi)
    from the functional equation (see the module docstring); the Gauss sum
    is evaluated by direct summation.
    """
    if precision is None:
        precision = default_precision()
    if n >= 0:
        raise ValueError("n must be < 0")
    chi = chi.primitive()
    f = chi.modulus
    order = trivial_zero_order(chi, n)
    dps = _working_dps(precision, f)
    with mp.workdps(dps):
        if order == 0:
            exact = L_at_nonpositive(chi, n)
            value = exact.numeric(dps)
            error = (abs(value) + 1) * mp.mpf(10) ** (-(precision + 5))
            return LeadingValue(value=value, error=error, order=0, exact=exact)
        a = 0 if chi.parity == 1 else 1
        m = -(n + a) // 2
        assert (n + a) % 2 == 0
        eps = gauss_sum(chi, precision) / (1j**a * mp.sqrt(f))
        gamma_part = mp.gamma(mp.mpf(1 - n + a) / 2)
        archimedean = (mp.mpf(f) / mp.pi) ** (mp.mpf(1 - 2 * n) / 2)
        residue = mp.mpf(parity_sign(m)) * mp.factorial(m) / 2
        l_pos = _hurwitz_L(chi.conjugate(), mp.mpf(1 - n), dps)
        value = eps * archimedean * gamma_part * residue * l_pos
        error = (abs(value) + 1) * mp.mpf(10) ** (-(precision + 5))
        if error > mp.mpf(10) ** (-precision) * (abs(value) + 1):
            raise PrecisionUnderflowError("could not reach the requested precision")
        return LeadingValue(value=value, error=error, order=1, exact=None)


def dedekind_special_value(
    field: AbelianFieldSpec, n: int, precision: int | None = None
) -> SpecialValue:
    """Order and leading coefficient of zeta_F(s) = prod_chi L(s, chi) at n < 0.

    When the order is zero the product of the exact cyclotomic values must
    collapse to a rational number; failure to do so raises, since the
    character set of a field is closed under conjugation.
    """
    if precision is None:
        precision = default_precision()
    leads = [leading_value(chi, n, precision) for chi in field.characters()]
    order = sum(lv.order for lv in leads)
    dps = _working_dps(precision, field.conductor)
    with mp.workdps(dps):
        numeric = mp.mpc(1)
        rel_err = mp.mpf(0)
        for lv in leads:
            numeric *= lv.value
            rel_err += lv.error / (abs(lv.value) + mp.mpf(10) ** (-dps))
        error = (abs(numeric) + 1) * (rel_err + mp.mpf(10) ** (-(precision + 5)))
        if order == 0:
            exact = CyclotomicNumber.rational(1)
            for lv in leads:
                exact = exact * lv.exact
            if not exact.is_rational:
                raise RationalityFailureError(
                    f"order-0 Dedekind value of {field} did not collapse to a rational"
                )
            value = exact.rational_value()
            return SpecialValue(
                order=0,
                exact=value,
                numeric=mp.mpf(value.numerator) / mp.mpf(value.denominator),
                error=error,
            )
        if abs(mp.im(numeric)) > error:
            raise RationalityFailureError("special value of a Dedekind zeta must be real")
        return SpecialValue(order=order, exact=None, numeric=mp.re(numeric), error=error)
