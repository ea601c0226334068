"""Exact arithmetic with roots of unity and rational combinations of them.

A :class:`Cyclotomic` value is a finite sum ``sum_j q_j e(j/M)`` with rational
``q_j``.  Equality is decided exactly by rewriting every root of unity in a
fixed basis of Q(zeta_M): the tensor product over prime powers ``p^e || M`` of
the power bases ``{zeta_{p^e}^i : 0 <= i < (p-1) p^(e-1)}``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Union

from .ntheory import DomainError, factorize

Scalar = Union[int, Fraction]


class UnityRoot:
    """The root of unity e(x) = exp(2 pi i x), x a rational taken mod 1."""

    __slots__ = ("exponent",)

    def __init__(self, exponent: Scalar | str = 0) -> None:
        x = Fraction(exponent)
        self.exponent = x - math.floor(x)

    def __mul__(self, other: UnityRoot) -> UnityRoot:
        return UnityRoot(self.exponent + other.exponent)

    def __truediv__(self, other: UnityRoot) -> UnityRoot:
        return UnityRoot(self.exponent - other.exponent)

    def __pow__(self, n: Scalar) -> UnityRoot:
        return UnityRoot(self.exponent * n)

    def inverse(self) -> UnityRoot:
        return UnityRoot(-self.exponent)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UnityRoot) and self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash(("UnityRoot", self.exponent))

    def __repr__(self) -> str:
        return f"e({self.exponent})"

    def order(self) -> int:
        return self.exponent.denominator

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * float(self.exponent))

    def to_cyclotomic(self) -> Cyclotomic:
        return Cyclotomic.root(self.exponent)


# ------------------------------------------------------------------ polynomials

@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Coefficients of Phi_M, lowest degree first."""
    if M < 1:
        raise DomainError("cyclotomic polynomial needs M >= 1")
    num = [-1] + [0] * (M - 1) + [1]  # X^M - 1
    for d in range(1, M):
        if M % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


def poly_mod_cyclotomic(coeffs: Mapping[int, Scalar], M: int) -> list[Fraction]:
    """Reduce sum c_j X^j modulo Phi_M (slow reference route for zero tests)."""
    phi = cyclotomic_polynomial(M)
    deg = len(phi) - 1
    top = max(coeffs, default=0)
    work = [Fraction(0)] * (max(top + 1, deg))
    for j, c in coeffs.items():
        work[j % M] += c
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            for j in range(deg + 1):
                work[i - deg + j] -= c * phi[j]
    return work[:deg]


# ------------------------------------------------------------- basis reduction

@lru_cache(maxsize=None)
def _modulus_data(M: int) -> tuple[tuple[int, int, int, int], ...]:
    """Per prime power q = p^e || M: (p, q, threshold, idempotent)."""
    data = []
    for p, e in factorize(M) if M > 1 else ():
        q = p**e
        rest = M // q
        idem = rest * pow(rest, -1, q) % M  # 1 mod q, 0 mod M/q
        data.append((p, q, (p - 1) * q // p, idem))
    return tuple(data)


@lru_cache(maxsize=1 << 18)
def _basis_expansion(M: int, j: int) -> tuple[tuple[int, int], ...]:
    """Express e(j/M) in the basis as ((basis exponent, sign), ...)."""
    terms: list[tuple[int, int]] = [(0, 1)]
    for p, q, thr, idem in _modulus_data(M):
        comp = j % q
        if comp < thr:
            opts = [(comp, 1)]
        else:
            step = q // p
            base = comp - thr
            opts = [(base + i * step, -1) for i in range(p - 1)]
        terms = [((x + c * idem) % M, s * t) for x, s in terms for c, t in opts]
    return tuple(terms)


class Cyclotomic:
    """An element of Q(zeta_M), stored as a sparse map j -> q_j."""

    __slots__ = ("M", "coeffs", "_canon")

    def __init__(self, M: int, coeffs: Mapping[int, Scalar] | None = None) -> None:
        if M < 1:
            raise DomainError("modulus must be positive")
        self.M = M
        clean: dict[int, Scalar] = {}
        for j, c in (coeffs or {}).items():
            if c:
                k = j % M
                v = clean.get(k, 0) + c
                if v:
                    clean[k] = v
                else:
                    clean.pop(k, None)
        self.coeffs = clean
        self._canon: dict[int, Scalar] | None = None

    # constructors
    @classmethod
    def rational(cls, q: Scalar) -> Cyclotomic:
        return cls(1, {0: q})

    @classmethod
    def root(cls, x: Scalar, coefficient: Scalar = 1) -> Cyclotomic:
        x = Fraction(x)
        return cls(x.denominator, {x.numerator % x.denominator: coefficient})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Scalar, Scalar]]) -> Cyclotomic:
        """Build sum c * e(x) from (x, c) pairs with rational x."""
        items = [(Fraction(x), c) for x, c in terms]
        M = 1
        for x, _ in items:
            M = math.lcm(M, x.denominator)
        out: dict[int, Scalar] = {}
        for x, c in items:
            j = x.numerator * (M // x.denominator) % M
            out[j] = out.get(j, 0) + c
        return cls(M, out)

    # structure
    def lift(self, M: int) -> Cyclotomic:
        if M % self.M:
            raise DomainError(f"cannot lift modulus {self.M} to {M}")
        f = M // self.M
        return Cyclotomic(M, {j * f: c for j, c in self.coeffs.items()})

    def _align(self, other: Cyclotomic | Scalar) -> tuple[Cyclotomic, Cyclotomic]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        M = math.lcm(self.M, other.M)
        a = self if self.M == M else self.lift(M)
        b = other if other.M == M else other.lift(M)
        return a, b

    def canonical(self) -> dict[int, Scalar]:
        if self._canon is None:
            out: dict[int, Scalar] = {}
            M = self.M
            for j, c in self.coeffs.items():
                for k, s in _basis_expansion(M, j):
                    out[k] = out.get(k, 0) + s * c
            self._canon = {k: v for k, v in out.items() if v}
        return self._canon

    def is_zero(self) -> bool:
        return not self.canonical()

    # arithmetic
    def __add__(self, other: Cyclotomic | Scalar) -> Cyclotomic:
        a, b = self._align(other)
        merged = dict(a.coeffs)
        for j, c in b.coeffs.items():
            merged[j] = merged.get(j, 0) + c
        return Cyclotomic(a.M, merged)

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.M, {j: -c for j, c in self.coeffs.items()})

    def __sub__(self, other: Cyclotomic | Scalar) -> Cyclotomic:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Cyclotomic:
        return Cyclotomic.rational(other) - self

    def __mul__(self, other: Cyclotomic | Scalar) -> Cyclotomic:
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            return Cyclotomic(self.M, {j: c * other for j, c in self.coeffs.items()})
        a, b = self._align(other)
        # multiply the reduced forms to keep sizes bounded
        ca, cb = a.canonical(), b.canonical()
        M = a.M
        out: dict[int, Scalar] = {}
        for i, x in ca.items():
            for j, y in cb.items():
                k = (i + j) % M
                out[k] = out.get(k, 0) + x * y
        return Cyclotomic(M, out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            raise TypeError("division by a Cyclotomic is not supported")
        return self * _inv(other)

    def __pow__(self, n: int) -> Cyclotomic:
        if n < 0:
            raise DomainError("negative powers are not supported")
        result = Cyclotomic.rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:  # values are compared exactly, hashing is coarse
        return hash(round(self.to_complex().real, 6))

    # views
    def to_complex(self) -> complex:
        M = self.M
        return sum(
            (complex(c) * cmath.exp(2j * math.pi * j / M) for j, c in self.coeffs.items()),
            0j,
        )

    def rational_value(self) -> Fraction | None:
        """The value as a rational number, or None when it is not rational."""
        canon = self.canonical()
        if not canon:
            return Fraction(0)
        if set(canon) == {0}:
            return Fraction(canon[0])
        return None

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        canon = self.canonical()
        if not canon:
            return "0"
        parts = []
        for j in sorted(canon):
            c = canon[j]
            if j == 0:
                parts.append(str(c))
            else:
                x = Fraction(j, self.M)
                parts.append(f"{c}*e({x})")
        return " + ".join(parts)


def _inv(q: Scalar) -> Fraction:
    q = Fraction(q)
    if q == 0:
        raise ZeroDivisionError("division by zero")
    return 1 / q


def e(x: Scalar, coefficient: Scalar = 1) -> Cyclotomic:
    """Shorthand for coefficient * e(x)."""
    return Cyclotomic.root(x, coefficient)


# ------------------------------------------------------------ square roots

@lru_cache(maxsize=512)
def sqrt_embed(a: int) -> Cyclotomic:
    """sqrt(a) for odd a >= 1, via the quadratic Gauss sum."""
    if a < 1 or a % 2 == 0:
        raise DomainError("sqrt_embed needs an odd positive integer")
    if a == 1:
        return Cyclotomic.rational(1)
    counts: dict[int, int] = {}
    for x in range(a):
        j = x * x % a
        counts[j] = counts.get(j, 0) + 1
    g = Cyclotomic(a, counts)
    if a % 4 == 1:
        return g
    # divide by i: multiply by e(-1/4)
    return g * e(Fraction(-1, 4))


@lru_cache(maxsize=512)
def sqrt_int(n: int) -> Cyclotomic:
    """sqrt(n) for any positive integer, using sqrt(2) = e(1/8) + e(-1/8)."""
    if n < 1:
        raise DomainError("sqrt_int needs a positive integer")
    square = 1
    rest = 1
    for p, k in factorize(n) if n > 1 else ():
        square *= p ** (k // 2)
        if k % 2:
            rest *= p
    if rest % 2 == 0:
        root2 = e(Fraction(1, 8)) + e(Fraction(-1, 8))
        return root2 * sqrt_embed(rest // 2) * square
    return sqrt_embed(rest) * square
