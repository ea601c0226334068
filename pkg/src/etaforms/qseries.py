"""Truncated q-series with a rational exponent offset and exact coefficients.

Integral-exponent eta-quotients are expanded with big-integer (Kronecker
substitution) multiplication of pentagonal and partition series; rational
exponents go through the logarithmic-derivative recurrence over Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .etaquot import EtaQuotient
from .ntheory import DomainError, divisors

Coeff = Union[int, Fraction]


class PrecisionError(DomainError):
    """A coefficient beyond the known precision was requested."""


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class QSeries:
    """sum_{j < T} coeffs[j] q^(offset + j) + O(q^(offset + T))."""

    offset: Fraction
    coeffs: tuple[Coeff, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", Fraction(self.offset))
        object.__setattr__(self, "coeffs", tuple(_norm(c) for c in self.coeffs))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @property
    def end(self) -> Fraction:
        """First exponent that is not known."""
        return self.offset + len(self.coeffs)

    @classmethod
    def one(cls, T: int) -> QSeries:
        return cls(Fraction(0), (1,) + (0,) * (T - 1)) if T else cls(Fraction(0), ())

    # access
    def coefficient(self, n: Fraction | int | str) -> Fraction:
        n = Fraction(n)
        if n >= self.end:
            raise PrecisionError(f"q^{n} is beyond the precision O(q^{self.end})")
        j = n - self.offset
        if j < 0 or j.denominator != 1:
            return Fraction(0)
        return Fraction(self.coeffs[int(j)])

    def __getitem__(self, j: int) -> Coeff:
        return self.coeffs[j]

    def truncate(self, T: int) -> QSeries:
        if T > self.precision:
            raise PrecisionError(f"cannot extend precision from {self.precision} to {T}")
        return QSeries(self.offset, self.coeffs[:T])

    # arithmetic
    def _aligned(self, other: QSeries) -> tuple[Fraction, list[Coeff], list[Coeff]]:
        d = other.offset - self.offset
        if d.denominator != 1:
            raise DomainError("offsets differ by a non-integer; series live on different cosets")
        d = int(d)
        lo = min(self.offset, other.offset)
        end = min(self.end, other.end)
        T = max(int(end - lo), 0)
        a = [0] * T
        b = [0] * T
        for j, c in enumerate(self.coeffs):
            i = j + int(self.offset - lo)
            if i < T:
                a[i] = c
        for j, c in enumerate(other.coeffs):
            i = j + int(other.offset - lo)
            if i < T:
                b[i] = c
        return lo, a, b

    def __add__(self, other: QSeries) -> QSeries:
        lo, a, b = self._aligned(other)
        return QSeries(lo, tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> QSeries:
        return QSeries(self.offset, tuple(-c for c in self.coeffs))

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def scale(self, c: Coeff) -> QSeries:
        return QSeries(self.offset, tuple(c * x for x in self.coeffs))

    def __mul__(self, other: QSeries | Coeff) -> QSeries:
        if not isinstance(other, QSeries):
            return self.scale(other)
        T = min(self.precision, other.precision)
        return QSeries(self.offset + other.offset, tuple(mul_trunc(self.coeffs, other.coeffs, T)))

    __rmul__ = __mul__

    def inverse(self) -> QSeries:
        if not self.coeffs or self.coeffs[0] == 0:
            raise DomainError("leading coefficient must be nonzero")
        c0 = self.coeffs[0]
        T = self.precision
        out: list[Coeff] = [Fraction(1, 1) / c0] + [0] * (T - 1)
        for j in range(1, T):
            s = sum(self.coeffs[i] * out[j - i] for i in range(1, j + 1) if self.coeffs[i])
            out[j] = -Fraction(s) / c0
        return QSeries(-self.offset, tuple(out))

    def __pow__(self, n: int) -> QSeries:
        if n < 0:
            return self.inverse() ** (-n)
        result = QSeries.one(self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute(self, n: int) -> QSeries:
        """q -> q^n."""
        if n < 1:
            raise DomainError("substitution exponent must be positive")
        T = self.precision * n
        out: list[Coeff] = [0] * T
        for j, c in enumerate(self.coeffs):
            out[j * n] = c
        return QSeries(self.offset * n, tuple(out))

    def pow_rational(self, r: Fraction | int | str) -> QSeries:
        return pow_rational(self, r)

    # views
    def to_json(self) -> dict:
        return {"offset": _fmt(self.offset), "coeffs": [_fmt(Fraction(c)) for c in self.coeffs],
                "precision": self.precision}

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{_fmt(Fraction(c))}*q^{_fmt(self.offset + j)}")
        return " + ".join(terms + [f"O(q^{_fmt(self.end)})"])


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------- multiplication

def _is_int_seq(a: Sequence[Coeff]) -> bool:
    return all(type(c) is int for c in a)


def _pack(a: Sequence[int], nbytes: int) -> int:
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else bytes(nbytes) for c in a)
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else bytes(nbytes) for c in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker_mul(a: Sequence[int], b: Sequence[int], T: int) -> list[int]:
    """Integer polynomial product truncated to T terms via one big-int product."""
    a, b = list(a[:T]), list(b[:T])
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return [0] * T
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    ndig = len(a) + len(b) - 1
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes((bytes(nbytes - 1) + b"\x80") * ndig, "little")
    raw = (prod + bias).to_bytes(nbytes * ndig, "little")
    keep = min(T, ndig)
    out = [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(keep)]
    return out + [0] * (T - keep)


def mul_schoolbook(a: Sequence[Coeff], b: Sequence[Coeff], T: int) -> list[Coeff]:
    out: list[Coeff] = [0] * T
    nzb = [(j, y) for j, y in enumerate(b[:T]) if y]
    for i, x in enumerate(a[:T]):
        if not x:
            continue
        for j, y in nzb:
            if i + j >= T:
                break
            out[i + j] += x * y
    return out


def mul_trunc(a: Sequence[Coeff], b: Sequence[Coeff], T: int) -> list[Coeff]:
    if _is_int_seq(a[:T]) and _is_int_seq(b[:T]):
        return _kronecker_mul(a, b, T)
    # clear denominators and reuse the integer kernel
    da = math.lcm(1, *(Fraction(c).denominator for c in a[:T]))
    db = math.lcm(1, *(Fraction(c).denominator for c in b[:T]))
    ia = [int(c * da) for c in a[:T]]
    ib = [int(c * db) for c in b[:T]]
    return [Fraction(c, da * db) for c in _kronecker_mul(ia, ib, T)]


# ------------------------------------------------------- eta expansions

@lru_cache(maxsize=64)
def _pentagonal(T: int) -> tuple[int, ...]:
    """prod_{m >= 1} (1 - q^m) to T terms."""
    out = [0] * T
    k = 0
    while True:
        sign = -1 if k % 2 else 1
        hit = False
        for g in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2):
            if g < T:
                out[g] = sign
                hit = True
        if not hit:
            break
        k += 1
    return tuple(out)


@lru_cache(maxsize=64)
def _partitions(T: int) -> tuple[int, ...]:
    """1 / prod (1 - q^m) to T terms (partition numbers)."""
    p = [0] * T
    if T:
        p[0] = 1
    for n in range(1, T):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return tuple(p)


def eta_expansion(n: int, T: int) -> QSeries:
    """eta(n tau) = q^(n/24) prod (1 - q^(n m)), first T coefficients."""
    if n < 1 or T < 0:
        raise DomainError("need n >= 1 and T >= 0")
    base = _pentagonal(-(-T // n) if T else 0)
    out = [0] * T
    for j, c in enumerate(base):
        if j * n < T:
            out[j * n] = c
    return QSeries(Fraction(n, 24), tuple(out))


def _int_power(base: list[int], e: int, T: int) -> list[int]:
    result = [1] + [0] * (T - 1)
    while e:
        if e & 1:
            result = _kronecker_mul(result, base, T)
        e >>= 1
        if e:
            base = _kronecker_mul(base, base, T)
    return result


def _eta_product_int(exps: dict[int, int], T: int) -> list[int]:
    out = [1] + [0] * (T - 1)
    for n, r in exps.items():
        Tn = -(-T // n)
        base = list(_pentagonal(Tn) if r > 0 else _partitions(Tn))
        part = _int_power(base, abs(r), Tn)
        spread = [0] * T
        for j, c in enumerate(part):
            if j * n < T:
                spread[j * n] = c
        out = _kronecker_mul(out, spread, T)
    return out


def _sigma1(n: int) -> int:
    return sum(divisors(n))


def eta_product_recurrence(exps: dict[int, Fraction], T: int) -> list[Fraction]:
    """prod (q^n; q^n)_inf^(r_n) via j c_j = sum_i g_i c_{j-i} (any rational r_n)."""
    g = [Fraction(0)] * T
    for i in range(1, T):
        g[i] = -sum((r * n * _sigma1(i // n) for n, r in exps.items() if i % n == 0), Fraction(0))
    c = [Fraction(0)] * T
    if T:
        c[0] = Fraction(1)
    for j in range(1, T):
        c[j] = sum((g[i] * c[j - i] for i in range(1, j + 1) if g[i]), Fraction(0)) / j
    return c


_EXPAND_CACHE: dict[EtaQuotient, QSeries] = {}


def expand(f: EtaQuotient, T: int) -> QSeries:
    """First T coefficients of f, offset x_N / 24."""
    if T < 0:
        raise DomainError("T must be nonnegative")
    hit = _EXPAND_CACHE.get(f)
    if hit is not None and hit.precision >= T:
        return hit.truncate(T)
    if f.is_integral:
        coeffs = _eta_product_int({n: int(r) for n, r in f.exponents.items()}, T)
    else:
        ints = {n: int(r) for n, r in f.exponents.items() if r.denominator == 1}
        fracs = {n: r for n, r in f.exponents.items() if r.denominator != 1}
        head = _eta_product_int(ints, T) if ints else [1] + [0] * (T - 1)
        tail = eta_product_recurrence(fracs, T)
        coeffs = mul_trunc(head, tail, T) if T else []
    s = QSeries(f.x_N / 24, tuple(coeffs))
    _EXPAND_CACHE[f] = s
    return s


def clear_cache() -> None:
    _EXPAND_CACHE.clear()


def pow_rational(s: QSeries, r: Fraction | int | str) -> QSeries:
    """(1 + h)^r for a series with leading coefficient 1; the offset scales by r."""
    r = Fraction(r)
    if not s.coeffs or s.coeffs[0] != 1:
        raise DomainError("pow_rational needs leading coefficient 1")
    T = s.precision
    a: list[Fraction] = [Fraction(1)] + [Fraction(0)] * (T - 1)
    c = s.coeffs
    nz = [i for i in range(1, T) if c[i]]
    for j in range(1, T):
        acc = Fraction(0)
        for i in nz:
            if i > j:
                break
            acc += (r * i - (j - i)) * c[i] * a[j - i]
        a[j] = acc / j
    return QSeries(s.offset * r, tuple(a))
