"""Elementary number theory: symbols, Dedekind sums, the Psi function."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class DomainError(ValueError):
    """Raised when an argument lies outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"determinant of {self} is not 1")

    def __matmul__(self, other: SL2Matrix) -> SL2Matrix:
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> SL2Matrix:
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> SL2Matrix:
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)


T = SL2Matrix(1, 1, 0, 1)
S = SL2Matrix(0, -1, 1, 0)
I2 = SL2Matrix(1, 0, 0, 1)
MINUS_I = SL2Matrix(-1, 0, 0, -1)


# ---------------------------------------------------------------- factorization

@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of |n| as ((p, e), ...) with p ascending."""
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def odd_part(n: int) -> int:
    n = abs(n)
    while n and n % 2 == 0:
        n //= 2
    return n


# ----------------------------------------------------------- Kronecker symbol

def kronecker(m: int, n: int) -> int:
    """Kronecker-Jacobi symbol (m/n), totally defined on Z x Z.

    Conventions: (m/1) = 1; (m/0) = 1 iff m = +-1; (m/-1) = sign of m with
    (0/-1) = 1; (m/2) = 0 for even m, else (-1)^((m^2-1)/8); completely
    multiplicative in n.
    """
    if n == 0:
        return 1 if m in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if m < 0:
            result = -1
    if n == 1:
        return result
    if m % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 == 1 and m % 8 in (3, 5):
        result = -result
    # n odd positive: Jacobi symbol by reciprocity
    a = m % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# -------------------------------------------------------------- Dedekind sums

def sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    """s(h, k) by direct O(k) summation; kept as the reference oracle."""
    if k <= 0:
        raise DomainError("Dedekind sum needs k >= 1")
    # 4k^2 * ((r/k)) * ((hr/k)) is an integer, so accumulate over Z
    total = 0
    for r in range(1, k):
        hr = (h * r) % k
        if hr:
            total += (2 * r - k) * (2 * hr - k)
    return Fraction(total, 4 * k * k)


@lru_cache(maxsize=1 << 16)
def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h, k) via the reciprocity law (agrees with dedekind_sum_direct)."""
    if k <= 0:
        raise DomainError("Dedekind sum needs k >= 1")
    g = math.gcd(h, k)
    h, k = h // g, k // g
    h %= k
    sign = 1
    total = Fraction(0)
    while k > 1 and h:
        # s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12
        total += sign * (Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4))
        sign = -sign
        h, k = k % h, h
    return total


def psi(g: SL2Matrix) -> int:
    """The integer-valued function Psi on SL2(Z) attached to log eta."""
    a, b, c, d = g.a, g.b, g.c, g.d
    if c > 0:
        val = Fraction(a + d, c) + 12 * dedekind_sum(-d, c) - 3
    elif c < 0:
        val = Fraction(a + d, c) + 12 * dedekind_sum(d, -c) + 3
    elif a > 0:
        return b
    else:
        return -b - 6
    if val.denominator != 1:
        raise AssertionError(f"Psi({g}) = {val} is not an integer")
    return int(val)


# --------------------------------------------------------- rad decomposition

def rad_decomposition(m: int) -> tuple[int, int, int, int, int, int]:
    """(radE, radO, rad, rad', irad, irad') of an odd positive integer."""
    if m <= 0 or m % 2 == 0:
        raise DomainError("rad_decomposition needs an odd positive integer")
    rad_e = rad_o = 1
    for p, e in factorize(m):
        if e % 2 == 0:
            rad_e *= p
        else:
            rad_o *= p
    rad = rad_e * rad_o
    rad_prime = rad_e * rad_e * rad_o
    return rad_e, rad_o, rad, rad_prime, m // rad, m // rad_prime


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine x = r1 mod m1 and x = r2 mod m2 (coprime moduli)."""
    inv = pow(m1, -1, m2)
    x = r1 + m1 * ((r2 - r1) * inv % m2)
    return x % (m1 * m2), m1 * m2


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
