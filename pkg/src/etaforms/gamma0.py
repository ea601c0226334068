"""Invariants and cusps of the modular curve X_0(N)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ntheory import DomainError, divisors, euler_phi, factorize, kronecker


@dataclass(frozen=True)
class CuspRep:
    a: int
    c: int
    width: int
    multiplicity_class: int


@dataclass(frozen=True)
class CurveInvariants:
    N: int
    m: int
    eps2: int
    eps3: int
    eps_inf: int
    genus: int


def index(N: int) -> int:
    """[SL2(Z) : Gamma_0(N)]."""
    m = N
    for p, _ in factorize(N) if N > 1 else ():
        m = m // p * (p + 1)
    return m


def phi_gcd(c: int, N: int) -> int:
    """phi((c, N/c)), the number of cusps with denominator c."""
    return euler_phi(math.gcd(c, N // c))


@lru_cache(maxsize=4096)
def invariants(N: int) -> CurveInvariants:
    if N < 1:
        raise DomainError("level must be positive")
    primes = [p for p, _ in factorize(N)] if N > 1 else []
    m = index(N)
    eps2 = 0
    if N % 4:
        eps2 = math.prod(1 + kronecker(-4, p) for p in primes)
    eps3 = 0
    if N % 9:
        eps3 = math.prod(1 + kronecker(-3, p) for p in primes)
    eps_inf = sum(phi_gcd(c, N) for c in divisors(N))
    g = 1 + Fraction(m, 12) - Fraction(eps2, 4) - Fraction(eps3, 3) - Fraction(eps_inf, 2)
    if g.denominator != 1 or g < 0:
        raise AssertionError(f"genus of X_0({N}) came out as {g}")
    return CurveInvariants(N, m, eps2, eps3, eps_inf, int(g))


def cusp_width(c: int, N: int) -> int:
    return N // math.gcd(N, c * c)


def cusp_representatives(N: int) -> list[CuspRep]:
    """One a/c per cusp class, ordered by c then by the residue a0."""
    if N < 1:
        raise DomainError("level must be positive")
    reps = []
    for c in divisors(N):
        g = math.gcd(c, N // c)
        cls = euler_phi(g)
        for a0 in range(g):
            if math.gcd(math.gcd(a0, c), N // c) != 1:
                continue
            a = a0
            while math.gcd(a, c) != 1:
                a += g
            reps.append(CuspRep(a, c, cusp_width(c, N), cls))
    return reps
