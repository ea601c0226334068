"""Multiplier systems of eta-quotients and their classification on the double cover."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .cyclo import UnityRoot
from .etaquot import EtaQuotient
from .ntheory import (
    MINUS_I,
    DomainError,
    SL2Matrix,
    T,
    divisors,
    factorize,
    is_square,
    kronecker,
    psi,
    valuation,
)


@dataclass(frozen=True)
class LiftedMatrix:
    """An element (gamma, eps) of the D-fold cover of Gamma_0(N)."""

    g: SL2Matrix
    eps: UnityRoot = UnityRoot(0)


def chi_eval(f: EtaQuotient, x: LiftedMatrix, D: int | None = None) -> UnityRoot:
    """The multiplier system of f at (gamma, eps).

    ``D`` defaults to the smallest multiple of 2 that is a valid cover index,
    so integral-exponent quotients live on the double cover.
    """
    g = x.g
    if g.c % f.N:
        raise DomainError(f"{g} is not in Gamma_0({f.N})")
    if D is None:
        D = math.lcm(2, f.cover_index)
    k = f.weight
    if (D * k).denominator != 1 or (x.eps.exponent * D).denominator != 1:
        raise DomainError(f"eps and weight are not compatible with cover index {D}")
    total = Fraction(0)
    for n, r in f.exponents.items():
        total += r * psi(SL2Matrix(g.a, g.b * n, g.c // n, g.d))
    return UnityRoot(-x.eps.exponent * D * k + total / 24)


def chi_eta_petersson(g: SL2Matrix, eps: int = 1) -> UnityRoot:
    """Closed form of the eta multiplier on the double cover (eps = +-1)."""
    if eps not in (1, -1):
        raise DomainError("eps must be +1 or -1")
    a, b, c, d = g.a, g.b, g.c, g.d
    if c % 2:
        sym = kronecker(d, abs(c))
        x = Fraction((a - 2 * d) * c - b * d * (c * c - 1) + (3 * d - 3) * c, 24)
    else:
        sym = kronecker(c, d)
        x = Fraction((a - 2 * d) * c - b * d * (c * c - 1) + 3 * d - 3, 24)
    if sym == 0:
        raise AssertionError(f"Kronecker symbol vanished at {g}")
    sign = eps * sym
    return UnityRoot(x + (Fraction(1, 2) if sign < 0 else 0))


def chi_via_petersson(f: EtaQuotient, g: SL2Matrix, eps: int = 1) -> UnityRoot:
    """Second route for integral exponents: product of eta factors at (a, bn; c/n, d)."""
    if not f.is_integral:
        raise DomainError("the product route needs integral exponents")
    if g.c % f.N:
        raise DomainError(f"{g} is not in Gamma_0({f.N})")
    out = UnityRoot(0)
    for n, r in f.exponents.items():
        out = out * chi_eta_petersson(SL2Matrix(g.a, g.b * n, g.c // n, g.d), eps) ** int(r)
    return out


def random_gamma0(N: int, rng: random.Random, length: int = 30) -> SL2Matrix:
    """A random word in T, (1, 0; N, 1) and -I."""
    V = SL2Matrix(1, 0, N, 1)
    gens = [T, T.inverse(), V, V.inverse(), MINUS_I]
    g = SL2Matrix(1, 0, 0, 1)
    for _ in range(rng.randint(0, length)):
        g = g @ rng.choice(gens)
    return g


# ------------------------------------------------------- Newman equivalence

def _as_vector(N: int, r: Sequence[int] | Mapping[int, int]) -> list[int]:
    divs = divisors(N)
    if isinstance(r, Mapping):
        vals = [r.get(n, 0) for n in divs]
    else:
        vals = list(r)
        if len(vals) != len(divs):
            raise DomainError(f"expected {len(divs)} exponents for level {N}")
    out = []
    for v in vals:
        if Fraction(v).denominator != 1:
            raise DomainError("exponents must be integers")
        out.append(int(v))
    return out


def newman_equivalent(r: Sequence[int] | Mapping[int, int],
                      r2: Sequence[int] | Mapping[int, int], N: int) -> bool:
    """True iff the two integral-exponent vectors give the same character."""
    u, v = _as_vector(N, r), _as_vector(N, r2)
    if sum(u) != sum(v):
        raise DomainError("the two exponent vectors have different weights")
    diff = [a - b for a, b in zip(u, v)]
    divs = divisors(N)
    if sum(n * t for n, t in zip(divs, diff)) % 24:
        return False
    if sum(N // n * t for n, t in zip(divs, diff)) % 24:
        return False
    return is_square(math.prod(n for n, t in zip(divs, diff) if t % 2))


# ------------------------------------------------------------ classification

def B_N(N: int) -> list[int]:
    out: list[int] = []
    for p, a in factorize(N) if N > 1 else ():
        if p == 2:
            out += [2] if a == 1 else [2, 4] if a == 2 else [2 ** (a - 2), 2 ** (a - 1), 2**a]
        elif p == 3:
            out += [3] if a == 1 else [3 ** (a - 1), 3**a]
        else:
            out.append(p)
    return sorted(out)


def _local_step(N: int, n: int, c: int, state: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    s1, s2, p2, p3 = state
    s1 = (s1 + (n - 1) * c) % 24
    s2 = (s2 + (N // n - N) * c) % 24
    if c % 2:
        if n % 2 == 0:
            p2 ^= valuation(n, 2) & 1
        elif n % 3 == 0:
            p3 ^= valuation(n, 3) & 1
        else:
            p2 |= 2  # odd exponent at p != 2, 3: never allowed
    return s1, s2, p2, p3


def _solvable_suffixes(N: int, order: tuple[int, ...]) -> list[set[tuple[int, int, int, int]]]:
    """reach[i] = states produced by some choice of c on order[i:] starting from zero."""
    reach: list[set] = [set() for _ in range(len(order) + 1)]
    reach[-1] = {(0, 0, 0, 0)}
    for i in range(len(order) - 1, -1, -1):
        n = order[i]
        nxt = set()
        for c in range(24):
            for st in reach[i + 1]:
                nxt.add(_local_step(N, n, c, st))
        reach[i] = nxt
    return reach


@lru_cache(maxsize=2048)
def _delta_cached(N: int, order: tuple[int, ...]) -> tuple[int, ...]:
    reach = _solvable_suffixes(N, order)
    deltas = []
    for i, n in enumerate(order):
        for m in range(1, 25):
            s1, s2, p2, p3 = _local_step(N, n, m, (0, 0, 0, 0))
            # need a suffix state that cancels (s1, s2) and fixes parity
            need = ((-s1) % 24, (-s2) % 24, p2, p3)
            if p2 & 2:
                continue
            if need in reach[i + 1]:
                deltas.append(m)
                break
        else:  # pragma: no cover - 24 always works
            raise AssertionError("Delta not found")
    return tuple(deltas)


def delta_sequence(N: int, ordering: Sequence[int] | None = None) -> list[int]:
    """The Delta sequence of B_N for the given ordering (ascending by default)."""
    b = B_N(N)
    order = tuple(b if ordering is None else ordering)
    if sorted(order) != b:
        raise DomainError(f"ordering must be a permutation of B_N = {b}")
    return list(_delta_cached(N, order))


def count_characters(N: int) -> int:
    return math.prod(delta_sequence(N))


def representatives(N: int, k: Fraction | int | str,
                    ordering: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """One exponent vector (over the ascending divisors of N) per character of weight k."""
    two_k = 2 * Fraction(k)
    if two_k.denominator != 1:
        raise DomainError("2k must be an integer")
    two_k = int(two_k)
    order = list(B_N(N) if ordering is None else ordering)
    deltas = delta_sequence(N, order)
    divs = divisors(N)
    pos = {n: i for i, n in enumerate(divs)}
    for box in itertools.product(*(range(d) for d in deltas)):
        vec = [0] * len(divs)
        for n, c in zip(order, box):
            vec[pos[n]] = c
        vec[0] += two_k - sum(box)
        yield tuple(vec)


@dataclass(frozen=True)
class Classification:
    N: int
    B_N: tuple[int, ...]
    Delta: tuple[int, ...]
    count: int

    def to_json(self) -> dict:
        return {"N": self.N, "B_N": list(self.B_N), "Delta": list(self.Delta),
                "count": self.count}


def classify(N: int, ordering: Sequence[int] | None = None) -> Classification:
    order = tuple(B_N(N) if ordering is None else ordering)
    deltas = tuple(delta_sequence(N, order))
    return Classification(N, order, deltas, math.prod(deltas))
