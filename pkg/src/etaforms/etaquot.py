"""Eta-quotients, their orders at the cusps and the matrix A_N linking the two."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .gamma0 import phi_gcd
from .ntheory import DomainError, divisors, factorize, odd_part, valuation, is_square


class ParseError(ValueError):
    """Malformed eta-quotient text; ``pos`` is the offending character offset."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _frac(v: int | Fraction | str) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True, eq=False)
class EtaQuotient:
    """prod over n | N of eta(n tau)^(r_n), with exact rational r_n."""

    N: int
    exponents: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.N < 1:
            raise DomainError("level must be positive")
        clean = {}
        for n, r in self.exponents.items():
            n = int(n)
            if n < 1 or self.N % n:
                raise DomainError(f"{n} does not divide the level {self.N}")
            r = _frac(r)
            if r:
                clean[n] = r
        object.__setattr__(self, "exponents", dict(sorted(clean.items())))

    # construction
    @classmethod
    def from_vector(cls, N: int, values: Iterable[int | Fraction]) -> EtaQuotient:
        """Exponents listed along the ascending divisors of N."""
        vals = list(values)
        divs = divisors(N)
        if len(vals) != len(divs):
            raise DomainError(f"expected {len(divs)} exponents for level {N}")
        return cls(N, dict(zip(divs, vals)))

    def at_level(self, N: int) -> EtaQuotient:
        if N % self.minimal_level:
            raise DomainError(f"level {N} is not a multiple of {self.minimal_level}")
        return EtaQuotient(N, self.exponents)

    # equality ignores nothing: same ambient level and same exponents
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EtaQuotient):
            return NotImplemented
        return self.N == other.N and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.N, tuple(self.exponents.items())))

    def __mul__(self, other: EtaQuotient) -> EtaQuotient:
        N = math.lcm(self.N, other.N)
        r = dict(self.exponents)
        for n, v in other.exponents.items():
            r[n] = r.get(n, 0) + v
        return EtaQuotient(N, r)

    def __pow__(self, k: int | Fraction) -> EtaQuotient:
        return EtaQuotient(self.N, {n: v * k for n, v in self.exponents.items()})

    # basic invariants
    def r(self, n: int) -> Fraction:
        return self.exponents.get(n, Fraction(0))

    def vector(self) -> list[Fraction]:
        return [self.r(n) for n in divisors(self.N)]

    @property
    def weight(self) -> Fraction:
        return sum(self.exponents.values(), Fraction(0)) / 2

    @property
    def cover_index(self) -> int:
        """Least D >= 1 with D * r_n even for every n."""
        D = 1
        for r in self.exponents.values():
            D = math.lcm(D, (r / 2).denominator)
        return D

    @property
    def minimal_level(self) -> int:
        return math.lcm(1, *self.exponents) if self.exponents else 1

    @property
    def is_integral(self) -> bool:
        return all(r.denominator == 1 for r in self.exponents.values())

    @property
    def x_N(self) -> Fraction:
        """sum n r_n, i.e. 24 times the order at infinity."""
        return sum((n * r for n, r in self.exponents.items()), Fraction(0))

    @property
    def Pi(self) -> int:
        self._require_integral()
        return math.prod((self.N // n) ** abs(int(r)) for n, r in self.exponents.items())

    def _require_integral(self) -> None:
        if not self.is_integral:
            raise DomainError("this operation needs integral exponents")

    # text and JSON
    def __str__(self) -> str:
        return " ".join(f"{n}^{_fmt(r)}" for n, r in self.exponents.items())

    def __repr__(self) -> str:
        return f"EtaQuotient(N={self.N}, '{self}')"

    def to_json(self) -> dict:
        return {"N": self.N, "r": {str(n): _fmt(r) for n, r in self.exponents.items()}}

    @classmethod
    def from_json(cls, obj: Mapping) -> EtaQuotient:
        return cls(int(obj["N"]), {int(n): Fraction(v) for n, v in obj["r"].items()})


def _fmt(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


_TOKEN = re.compile(r"(\d+)\^(-?\d+)(?:/(-?\d+))?$")
_SEPARATORS = re.compile(r"[\s·*]+")


def parse(text: str, level: int | None = None) -> EtaQuotient:
    """Parse whitespace separated ``n^e`` tokens (``·`` and ``*`` also separate).

    The level is the lcm of the n with nonzero exponent unless ``level`` is given.
    """
    exps: dict[int, Fraction] = {}
    pos = 0
    for chunk in _SEPARATORS.split(text):
        start = text.find(chunk, pos) if chunk else pos
        pos = start + len(chunk)
        if not chunk:
            continue
        m = _TOKEN.match(chunk)
        if not m:
            raise ParseError(f"malformed token {chunk!r}", start)
        n = int(m.group(1))
        if n == 0:
            raise ParseError("eta argument must be positive", start)
        if n in exps:
            raise ParseError(f"duplicate divisor {n}", start)
        num = int(m.group(2))
        den = int(m.group(3)) if m.group(3) is not None else 1
        if den == 0:
            raise ParseError("zero denominator", start)
        exps[n] = Fraction(num, den)
    minimal = math.lcm(1, *(n for n, r in exps.items() if r))
    if level is None:
        level = minimal
    elif level < 1 or level % minimal:
        raise DomainError(f"level {level} is not a positive multiple of {minimal}")
    return EtaQuotient(level, {n: r for n, r in exps.items() if r})


# ---------------------------------------------------------------- cusp orders

@dataclass(frozen=True, eq=False)
class CuspOrders:
    """x_c = 24 * (order at a cusp a/c), one value per divisor c of N."""

    N: int
    x: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        divs = divisors(self.N)
        if set(self.x) - set(divs):
            raise DomainError("cusp orders must be indexed by divisors of N")
        object.__setattr__(self, "x", {c: _frac(self.x.get(c, 0)) for c in divs})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CuspOrders):
            return NotImplemented
        return self.N == other.N and self.x == other.x

    def __hash__(self) -> int:
        return hash((self.N, tuple(self.x.items())))

    def vector(self) -> list[Fraction]:
        return list(self.x.values())

    @classmethod
    def from_vector(cls, N: int, values: Iterable[int | Fraction]) -> CuspOrders:
        vals = list(values)
        divs = divisors(N)
        if len(vals) != len(divs):
            raise DomainError(f"expected {len(divs)} cusp orders for level {N}")
        return cls(N, dict(zip(divs, vals)))


def an_entry(N: int, c: int, n: int) -> int:
    # N/(N,c^2) * (n,c)^2 / n is always an integer
    return N // math.gcd(N, c * c) * math.gcd(n, c) ** 2 // n


@lru_cache(maxsize=1024)
def _an_rows(N: int) -> tuple[tuple[int, ...], ...]:
    divs = divisors(N)
    return tuple(tuple(an_entry(N, c, n) for n in divs) for c in divs)


def an_matrix(N: int) -> list[list[int]]:
    """A_N with rows indexed by c | N and columns by n | N (both ascending)."""
    return [list(row) for row in _an_rows(N)]


def an_matrix_np(N: int) -> np.ndarray:
    return np.array(_an_rows(N), dtype=np.int64)


def _b_block(p: int, alpha: int, i: int, j: int) -> int:
    if i == j:
        if i in (0, alpha):
            return p
        return (p * p + 1) * p ** (min(i, alpha - i) - 1)
    if abs(i - j) == 1:
        return -p ** min(j, alpha - j)
    return 0


@lru_cache(maxsize=1024)
def _an_inverse_rows(N: int) -> tuple[tuple[Fraction, ...], ...]:
    divs = divisors(N)
    fac = factorize(N) if N > 1 else ()
    scale = Fraction(1, N)
    for p, _ in fac:
        scale *= Fraction(p, p * p - 1)
    vals = {d: [valuation(d, p) for p, _ in fac] for d in divs}
    rows = []
    for n in divs:
        row = []
        for c in divs:
            prod = 1
            for (p, alpha), i, j in zip(fac, vals[n], vals[c]):
                prod *= _b_block(p, alpha, i, j)
                if not prod:
                    break
            row.append(scale * prod)
        rows.append(tuple(row))
    return tuple(rows)


def an_inverse(N: int) -> list[list[Fraction]]:
    """A_N^{-1} in closed form; rows indexed by n | N, columns by c | N."""
    return [list(row) for row in _an_inverse_rows(N)]


def cusp_orders(f: EtaQuotient) -> CuspOrders:
    divs = divisors(f.N)
    r = f.vector()
    x = {c: sum((a * v for a, v in zip(row, r) if v), Fraction(0))
         for c, row in zip(divs, _an_rows(f.N))}
    return CuspOrders(f.N, x)


def exponents_from_orders(x: CuspOrders) -> dict[int, Fraction]:
    xs = x.vector()
    divs = divisors(x.N)
    return {n: sum((a * v for a, v in zip(row, xs) if v), Fraction(0))
            for n, row in zip(divs, _an_inverse_rows(x.N))}


def quotient_from_orders(x: CuspOrders) -> EtaQuotient:
    return EtaQuotient(x.N, exponents_from_orders(x))


def is_holomorphic(f: EtaQuotient) -> bool:
    return all(v >= 0 for v in cusp_orders(f).x.values())


def is_cuspform_side(f: EtaQuotient) -> bool:
    return all(v > 0 for v in cusp_orders(f).x.values())


def valence_sum(x: CuspOrders) -> Fraction:
    """sum phi((c, N/c)) x_c, which equals 2 m k."""
    return sum((phi_gcd(c, x.N) * v for c, v in x.x.items()), Fraction(0))


# --------------------------------------------------------- Hecke-side numbers

@dataclass(frozen=True)
class HeckeStats:
    x_N: int
    Pi: int
    delta: int
    v2_Pi: int
    m_f: int


def hecke_stats(f: EtaQuotient) -> HeckeStats:
    f._require_integral()
    N = f.N
    x_N = int(f.x_N)
    Pi = f.Pi
    delta = 0 if odd_part(Pi) % 4 == 1 else 1
    v2 = valuation(Pi, 2) if Pi else 0
    s_dual = sum((N // n) * int(r) for n, r in f.exponents.items())
    m_f = 24 // math.gcd(24, s_dual, x_N)
    return HeckeStats(x_N, Pi, delta, v2, m_f)


def in_L_f(f: EtaQuotient, l: int) -> bool:
    if l < 1:
        return False
    if (l - 1) % hecke_stats(f).m_f:
        return False
    if f.weight.denominator == 2:
        return is_square(l)
    return True


