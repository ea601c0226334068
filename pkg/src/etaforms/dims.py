"""Dimensions of M_k(Gamma_0(N), chi) for characters chi of eta-quotients."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .charclass import B_N, delta_sequence
from .etaquot import CuspOrders, EtaQuotient, an_matrix_np, cusp_orders
from .gamma0 import invariants, phi_gcd
from .ntheory import DomainError, divisors


class DimStatus(enum.Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound_only"


@dataclass(frozen=True)
class DimQuery:
    """Character given by an eta-quotient of level N, twisted by E_4^{-t} E_6^{t}."""

    N: int
    character: EtaQuotient
    t: int = 0

    def __post_init__(self) -> None:
        if self.t < 0:
            raise DomainError("t must be nonnegative")
        if self.character.N != self.N:
            object.__setattr__(self, "character", self.character.at_level(self.N))

    @property
    def weight(self) -> Fraction:
        return self.character.weight + 2 * self.t


@dataclass(frozen=True)
class DimResult:
    status: DimStatus
    value: int
    upper_bound: int
    cusp_dim: int | None = None

    @property
    def exact(self) -> bool:
        return self.status is DimStatus.EXACT

    def to_json(self) -> dict:
        out = {"status": "exact" if self.exact else "lower_bound",
               "dim": self.value, "upper_bound": self.upper_bound}
        if self.cusp_dim is not None:
            out["cusp_dim"] = self.cusp_dim
        return out


def _frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


def _phi_x(q: DimQuery) -> list[tuple[int, Fraction]]:
    xs = cusp_orders(q.character).x
    return [(phi_gcd(c, q.N), v) for c, v in xs.items()]


def condition_holds(q: DimQuery) -> bool:
    """The applicability condition of the dimension formula for this t."""
    terms = _phi_x(q)
    if q.t >= 1:
        return sum(ph * (math.floor(x / 24) + 1) for ph, x in terms) > 0
    inv = invariants(q.N)
    m = inv.m
    rhs = 2 - Fraction(6 * inv.eps2 + 8 * inv.eps3, m) \
        - Fraction(12, m) * sum((ph * (1 - _frac_part(x / 24)) for ph, x in terms), Fraction(0))
    return q.weight > rhs


def formula_value(q: DimQuery) -> int:
    inv = invariants(q.N)
    k = q.weight
    val = (k - 1) * inv.m / 12
    val += (Fraction(1, 4) - _frac_part(Fraction(q.t, 2))) * inv.eps2
    val += (Fraction(1, 3) - _frac_part(Fraction(-q.t, 3))) * inv.eps3
    val += sum((ph * (Fraction(1, 2) - _frac_part(x / 24)) for ph, x in _phi_x(q)), Fraction(0))
    if val.denominator != 1:
        raise AssertionError(f"dimension formula gave the non-integer {val} for {q}")
    return int(val)


def upper_bound(N: int, k: Fraction) -> int:
    if k < 0:
        return 0
    return math.floor(invariants(N).m * k / 12) + 1


def dimension(q: DimQuery) -> DimResult:
    exact = condition_holds(q)
    status = DimStatus.EXACT if exact else DimStatus.LOWER_BOUND
    return DimResult(status, formula_value(q), upper_bound(q.N, q.weight))


def eisenstein_count(q: DimQuery) -> int:
    """Number of cusps (with multiplicity phi) where x_c is divisible by 24."""
    return sum(ph for ph, x in _phi_x(q) if (x / 24).denominator == 1)


def dimension_cusp(q: DimQuery) -> int:
    if q.weight <= 2:
        raise DomainError("the cusp-space formula needs k > 2")
    res = dimension(q)
    if not res.exact:
        raise DomainError("the dimension of M_k is not certified for this character")
    return res.value - eisenstein_count(q)


def weight2_special(x: CuspOrders) -> int:
    """dim M_2 = g - 1 + sigma_0(N) + sum floor(x_c / 24) when every phi((c, N/c)) = 1."""
    N = x.N
    if any(phi_gcd(c, N) != 1 for c in divisors(N)):
        raise DomainError(f"phi((c, N/c)) is not identically 1 for N = {N}")
    if sum(x.x.values()) != 0:
        raise DomainError("cusp orders must sum to 0")
    g = invariants(N).genus
    return g - 1 + len(divisors(N)) + sum(math.floor(v / 24) for v in x.x.values())


# ------------------------------------------------------------------- tables

TABLE_LEVELS: dict[Fraction, tuple[int, ...]] = {
    Fraction(1, 2): tuple(range(1, 22)) + (24, 25, 27, 32, 36, 49, 50),
    Fraction(1): tuple(range(1, 23)) + tuple(range(24, 33))
    + (34, 36, 37, 39, 40, 45, 48, 49, 50, 54, 64, 72, 75, 81, 98, 100, 121, 169),
    Fraction(3, 2): tuple(range(1, 530)),
}


@dataclass(frozen=True)
class TableRow:
    N: int
    a: int
    v: int
    counts: tuple[int, ...] = field(default=())

    def padded(self, width: int) -> tuple[int, ...]:
        return self.counts + (0,) * (width - len(self.counts))


def could_apply(N: int, k: Fraction) -> bool:
    """Cheap necessary condition (t = 0): the best case of every fractional part."""
    inv = invariants(N)
    return 2 * k * inv.m > 4 * inv.m - 12 * inv.eps2 - 16 * inv.eps3 - 24 * inv.eps_inf


def box_vectors(N: int, k: Fraction, ordering: Sequence[int] | None = None) -> np.ndarray:
    """All representative exponent vectors as rows (columns follow ascending divisors)."""
    two_k = 2 * k
    if two_k.denominator != 1:
        raise DomainError("2k must be an integer")
    order = list(B_N(N) if ordering is None else ordering)
    deltas = delta_sequence(N, order)
    divs = divisors(N)
    pos = [divs.index(n) for n in order]
    count = math.prod(deltas)
    r = np.zeros((count, len(divs)), dtype=np.int64)
    if order:
        grid = np.indices(deltas, dtype=np.int64).reshape(len(deltas), -1).T
        r[:, pos] = grid
    r[:, 0] += int(two_k) - r[:, pos].sum(axis=1) if order else int(two_k)
    return r


def level_statistics(N: int, k: Fraction) -> TableRow:
    """(a, v, counts of each exact dimension) over all characters of weight k."""
    k = Fraction(k)
    inv = invariants(N)
    r = box_vectors(N, k)
    a = r.shape[0]
    if not could_apply(N, k):
        return TableRow(N, a, 0, ())
    A = an_matrix_np(N)
    phi = np.array([phi_gcd(c, N) for c in divisors(N)], dtype=np.int64)
    xm = (r @ A.T) % 24
    m, e2, e3 = inv.m, inv.eps2, inv.eps3
    lhs = int(2 * k * m)
    cond = lhs > 4 * m - 12 * e2 - 16 * e3 - ((24 - xm) * phi).sum(axis=1)
    dim24 = int(2 * (k - 1) * m) + 6 * e2 + 8 * e3 + ((12 - xm) * phi).sum(axis=1)
    if np.any(dim24 % 24):
        raise AssertionError(f"non-integral dimension at N = {N}")
    dims = dim24[cond] // 24
    if dims.size and dims.min() < 0:
        raise AssertionError(f"negative certified dimension at N = {N}")
    counts = tuple(int(c) for c in np.bincount(dims)) if dims.size else ()
    return TableRow(N, a, int(cond.sum()), counts)


def table(weight: Fraction | str, levels: Iterable[int] | None = None,
          keep_empty: bool = False) -> list[TableRow]:
    """Rows (N, a, v, d_0, d_1, ...); rows with v = 0 are dropped unless keep_empty."""
    k = Fraction(weight)
    if levels is None:
        if k not in TABLE_LEVELS:
            raise DomainError(f"no default level range for weight {k}")
        levels = TABLE_LEVELS[k]
    rows = [level_statistics(N, k) for N in levels]
    return [row for row in rows if keep_empty or row.v]


def table_width(rows: Sequence[TableRow]) -> int:
    return max((len(r.counts) for r in rows), default=1)


def table_csv(rows: Sequence[TableRow]) -> str:
    w = table_width(rows)
    lines = [",".join(["N", "a", "v"] + [f"d{j}" for j in range(w)])]
    for row in rows:
        lines.append(",".join(str(v) for v in (row.N, row.a, row.v) + row.padded(w)))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class WeightSummary:
    spaces: int
    max_level: int
    max_dim: int


def weight_summary(weight: Fraction | str, levels: Iterable[int] | None = None) -> WeightSummary:
    rows = table(weight, levels)
    return WeightSummary(
        spaces=sum(r.v for r in rows),
        max_level=max((r.N for r in rows), default=0),
        max_dim=max((len(r.counts) - 1 for r in rows), default=0),
    )
