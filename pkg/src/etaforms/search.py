"""Exhaustive search for admissible eta-quotients of types I and II.

Everything in the dimension formula depends on the cusp orders only through
x_c mod 24.  The search therefore runs over residue vectors first (a numpy grid
for levels with at most four divisors; otherwise a walk over the residues of
the lattice A_N Z^d + 24 Z^d, pruned by the few admissible values of
sum(phi * rho)) and only
then distributes the remaining multiples of 24 among the cusps.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .dims import DimQuery, condition_holds, dimension, eisenstein_count
from .etaquot import CuspOrders, EtaQuotient, an_inverse, an_matrix, cusp_orders, is_holomorphic
from .gamma0 import invariants, phi_gcd
from .ntheory import divisors, ext_gcd, prime_divisors

TYPE_I_LEVELS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14, 15, 17, 19, 21, 27)

# residue grids up to 24^4 rows are handled in one numpy pass
_GRID_LIMIT = 4
# candidate x-vectors handled per numpy batch
_CHUNK = 1 << 18


class AdmissibleType(enum.Enum):
    I = "I"
    II = "II"


@dataclass(frozen=True)
class AdmissibleRecord:
    f: EtaQuotient
    k: Fraction
    N: int
    x: CuspOrders
    type: AdmissibleType
    dim: int
    n0: int

    def to_json(self) -> dict:
        k = self.k
        return {
            "N": self.N,
            "k": str(k.numerator) if k.denominator == 1 else f"{k.numerator}/{k.denominator}",
            "eta": str(self.f),
            "x": [int(v) for v in self.x.vector()],
            "type": self.type.value,
            "dim": self.dim,
            "n0": self.n0,
        }


def _sqrt_lt(a: Fraction, b: Fraction, N: int) -> bool:
    """a < b * sqrt(N), exactly."""
    if b >= 0:
        if a < 0:
            return True
        return a * a < b * b * N
    if a >= 0:
        return False
    return a * a > b * b * N


def k_range(N: int) -> list[Fraction]:
    """Half-integers k with 1/2 <= k < 1 + 12/m + 18/sqrt(N)."""
    m = invariants(N).m
    out = []
    k = Fraction(1, 2)
    # (k - 1 - 12/m) * sqrt(N) < 18
    while (a := k - 1 - Fraction(12, m)) < 0 or a * a * N < 324:
        out.append(k)
        k += Fraction(1, 2)
    return out


def not_admissible_bound(N: int, k: Fraction | int | str) -> bool:
    """True when no eta-quotient of level N and weight k can be admissible."""
    if N > 400:
        return True
    k = Fraction(k)
    prod = Fraction(1)
    for p in prime_divisors(N) if N > 1 else ():
        prod *= Fraction(p + 1, p)
    # ((k-1)N/12 - 3 sqrt(N)/2) * prod >= 1  <=>  (k-1)N/12 - 1/prod >= (3/2) sqrt(N)
    lhs = (k - 1) * N / 12 - 1 / prod
    return not _sqrt_lt(lhs, Fraction(3, 2), N)


def n0(f: EtaQuotient) -> int:
    """Number of cusps (with multiplicity) at which x_c is divisible by 24."""
    f._require_integral()
    return eisenstein_count(DimQuery(f.N, f))


# ------------------------------------------------------------ enumeration

@dataclass(frozen=True)
class _Level:
    N: int
    divs: tuple[int, ...]
    phi: np.ndarray
    m: int
    e2: int
    e3: int


def _level(N: int) -> _Level:
    inv = invariants(N)
    divs = divisors(N)
    return _Level(N, divs, np.array([phi_gcd(c, N) for c in divs], dtype=np.int64),
                  inv.m, inv.eps2, inv.eps3)


def _residue_filter(L: _Level, k: Fraction, rho: np.ndarray, want: set[AdmissibleType]) -> np.ndarray:
    """Boolean mask of residue rows that can lead to an admissible quotient."""
    S = int(2 * k * L.m)
    phi = L.phi
    tot = rho @ phi
    ok = (tot <= S) & ((S - tot) % 24 == 0)
    cond = int(2 * k * L.m) > 4 * L.m - 12 * L.e2 - 16 * L.e3 - ((24 - rho) * phi).sum(axis=1)
    dim24 = int(2 * (k - 1) * L.m) + 6 * L.e2 + 8 * L.e3 + ((12 - rho) * phi).sum(axis=1)
    mask = np.zeros(len(rho), dtype=bool)
    if AdmissibleType.I in want:
        mask |= dim24 == 24
    if AdmissibleType.II in want and k > 2:
        n0s = ((rho == 0) * phi).sum(axis=1)
        mask |= dim24 == 24 * (n0s + 1)
    return ok & cond & mask


def _targets(L: _Level, k: Fraction, want: set[AdmissibleType]) -> set[int]:
    """Admissible values of sum(phi * rho): dim24 is affine in it once n0 is fixed."""
    base = 12 * int(L.phi.sum()) + int(2 * (k - 1) * L.m) + 6 * L.e2 + 8 * L.e3
    S = int(2 * k * L.m)
    out = set()
    if AdmissibleType.I in want:
        out.add(base - 24)
    if AdmissibleType.II in want and k > 2:
        out.update(base - 24 * (z + 1) for z in range(int(L.phi.sum()) + 1))
    return {t for t in out if 0 <= t <= S and (S - t) % 24 == 0}


def _lower_hnf(M: list[list[int]]) -> list[list[int]]:
    """Lower-triangular basis (first n columns) of the column span of the n x m matrix M."""
    n, m = len(M), len(M[0])
    H = [row[:] for row in M]
    for i in range(n):
        for j in range(i + 1, m):
            a, b = H[i][i], H[i][j]
            if b == 0:
                continue
            if a == 0:
                for row in H:
                    row[i], row[j] = row[j], row[i]
                continue
            g, s, t = ext_gcd(a, b)
            u, v = a // g, b // g
            for row in H:
                row[i], row[j] = s * row[i] + t * row[j], u * row[j] - v * row[i]
        if H[i][i] < 0:
            for row in H:
                row[i] = -row[i]
    return [row[:n] for row in H]


@functools.lru_cache(maxsize=64)
def _residue_basis(N: int) -> tuple[tuple[int, ...], ...]:
    """Lower-triangular basis of A_N Z^d + 24 Z^d; every diagonal entry divides 24."""
    A = an_matrix(N)
    d = len(A)
    return tuple(tuple(row) for row in _lower_hnf([A[i] + [24 * (i == j) for j in range(d)]
                                                    for i in range(d)]))


def _lattice_residues(L: _Level, targets: list[int]) -> np.ndarray:
    """Residues x mod 24 of integral-exponent quotients with sum(phi * rho) in targets."""
    G = _residue_basis(L.N)
    d = len(G)
    phi = [int(v) for v in L.phi]
    lo, hi = targets[0], targets[-1]
    cap = [23 * sum(phi[i:]) for i in range(d)] + [0]
    tset = set(targets)
    rows: list[list[int]] = []

    # z_i in [0, 24 / g_ii) enumerates each residue class of the lattice exactly once
    def walk(i: int, z: list[int], rho: list[int], used: int) -> None:
        if i == d:
            if used in tset:
                rows.append(rho)
            return
        base = sum(G[i][j] * z[j] for j in range(i))
        g = G[i][i]
        for zi in range(24 // g):
            r = (base + g * zi) % 24
            u = used + phi[i] * r
            if u > hi or u + cap[i + 1] < lo:
                continue
            walk(i + 1, z + [zi], rho + [r], u)

    walk(0, [], [], 0)
    return np.array(rows, dtype=np.int64).reshape(len(rows), d)


def _residue_rows(L: _Level, k: Fraction, want: set[AdmissibleType]) -> Iterator[np.ndarray]:
    """Blocks of residue vectors rho (rows) passing the residue filter."""
    d = len(L.divs)
    targets = sorted(_targets(L, k, want))
    if not targets:
        return
    if d <= _GRID_LIMIT:
        rho = np.indices((24,) * d, dtype=np.int64).reshape(d, -1).T
    else:
        rho = _lattice_residues(L, targets)
    rho = rho[_residue_filter(L, k, rho, want)]
    if len(rho):
        yield rho


def _compositions(weights: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative q with sum weights[i] * q[i] = total."""
    if not weights:
        if total == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    if not rest:
        if total % w == 0:
            yield (total // w,)
        return
    for q in range(total // w + 1):
        for tail in _compositions(rest, total - w * q):
            yield (q,) + tail


@functools.lru_cache(maxsize=256)
def _composition_array(weights: tuple[int, ...], total: int) -> np.ndarray:
    rows = list(_compositions(weights, total))
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(weights))


@functools.lru_cache(maxsize=64)
def _scaled_inverse(N: int) -> tuple[np.ndarray, int]:
    """(M, den) with A_N^{-1} = M / den and M integral."""
    rows = an_inverse(N)
    den = math.lcm(*(v.denominator for row in rows for v in row))
    M = np.array([[int(v * den) for v in row] for row in rows], dtype=np.int64)
    return M, den


def _minimal_level_mask(N: int, r: np.ndarray) -> np.ndarray:
    """Rows whose nonzero exponents have lcm of indices equal to N."""
    divs = divisors(N)
    mask = np.ones(len(r), dtype=bool)
    for p in prime_divisors(N) if N > 1 else ():
        e = 0
        while N % p ** (e + 1) == 0:
            e += 1
        cols = [i for i, n in enumerate(divs) if n % p ** e == 0]
        mask &= (r[:, cols] != 0).any(axis=1)
    return mask


def search_level(N: int, types: Iterable[AdmissibleType | str] = (AdmissibleType.I,),
                 include_constant: bool = False) -> list[AdmissibleRecord]:
    """All admissible quotients whose minimal level is N, sorted by (k, x)."""
    want = {AdmissibleType(t) if not isinstance(t, AdmissibleType) else t for t in types}
    if N > 400:
        return []
    if N > 36:
        # no type-I quotients above level 36
        want.discard(AdmissibleType.I)
        if not want:
            return []
    L = _level(N)
    phi = tuple(int(v) for v in L.phi)
    Minv, den = _scaled_inverse(N)
    out: list[AdmissibleRecord] = []
    ks = k_range(N)
    if include_constant and N == 1 and AdmissibleType.I in want:
        ks = [Fraction(0)] + ks
    for k in ks:
        if k and not_admissible_bound(N, k):
            continue
        S = int(2 * k * L.m)
        for block in _residue_rows(L, k, want):
            Qs = (S - block @ L.phi) // 24
            for Q in np.unique(Qs):
                comps = _composition_array(phi, int(Q))
                rows = block[Qs == Q]
                step = max(1, _CHUNK // max(1, len(comps)))
                for i in range(0, len(rows), step):
                    x = (24 * comps[None, :, :] + rows[i:i + step, None, :]).reshape(-1, len(phi))
                    out.extend(_candidates(L, x, Minv, den, want))
    out.sort(key=lambda rec: (rec.k, [int(v) for v in rec.x.vector()]))
    return out


def _candidates(L: _Level, x: np.ndarray, Minv: np.ndarray, den: int,
                want: set[AdmissibleType]) -> Iterator[AdmissibleRecord]:
    num = x @ Minv.T
    keep = (num % den == 0).all(axis=1)
    x, r = x[keep], num[keep] // den
    keep = _minimal_level_mask(L.N, r)
    for xv, rv in zip(x[keep], r[keep]):
        f = EtaQuotient(L.N, {n: int(v) for n, v in zip(L.divs, rv) if v})
        xo = CuspOrders(L.N, {c: int(v) for c, v in zip(L.divs, xv)})
        rec = _classify(f, xo, want)
        if rec is not None:
            yield rec


def _classify(f: EtaQuotient, x: CuspOrders, want: set[AdmissibleType]) -> AdmissibleRecord | None:
    q = DimQuery(f.N, f)
    if not condition_holds(q):
        return None
    dim = dimension(q).value
    k = f.weight
    if dim == 1 and AdmissibleType.I in want:
        return AdmissibleRecord(f, k, f.N, x, AdmissibleType.I, 1, eisenstein_count(q))
    if AdmissibleType.II in want and k > 2 and all(v > 0 for v in x.x.values()):
        z = eisenstein_count(q)
        if dim == z + 1:
            return AdmissibleRecord(f, k, f.N, x, AdmissibleType.II, dim, z)
    return None


def verify_record(rec: AdmissibleRecord) -> bool:
    """Recheck a record from scratch: exponents, holomorphy, exact dimension and type."""
    f = rec.f
    if not f.is_integral or f.minimal_level != rec.N or f.weight != rec.k:
        return False
    if cusp_orders(f) != rec.x or not is_holomorphic(f):
        return False
    res = dimension(DimQuery(rec.N, f))
    if not res.exact or res.value != rec.dim:
        return False
    z = n0(f)
    if z != rec.n0:
        return False
    if rec.type is AdmissibleType.I:
        return rec.dim == 1
    return rec.k > 2 and all(v > 0 for v in rec.x.x.values()) and rec.dim == z + 1


def _search_job(args: tuple[int, tuple[str, ...], bool]) -> list[AdmissibleRecord]:
    N, types, const = args
    return search_level(N, types, const)


def search_admissible(levels: Iterable[int], types: Iterable[AdmissibleType | str] = (AdmissibleType.I,),
                      include_constant: bool = False, threads: int = 1) -> list[AdmissibleRecord]:
    """Records for every level in ``levels``, ordered by level then (k, x)."""
    levels = sorted(set(levels))
    tnames = tuple(sorted((AdmissibleType(t) if not isinstance(t, AdmissibleType) else t).value
                          for t in types))
    jobs = [(N, tnames, include_constant) for N in levels]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_search_job, jobs))
    else:
        parts = [_search_job(j) for j in jobs]
    out = list(itertools.chain.from_iterable(parts))
    keys = {(rec.N, tuple(rec.x.vector())) for rec in out}
    if len(keys) != len(out):
        raise AssertionError("duplicate records in the search output")
    return out


def census(records: Sequence[AdmissibleRecord]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for rec in records:
        counts[rec.N] = counts.get(rec.N, 0) + 1
    return counts
