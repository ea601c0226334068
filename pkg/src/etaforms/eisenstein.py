"""Level-4 Eisenstein series at infinity and their eta-quotient identities.

This is the only floating-point part of the package.  Dedekind sums are
evaluated in bulk with numpy and then snapped to their exact values, using
that 6k s(h, k) is an integer for coprime h, k.  The phases e(dn/4c - P/24)
are reduced exactly modulo 1 before conversion to double.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .etaquot import EtaQuotient
from .ntheory import DomainError, dedekind_sum
from .qseries import expand


def _f(v: Fraction | int | str) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class EisParams:
    r2: Fraction
    r4: Fraction
    c_max: int = 2000
    D: int = field(default=0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "r2", _f(self.r2))
        object.__setattr__(self, "r4", _f(self.r4))
        if not self.D:
            D = math.lcm((self.r2 / 2).denominator, (self.r4 / 2).denominator)
            object.__setattr__(self, "D", D)
        elif (self.D * self.r2 / 2).denominator != 1 or (self.D * self.r4 / 2).denominator != 1:
            raise DomainError("D * r2 and D * r4 must be even integers")

    @property
    def r1(self) -> Fraction:
        return -2 * self.r2 - 4 * self.r4

    @property
    def k(self) -> Fraction:
        return (-self.r2 - 3 * self.r4) / 2

    def in_window(self) -> bool:
        u, v = -2 * self.r2 - 5 * self.r4, -self.r4
        return 0 <= u < 8 and 0 <= v < 8 and u + v > 8

    def quotient(self) -> EtaQuotient:
        return EtaQuotient(4, {1: self.r1, 2: self.r2, 4: self.r4})


def p_factor(c4: int, d: int, r2: Fraction | int | str, r4: Fraction | int | str) -> Fraction:
    """P(c, d; r2, r4) for 4 | c and (d, c) = 1, from Dedekind sums."""
    r2, r4 = _f(r2), _f(r4)
    if c4 <= 0 or c4 % 4:
        raise DomainError("c must be a positive multiple of 4")
    if math.gcd(d, c4) != 1:
        raise DomainError("d must be coprime to c")
    s = dedekind_sum(-d, c4)
    return (r2 * (12 * dedekind_sum(-d, c4 // 2) - 24 * s + 3)
            + r4 * (12 * dedekind_sum(-d, c4 // 4) - 48 * s + 9))


# ---------------------------------------------------------- bulk Dedekind sums

def dedekind_6k_bulk(h: np.ndarray, k: np.ndarray) -> np.ndarray:
    """6k s(h, k) as exact int64, elementwise, for coprime h, k with k >= 1."""
    h = np.mod(h, k).astype(np.int64)
    k = k.astype(np.int64)
    k0 = k.copy()
    acc = np.zeros(h.shape, dtype=np.float64)
    sign = np.ones(h.shape, dtype=np.float64)
    live = h > 0
    while live.any():
        hh, kk = h[live].astype(np.float64), k[live].astype(np.float64)
        # s(h, k) = (h/k + k/h + 1/(hk))/12 - 1/4 - s(k mod h, h)
        acc[live] += sign[live] * ((hh / kk + kk / hh + 1.0 / (hh * kk)) / 12.0 - 0.25)
        sign[live] = -sign[live]
        nh = np.mod(k[live], h[live])
        k[live] = h[live]
        h[live] = nh
        live = h > 0
    scaled = acc * 6.0 * k0
    out = np.rint(scaled).astype(np.int64)
    if np.abs(scaled - out).max(initial=0.0) > 1e-4:
        raise AssertionError("Dedekind sum lost precision")
    return out


def _block_phases(params: EisParams, cs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(c index, d, P/24 mod 1 as float) for all coprime residues d mod 4c, c in cs."""
    c_list, d_list = [], []
    for c in cs:
        c4 = 4 * int(c)
        d = np.arange(1, c4, 2, dtype=np.int64)
        d = d[np.gcd(d, c4) == 1]
        c_list.append(np.full(d.shape, c, dtype=np.int64))
        d_list.append(d)
    cc = np.concatenate(c_list)
    dd = np.concatenate(d_list)
    c4 = 4 * cc
    s1 = dedekind_6k_bulk(-dd, c4)          # 6(4c) s(-d, 4c)
    s2 = dedekind_6k_bulk(-dd, 2 * cc)      # 6(2c) s(-d, 2c)
    s4 = dedekind_6k_bulk(-dd, cc)          # 6c s(-d, c)
    # c * P = r2 (s2 - s1 + 3c) + r4 (2 s4 - 2 s1 + 9c), scaled by the common denominator
    den = math.lcm(params.r2.denominator, params.r4.denominator)
    a2 = params.r2.numerator * (den // params.r2.denominator)
    a4 = params.r4.numerator * (den // params.r4.denominator)
    num = a2 * (s2 - s1 + 3 * cc) + a4 * (2 * s4 - 2 * s1 + 9 * cc)
    mod = 24 * cc * den
    frac = np.mod(num, mod).astype(np.float64) / mod.astype(np.float64)
    return cc, dd, frac


@dataclass(frozen=True)
class EisValue:
    n: int
    value: complex
    tail_bound: float


def _prefactor(k: Fraction) -> complex:
    kf = float(k)
    return complex(np.exp(-1j * np.pi * kf / 2)) * (2 * math.pi) ** kf / math.gamma(kf)


def eis_coeffs(params: EisParams, n_max: int, block: int = 256) -> list[EisValue]:
    """Coefficients 1..n_max of (1/2D) E_{I,k}, with the c-sum cut at c_max."""
    k = params.k
    if k <= 2:
        raise DomainError("the Eisenstein series needs k > 2")
    kf = float(k)
    ns = np.arange(1, n_max + 1, dtype=np.int64)
    sums = np.zeros(n_max, dtype=np.complex128)
    # fixed ascending blocks keep the reduction order deterministic
    for start in range(1, params.c_max + 1, block):
        cs = np.arange(start, min(start + block, params.c_max + 1), dtype=np.int64)
        cc, dd, frac = _block_phases(params, cs)
        c4 = 4 * cc
        weight = (c4.astype(np.float64)) ** (-kf)
        for i, n in enumerate(ns):
            ph = np.mod(dd * int(n), c4).astype(np.float64) / c4 - frac
            sums[i] += np.sum(weight * np.exp(2j * np.pi * ph))
    pre = _prefactor(k)
    # |sum over c > c_max| <= sum (4c)^(1-k) <= 4^(1-k) c_max^(2-k) / (k - 2)
    tail_c = 4 ** (1 - kf) * params.c_max ** (2 - kf) / (kf - 2)
    out = []
    for i, n in enumerate(ns):
        scale = pre * float(n) ** (kf - 1)
        out.append(EisValue(int(n), complex(scale * sums[i]), abs(scale) * tail_c))
    return out


def eis_coeff(params: EisParams, n: int) -> EisValue:
    if n == 0:
        return EisValue(0, 1 + 0j, 0.0)
    if n < 0:
        raise DomainError("n must be nonnegative")
    return eis_coeffs(params, n)[-1]


@dataclass(frozen=True)
class IdentityRow:
    n: int
    series_value: Fraction
    eis_value: complex
    abs_err: float

    def to_json(self) -> dict:
        return {"n": self.n, "series_value": float(self.series_value),
                "eis_value": [self.eis_value.real, self.eis_value.imag], "abs_err": self.abs_err}


@dataclass(frozen=True)
class IdentityReport:
    params: EisParams
    rows: tuple[IdentityRow, ...]
    tol: float

    @property
    def max_error(self) -> float:
        return max((r.abs_err for r in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_error < self.tol


def verify_identity(params: EisParams, n_max: int = 8, tol: float = 1e-3) -> IdentityReport:
    """Compare the eta-quotient expansion with the Eisenstein coefficients for n <= n_max."""
    if not params.in_window():
        raise DomainError(f"(r2, r4) = ({params.r2}, {params.r4}) is outside the admissible window")
    series = expand(params.quotient(), n_max + 1)
    rows = [IdentityRow(0, series.coefficient(0), 1 + 0j, abs(float(series.coefficient(0)) - 1.0))]
    for ev in eis_coeffs(params, n_max):
        exact = series.coefficient(ev.n)
        rows.append(IdentityRow(ev.n, exact, ev.value, abs(ev.value - float(exact))))
    return IdentityReport(params, tuple(rows), tol)


IDENTITY_PARAMETERS: dict[str, tuple[Fraction, Fraction]] = {
    "intro": (Fraction(29, 2), Fraction(-22, 3)),
    "sqrt": (Fraction(0), Fraction(-3, 2)),
    "integral": (Fraction(7), Fraction(-4)),
}
