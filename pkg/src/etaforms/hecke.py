"""Generalized Hecke operators T_l on eta-quotients with integral exponents.

Two routes are implemented.  ``hecke_coeff`` uses the explicit action on
Fourier coefficients, where all auxiliary matrices have been eliminated.
``hecke_general`` evaluates the defining double sum literally: it builds the
two auxiliary matrices for every (a, b) and calls the multiplier system.
Agreement of the two routes is the main consistency test of this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from .charclass import LiftedMatrix, chi_eval
from .cyclo import Cyclotomic, UnityRoot, e, sqrt_embed, sqrt_int
from .etaquot import EtaQuotient, HeckeStats, hecke_stats, in_L_f
from .ntheory import (
    DomainError,
    SL2Matrix,
    divisors,
    ext_gcd,
    factorize,
    is_square,
    kronecker,
    rad_decomposition,
)
from .qseries import PrecisionError, QSeries

Value = Cyclotomic | Fraction | int


@dataclass(frozen=True)
class HeckeContext:
    """An eta-quotient together with the numbers that drive its T_l action."""

    f: EtaQuotient
    stats: HeckeStats
    k: Fraction
    _bcache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def of(cls, f: EtaQuotient) -> HeckeContext:
        return cls(f, hecke_stats(f), f.weight)

    @property
    def N(self) -> int:
        return self.f.N

    @property
    def offset(self) -> Fraction:
        return Fraction(self.stats.x_N, 24)

    def delta1(self, l: int) -> int:
        return int(l % 2 == 0 and self.N % 4 == 0 and self.k.denominator == 2
                   and self.stats.v2_Pi % 2 == 1)


# ----------------------------------------------------------- compatibility

def _vector(N: int, r: Sequence[int] | Mapping[int, int] | EtaQuotient) -> list[int]:
    divs = divisors(N)
    if isinstance(r, EtaQuotient):
        vals = [r.r(n) for n in divs]
    elif isinstance(r, Mapping):
        vals = [r.get(n, 0) for n in divs]
    else:
        vals = list(r)
        if len(vals) != len(divs):
            raise DomainError(f"expected {len(divs)} exponents for level {N}")
    if any(Fraction(v).denominator != 1 for v in vals):
        raise DomainError("T_l needs integral exponents")
    return [int(v) for v in vals]


def compatible(l: int, r, r2, N: int) -> bool:
    """Whether T_l maps the character of r to the character of r2."""
    if l < 1:
        raise DomainError("l must be positive")
    u, v = _vector(N, r), _vector(N, r2)
    if sum(u) != sum(v):
        raise DomainError("the two exponent vectors have different weights")
    divs = divisors(N)
    if (l * sum(N // n * a for n, a in zip(divs, u)) - sum(N // n * b for n, b in zip(divs, v))) % 24:
        return False
    if (sum(n * a for n, a in zip(divs, u)) - l * sum(n * b for n, b in zip(divs, v))) % 24:
        return False
    # l^(2|k'|) with 2|k'| = |sum r|
    square = l ** abs(sum(u)) * math.prod(n for n, a, b in zip(divs, u, v) if (a - b) % 2)
    return is_square(square)


# ------------------------------------------------------- explicit action

def psi_factor(ctx: HeckeContext, l: int, a: int, b: int) -> UnityRoot:
    d = l // a
    kd = ctx.k + ctx.stats.delta
    N = ctx.N
    if l % 2:
        return UnityRoot(-kd * (d - 1) / 4 + kd * (l - 1) * (N - 1) / 4)
    if N % 2 == 0:
        return UnityRoot(-kd * (a - 1) / 4 - N * kd * (1 + ctx.delta1(l)) * b / 4)
    return UnityRoot(0)


def _power_of(a: int, k: Fraction) -> Value:
    """a^k for k in (1/2)Z; half-integral powers need odd a."""
    if k.denominator == 1:
        return Fraction(a) ** int(k)
    if a % 2 == 0:
        raise AssertionError(f"half-integral power of the even number {a}")
    return sqrt_embed(a) * (Fraction(a) ** int(k - Fraction(1, 2)))


def l_factor(l: int, k: Fraction) -> Value:
    """l^(-k/2), exactly."""
    half = k / 2
    if half.denominator == 1:
        return Fraction(1, l ** int(half)) if half >= 0 else Fraction(l ** int(-half))
    if half.denominator == 2:
        # l^(-k/2) = l^(-(k+1)/2) * sqrt(l)
        return sqrt_int(l) * Fraction(l) ** -int(half + Fraction(1, 2))
    root = math.isqrt(l)
    if root * root != l:
        raise DomainError("half-integral weight needs l to be a perfect square")
    return l_factor(root, 2 * k)


@dataclass(frozen=True)
class _BData:
    M: int
    b: np.ndarray
    base: np.ndarray
    sign: np.ndarray


def _b_data(ctx: HeckeContext, l: int, a: int) -> _BData:
    key = (l, a)
    hit = ctx._bcache.get(key)
    if hit is not None:
        return hit
    d = l // a
    g = math.gcd(a, d)
    two_k = int(2 * ctx.k)
    M = 24 * a
    bs, base, sign = [], [], []
    for b in range(d):
        if math.gcd(g, b) != 1:
            continue
        s = kronecker(-ctx.N * b, g) ** two_k if two_k else 1
        if not s:
            continue
        phase = Fraction(-b * d * ctx.stats.x_N, 24) + psi_factor(ctx, l, a, b).exponent
        j = phase * M
        if j.denominator != 1:
            raise AssertionError("phase is not on the chosen modulus")
        bs.append(b)
        base.append(int(j) % M)
        sign.append(s)
    data = _BData(M, np.array(bs, dtype=np.int64), np.array(base, dtype=np.int64),
                  np.array(sign, dtype=np.int64))
    ctx._bcache[key] = data
    return data


def b_sum(ctx: HeckeContext, l: int, a: int, n: Fraction) -> Cyclotomic:
    """sum over b of (-Nb/(a,d))^(2k) e(bd(n/l - x_N/24)) psi(a, b)."""
    data = _b_data(ctx, l, a)
    step = n * 24
    if step.denominator != 1:
        raise DomainError(f"{n} is not in x_N/24 + Z")
    if not data.b.size:
        return Cyclotomic.rational(0)
    exps = (data.base + data.b * (int(step) % data.M)) % data.M
    acc = np.bincount(exps, weights=data.sign, minlength=data.M)
    nz = np.nonzero(acc)[0]
    return Cyclotomic(data.M, {int(j): int(acc[j]) for j in nz})


def _on_lattice(ctx: HeckeContext, n: Fraction) -> bool:
    return (n - ctx.offset).denominator == 1


def _series_coeff(series: QSeries, n: Fraction) -> Fraction:
    return series.coefficient(n)


def hecke_sum(ctx: HeckeContext, series: QSeries, l: int, n: Fraction | int | str) -> Cyclotomic:
    """l^(k/2) * c_{T_l f}(n): the explicit double sum without the l^(-k/2) factor."""
    n = Fraction(n)
    if not _on_lattice(ctx, n):
        raise DomainError(f"{n} is not in x_N/24 + Z")
    Pi = ctx.stats.Pi
    total = Cyclotomic.rational(0)
    for a in divisors(l):
        if math.gcd(a, ctx.N) != 1:
            continue
        m = l * n / (a * a)
        if not _on_lattice(ctx, m):
            continue
        c = _series_coeff(series, m)
        if not c:
            continue
        chi = kronecker(a, Pi)
        if not chi:
            continue
        term = b_sum(ctx, l, a, n) * (chi * c)
        total = total + term * _power_of(a, ctx.k)
    return total


def hecke_coeff(ctx: HeckeContext, series: QSeries, l: int, n: Fraction | int | str) -> Cyclotomic:
    """c_{T_l f}(n) computed from the coefficients of f."""
    if not in_L_f(ctx.f, l):
        raise DomainError(f"l = {l} is not in L_f")
    return hecke_sum(ctx, series, l, n) * l_factor(l, ctx.k)


def eigenvalue(ctx: HeckeContext, series: QSeries, l: int) -> Cyclotomic:
    """c_l with T_l f = c_l f; relies on the leading coefficient c_f(x_N/24) = 1."""
    return hecke_coeff(ctx, series, l, ctx.offset)


@dataclass(frozen=True)
class EigenCheck:
    l: int
    n: Fraction
    lhs: Cyclotomic
    rhs: Cyclotomic
    equal: bool

    def to_json(self) -> dict:
        n = self.n
        return {"l": self.l, "n": str(n.numerator) if n.denominator == 1 else f"{n.numerator}/{n.denominator}",
                "lhs": str(self.lhs), "rhs": str(self.rhs), "equal": self.equal}


def eigen_check(ctx: HeckeContext, series: QSeries, l: int,
                ns: Sequence[Fraction | int] | None = None, nmax: int = 40) -> list[EigenCheck]:
    """Test c_{T_l f}(n) = c_l c_f(n) exactly for the given n (default: offset + 0..nmax)."""
    if not in_L_f(ctx.f, l):
        raise DomainError(f"l = {l} is not in L_f")
    if ns is None:
        ns = [ctx.offset + j for j in range(nmax + 1)]
    lf = l_factor(l, ctx.k)
    s0 = hecke_sum(ctx, series, l, ctx.offset)
    out = []
    for n in ns:
        n = Fraction(n)
        s = hecke_sum(ctx, series, l, n)
        cf = _series_coeff(series, n)
        equal = (s - s0 * cf).is_zero()
        out.append(EigenCheck(l, n, s * lf, s0 * lf * cf, equal))
    return out


def required_terms(ctx: HeckeContext, lmax: int, nmax: int) -> int:
    """Series precision needed for every l <= lmax and n - x_N/24 <= nmax."""
    top = lmax * (ctx.offset + nmax)
    return max(int(math.floor(top - ctx.offset)) + 1, nmax + 1)


def L_f_upto(f: EtaQuotient, lmax: int) -> list[int]:
    return [l for l in range(1, lmax + 1) if in_L_f(f, l)]


def multiplicativity_check(ctx: HeckeContext, series: QSeries, l1: int, l2: int) -> bool:
    """c_{l1} c_{l2} = c_{l1 l2} for coprime l1, l2 in L_f."""
    if math.gcd(l1, l2) != 1:
        raise DomainError("l1 and l2 must be coprime")
    for l in (l1, l2):
        if not in_L_f(ctx.f, l):
            raise DomainError(f"l = {l} is not in L_f")
    n0 = ctx.offset
    # the l^(-k/2) factors are multiplicative, so compare the bare sums
    lhs = hecke_sum(ctx, series, l1, n0) * hecke_sum(ctx, series, l2, n0)
    return (lhs - hecke_sum(ctx, series, l1 * l2, n0)).is_zero()


# ------------------------------------------------------- literal operator

@dataclass(frozen=True)
class CycloSeries:
    """Truncated series sum coeffs[j] q^(offset + j) with cyclotomic coefficients."""

    offset: Fraction
    coeffs: tuple[Cyclotomic, ...]

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @property
    def end(self) -> Fraction:
        return self.offset + len(self.coeffs)

    @classmethod
    def from_qseries(cls, s: QSeries) -> CycloSeries:
        return cls(s.offset, tuple(Cyclotomic.rational(c) for c in s.coeffs))

    def coefficient(self, n: Fraction) -> Cyclotomic:
        if n >= self.end:
            raise PrecisionError(f"q^{n} is beyond the precision O(q^{self.end})")
        j = n - self.offset
        if j < 0 or j.denominator != 1:
            return Cyclotomic.rational(0)
        return self.coeffs[int(j)]

    def equals(self, other: CycloSeries | QSeries, terms: int | None = None) -> bool:
        if isinstance(other, QSeries):
            other = CycloSeries.from_qseries(other)
        if (self.offset - other.offset).denominator != 1:
            return False
        start = min(self.offset, other.offset)
        stop = min(self.end, other.end)
        if terms is not None:
            stop = min(stop, start + terms)
        n = start
        while n < stop:
            if not (self.coefficient(n) - other.coefficient(n)).is_zero():
                return False
            n += 1
        return True


def choose_xyz(N: int, a: int, b: int, d: int, rule: str = "canonical") -> tuple[int, int, int]:
    """Integers x, y, z with (Nd, -Nb + ax) = 1 and (-Nb + ax) y + Nd z = 1."""
    x = 0
    while math.gcd(N * d, -N * b + a * x) != 1:
        x += 1
    if rule == "alternate":
        x += 1
        while math.gcd(N * d, -N * b + a * x) != 1:
            x += 1
    elif rule != "canonical":
        raise DomainError(f"unknown selection rule {rule!r}")
    u = -N * b + a * x
    g, y, z = ext_gcd(u, N * d)
    if g != 1:
        raise AssertionError("extended Euclid returned a nontrivial gcd")
    if rule == "alternate":
        y, z = y + 2 * N * d, z - 2 * u
    return x, y, z


def operator_weights(chi: EtaQuotient, chi2: EtaQuotient, l: int,
                     rule: str = "canonical") -> Iterator[tuple[int, int, int, UnityRoot]]:
    """(a, b, d, w) with w = chi(M1)^(-1) chi'(M2)^(-1) for each term of the double sum."""
    N = chi.N
    for a in divisors(l):
        if math.gcd(a, N) != 1:
            continue
        d = l // a
        for b in range(d):
            if math.gcd(math.gcd(a, b), d) != 1:
                continue
            x, y, z = choose_xyz(N, a, b, d, rule)
            m1 = SL2Matrix(-N * b + a * x, z, -N * d, y)
            m2 = SL2Matrix(a * y, b * y - d * z, N, x)
            w = chi_eval(chi, LiftedMatrix(m1)) * chi_eval(chi2, LiftedMatrix(m2))
            yield a, b, d, w.inverse()


def hecke_general(series: QSeries | CycloSeries, l: int, r, r2, terms: int | None = None,
                  N: int | None = None, rule: str = "canonical") -> CycloSeries:
    """T_{l; chi_r, chi_r2} applied to a series by the defining double sum.

    The weight is taken to be half the exponent sum of r.  The result is
    returned on the lattice x_N(r2)/24 + Z starting at the smallest exponent
    that can occur.
    """
    if isinstance(r, EtaQuotient):
        N = r.N if N is None else N
    if isinstance(r2, EtaQuotient) and N is None:
        N = r2.N
    if N is None:
        raise DomainError("the level is needed when exponents are given as vectors")
    chi = r if isinstance(r, EtaQuotient) else EtaQuotient.from_vector(N, _vector(N, r))
    chi2 = r2 if isinstance(r2, EtaQuotient) else EtaQuotient.from_vector(N, _vector(N, r2))
    chi, chi2 = chi.at_level(N), chi2.at_level(N)
    if not compatible(l, chi, chi2, N):
        raise DomainError(f"the characters are not compatible for l = {l}")
    if isinstance(series, QSeries):
        series = CycloSeries.from_qseries(series)
    k = chi.weight
    lat = chi2.x_N / 24
    lowest = min(series.offset * a * a / l for a in divisors(l) if math.gcd(a, N) == 1)
    start = lat + math.ceil(lowest - lat)
    # m l / a^2 must stay below series.end for a = 1
    avail = max(0, math.ceil(series.end / l - start))
    if terms is None:
        terms = avail
    elif terms > avail:
        raise PrecisionError(f"only {avail} coefficients of T_l f are determined")
    weights = list(operator_weights(chi, chi2, l, rule))
    apow = {a: _power_of(a, k) for a in {w[0] for w in weights}}
    lf = l_factor(l, k)
    out = []
    for j in range(terms):
        m = start + j
        acc = Cyclotomic.rational(0)
        for a in apow:
            c = series.coefficient(m * l / (a * a))
            if c.is_zero():
                continue
            # f((a tau + b)/d) contributes c(n) e(n b/d) q^(n a/d) with n = m l / a^2
            inner = Cyclotomic.from_terms(
                (w.exponent + m * b / a, 1) for a2, b, _, w in weights if a2 == a)
            acc = acc + inner * c * apow[a]
        out.append(acc * lf)
    return CycloSeries(start, tuple(out))


def composition_check(series: QSeries, l1: int, l2: int, r, r2, r3, N: int | None = None,
                      terms: int = 30) -> bool:
    """T_{l2; r2, r3} T_{l1; r, r2} f = T_{l1 l2; r, r3} f on the first ``terms`` coefficients."""
    if math.gcd(l1, l2) != 1:
        raise DomainError("l1 and l2 must be coprime")
    first = hecke_general(series, l1, r, r2, N=N)
    lhs = hecke_general(first, l2, r2, r3, terms=terms, N=N)
    rhs = hecke_general(series, l1 * l2, r, r3, terms=terms, N=N)
    return lhs.equals(rhs, terms)


def dual_route_check(ctx: HeckeContext, series: QSeries, l: int, terms: int = 20,
                     rule: str = "canonical") -> bool:
    """hecke_general with chi = chi' against hecke_coeff, coefficient by coefficient."""
    lit = hecke_general(series, l, ctx.f, ctx.f, terms=terms, rule=rule)
    for j in range(lit.precision):
        n = lit.offset + j
        if not _on_lattice(ctx, n):
            return False
        if not (lit.coeffs[j] - hecke_coeff(ctx, series, l, n)).is_zero():
            return False
    return True


# --------------------------------------------------------- closed formulas

def closed_coeff(f: EtaQuotient, l: int) -> Cyclotomic:
    """c_f(l) for x_N = 0 from the eigenvalue relation (no q-expansion needed)."""
    ctx = HeckeContext.of(f)
    N = f.N
    if ctx.stats.x_N != 0:
        raise DomainError("closed formula needs x_N = 0")
    if not in_L_f(f, l):
        raise DomainError(f"l = {l} is not in L_f")
    for p, e_ in factorize(l) if l > 1 else ():
        if N % p and e_ >= 2:
            raise DomainError(f"{p}^2 divides l but {p} does not divide N")
    if l % 2 == 0 and N % 2 == 0:
        raise DomainError("closed formula needs l or N odd")
    r1 = f.r(1)
    kd = ctx.k + ctx.stats.delta
    total = Cyclotomic.rational(0)
    for a in divisors(l):
        if math.gcd(a, N) != 1:
            continue
        chi = kronecker(a, ctx.stats.Pi)
        if not chi:
            continue
        term = _power_of(a, ctx.k - 1)
        if not isinstance(term, Cyclotomic):
            term = Cyclotomic.rational(term)
        if l % 2:
            term = term * e(kd * (l - l // a) / 4)
        total = total + term * chi
    return total * (-r1)


def gauss_sum_direct(a: int, t: int) -> Cyclotomic:
    if a < 1 or a % 2 == 0:
        raise DomainError("gauss_sum needs an odd positive modulus")
    return Cyclotomic.from_terms((Fraction(t * b, a), kronecker(b, a)) for b in range(a))


def gauss_sum(a: int, t: int) -> Cyclotomic:
    """sum_{0 <= b < a} (b/a) e(tb/a) for odd a, in closed form."""
    if a < 1 or a % 2 == 0:
        raise DomainError("gauss_sum needs an odd positive modulus")
    rad_e, rad_o, _, _, irad, irad_p = rad_decomposition(a)
    if t % irad:
        return Cyclotomic.rational(0)
    eps = Cyclotomic.rational(1) if a % 4 == 1 else e(Fraction(1, 4))
    # a / sqrt(rad'(a)) = irad(a) * sqrt(radO(a))
    value = eps * sqrt_embed(rad_o) * (irad * kronecker(t // irad_p, rad_o))
    for p, _ in factorize(rad_e) if rad_e > 1 else ():
        value = value * (p - 1 - p * kronecker(t // irad, p) ** 2)
    return value


# ------------------------------------------------------------ batch driver

@dataclass
class IdentityReport:
    f: EtaQuotient
    checked: int = 0
    failures: list[EigenCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_eigenform(f: EtaQuotient, lmax: int = 121, nmax: int = 40,
                     series_for: Callable[[EtaQuotient, int], QSeries] | None = None) -> IdentityReport:
    """Check c_{T_l f}(n) = c_l c_f(n) for all l in L_f up to lmax and n - x_N/24 <= nmax."""
    from .qseries import expand

    ctx = HeckeContext.of(f)
    T = required_terms(ctx, lmax, nmax)
    series = (series_for or expand)(f, T)
    report = IdentityReport(f)
    for l in L_f_upto(f, lmax):
        for chk in eigen_check(ctx, series, l, nmax=nmax):
            report.checked += 1
            if not chk.equal:
                report.failures.append(chk)
    return report
