"""Acceptance criteria 1-10, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, and also when this file is run directly with python3.
"""

from __future__ import annotations

import io
import itertools
import math
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from etaforms import cli
from etaforms.charclass import (
    LiftedMatrix, chi_eval, chi_via_petersson, count_characters, delta_sequence, random_gamma0,
)
from etaforms.cyclo import Cyclotomic, UnityRoot, sqrt_embed
from etaforms.dims import weight_summary
from etaforms.eisenstein import IDENTITY_PARAMETERS, EisParams, verify_identity
from etaforms.etaquot import EtaQuotient, an_inverse, an_matrix, cusp_orders, in_L_f, parse, valence_sum
from etaforms.gamma0 import invariants
from etaforms.hecke import (
    HeckeContext, L_f_upto, closed_coeff, eigenvalue, gauss_sum, gauss_sum_direct,
    multiplicativity_check, required_terms, verify_eigenform,
)
from etaforms.ntheory import divisors, factorize, kronecker
from etaforms.qseries import expand
from etaforms.search import TYPE_I_LEVELS, search_admissible, search_level

FIXTURES = Path(__file__).parent / "fixtures"
RESULTS: dict[int, tuple[bool, str]] = {}

F4 = "1^-7 2^17 4^-3"
F6 = "1^1 2^1 3^1 6^3"
F12 = "1^1 2^-1 3^-1 4^1 6^4 12^-2"
F27 = "3^2 9^-1 27^1"


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    assert ok, f"criterion {n}: {detail}"


def summary_lines() -> list[str]:
    return [f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
            for n, (ok, detail) in sorted(RESULTS.items())]


def _cli(*argv: str) -> str:
    out = io.StringIO()
    code = cli.run(list(argv), out, io.StringIO())
    assert code == 0
    return out.getvalue()


# ------------------------------------------------------------------ tables

def test_criterion_1_table1():
    t = time.perf_counter()
    got = _cli("table", "--weight", "1/2", "--csv")
    want = (FIXTURES / "table1.csv").read_text()
    dt = time.perf_counter() - t
    rows = len(want.splitlines()) - 1
    record(1, got == want and rows == 22 and dt < 120, f"Table 1, {rows} rows identical, {dt:.1f}s")


def test_criterion_2_table2():
    t = time.perf_counter()
    got = _cli("table", "--weight", "1", "--csv")
    want = (FIXTURES / "table2.csv").read_text()
    dt = time.perf_counter() - t
    row98 = next(line for line in got.splitlines() if line.startswith("98,"))
    ok = got == want and row98.startswith("98,96,1,") and row98.endswith(",1") and dt < 600
    record(2, ok, f"Table 2, {len(want.splitlines()) - 1} rows identical, {dt:.1f}s")


def test_criterion_3_weight_three_halves():
    t = time.perf_counter()
    s = weight_summary("3/2")
    dt = time.perf_counter() - t
    got = (s.spaces, s.max_level, s.max_dim)
    record(3, got == (17862, 400, 48) and dt < 3600, f"(spaces, max N, max dim) = {got}, {dt:.1f}s")


# ------------------------------------------------------------------ search

def test_criterion_4_type_one_census():
    t = time.perf_counter()
    recs = search_admissible(TYPE_I_LEVELS, ("I",))
    level1 = search_level(1, ("I",), include_constant=True)
    dt = time.perf_counter() - t
    powers = sorted(int(r.f.r(1)) for r in level1)
    ok = len(recs) == 2277 and powers == list(range(24)) and dt < 600
    record(4, ok, f"{len(recs)} type-I records, level 1 gives eta^0..eta^{powers[-1]}, {dt:.1f}s")


# ------------------------------------------------------------------ Hecke

def hecke_sample() -> list[EtaQuotient]:
    sample = [parse(f"1^{r}") for r in (1, 2, 3, 4, 6, 8, 12)]
    for N, picks in ((4, 4), (6, 4), (12, 2), (27, 4)):
        recs = search_level(N, ("I",))
        step = len(recs) // picks
        sample += [recs[i * step].f for i in range(picks)]
    sample += [parse(F6), parse(F12), parse(F4)]
    return sample


def test_criterion_5_eigenforms():
    t = time.perf_counter()
    sample = hecke_sample()
    levels = {f.N for f in sample}
    checked = failures = 0
    for f in sample:
        rep = verify_eigenform(f, 121, 40)
        checked += rep.checked
        failures += len(rep.failures)
    dt = time.perf_counter() - t
    ok = len(sample) >= 21 and {1, 4, 6, 12, 27} <= levels and failures == 0 and checked > 0 and dt < 900
    record(5, ok, f"{len(sample)} quotients, {checked} identities, {failures} failures, {dt:.1f}s")


def coprime_pairs(f: EtaQuotient, count: int = 10, limit: int = 400) -> list[tuple[int, int]]:
    ls = L_f_upto(f, limit)[1:]
    pairs = [(a, b) for a, b in itertools.combinations(ls, 2) if math.gcd(a, b) == 1]
    pairs.sort(key=lambda p: (p[0] * p[1], p))
    return pairs[:count]


def test_criterion_6_multiplicativity():
    quotients = [parse(t) for t in ("1^1", "1^2", F4, F27, F6, F12)]
    bad, total = [], 0
    for f in quotients:
        pairs = coprime_pairs(f)
        assert len(pairs) == 10, str(f)
        ctx = HeckeContext.of(f)
        top = max(a * b for a, b in pairs)
        ser = expand(f, int(top * ctx.offset) + 2)
        for a, b in pairs:
            total += 1
            if not multiplicativity_check(ctx, ser, a, b):
                bad.append((str(f), a, b))
    record(6, not bad, f"{total} coprime pairs over {len(quotients)} quotients, failures: {bad or 'none'}")


RAD_INSTANCES = [
    ("1^2 2^-1 3^2 6^-1", (3, 9, 27, 81)),
    ("1^2 2^-1 3^4 6^-2", (9, 81)),
    ("1^4 2^-2 3^2 6^-1", (9, 81)),
    ("3^2 6^-1", (9, 81)),
    ("3^4 6^-2", (9, 81)),
]


def test_criterion_7_closed_formulas():
    f = parse(F12)
    ser = expand(f, 210)
    ls = [l for l in range(1, 201, 24) if all(e == 1 for _, e in (factorize(l) if l > 1 else ()))]
    mism = []
    for l in ls:
        want = -math.prod(1 + kronecker(p, 6) for p, _ in (factorize(l) if l > 1 else ()))
        if ser.coefficient(l) != want or closed_coeff(f, l) != Cyclotomic.rational(want):
            mism.append(l)
    level6 = {str(r.f) for r in search_level(6, ("I",))}
    inst = 0
    for text, lvals in RAD_INSTANCES:
        g = parse(text)
        assert text in level6 and g.x_N == 0
        s = expand(g, max(lvals) + 1)
        for l in lvals:
            assert in_L_f(g, l)
            inst += 1
            want = Cyclotomic.rational(-g.r(1))
            if closed_coeff(g, l) != want or s.coefficient(l) != -g.r(1):
                mism.append((text, l))
    record(7, not mism and inst >= 10,
           f"level-12 product formula on l = {ls}; {inst} rad(l) | rad(N) instances; mismatches: {mism or 'none'}")


def test_criterion_8_half_integral():
    f = parse(F4)
    ser = expand(f, 1300)
    c = lambda l: ser.coefficient(Fraction(5 * l * l, 8))  # noqa: E731
    pairs_ok = all(c(a) * c(b) == c(a * b) for a, b in ((3, 5), (3, 7), (5, 7)))
    ctx = HeckeContext.of(f)
    small = expand(f, required_terms(ctx, 225, 0))
    ints = []
    for l in (3, 5, 7, 15):
        v = eigenvalue(ctx, small, l * l) * sqrt_embed(l) * l
        ints.append(v.rational_value())
    ok = pairs_ok and all(v is not None and v.denominator == 1 for v in ints)
    record(8, ok, f"pairs hold: {pairs_ok}; l^(3/2) c_(l^2) = {[str(v) for v in ints]}")


def test_criterion_9_eisenstein():
    t = time.perf_counter()
    parts, ok = [], True
    for name, (r2, r4) in IDENTITY_PARAMETERS.items():
        coarse = verify_identity(EisParams(r2, r4, c_max=1000)).max_error
        fine = verify_identity(EisParams(r2, r4, c_max=2000))
        ok &= fine.passed and fine.max_error < 1e-3 and fine.max_error < coarse
        parts.append(f"{name} {coarse:.1e} -> {fine.max_error:.1e}")
    dt = time.perf_counter() - t
    record(9, ok and dt < 300, f"max error c_max 1000 -> 2000: {'; '.join(parts)}, {dt:.1f}s")


# ---------------------------------------------------------- structural

def _structural() -> list[str]:
    failed = []
    for N in range(1, 501):
        A, B = an_matrix(N), an_inverse(N)
        d = len(A)
        if any(sum(A[i][t] * B[t][j] for t in range(d)) != (i == j) for i in range(d) for j in range(d)):
            failed.append(f"inverse {N}")
    rng = random.Random(10)
    for _ in range(500):
        N = rng.randint(1, 200)
        f = EtaQuotient.from_vector(N, [Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3))) for _ in divisors(N)])
        if valence_sum(cusp_orders(f)) != 2 * invariants(N).m * f.weight:
            failed.append(f"valence {f}")
    for _ in range(1000):
        N = rng.randint(1, 100)
        f = EtaQuotient.from_vector(N, [rng.randint(-6, 6) for _ in divisors(N)])
        g = random_gamma0(N, rng)
        eps = rng.choice((1, -1))
        lift = LiftedMatrix(g, UnityRoot(0 if eps == 1 else Fraction(1, 2)))
        if chi_eval(f, lift, D=2) != chi_via_petersson(f, g, eps):
            failed.append(f"multiplier {f} {g}")
    for N in range(1, 1024):
        inv = invariants(N)
        if 12 + inv.m - 3 * inv.eps2 - 4 * inv.eps3 - 6 * inv.eps_inf != 12 * inv.genus or inv.genus < 0:
            failed.append(f"genus {N}")
    for a in range(1, 100, 2):
        for t in range(a):
            if gauss_sum(a, t) != gauss_sum_direct(a, t):
                failed.append(f"gauss {a} {t}")
    failed += _delta_formula_failures()
    return failed


def _delta_formula_failures() -> list[str]:
    bad = []
    for N in range(2, 401):
        fac = factorize(N)
        primes = [p for p, _ in fac]
        if len(fac) == 1:
            p, a = fac[0]
            if p >= 5:
                want = [24 // math.gcd(12, p - 1)]
            elif p == 2:
                want = {1: [24], 2: [24, 8]}.get(a, [2, 24, 8] if a % 2 == 0 else [2, 8, 24])
            else:
                want = [12] if a == 1 else [12, 3] if a % 2 == 0 else [3, 12]
            checks = [(None, want)]
        elif len(fac) == 2 and fac[0] == (2, 2) and primes[1] >= 5:
            g = math.gcd(12, primes[1] - 1)
            checks = [(None, [2 * g, 8, 24 // g])]
        elif len(fac) == 2 and primes[0] >= 5:
            p1, p2 = primes
            checks = [([p1, p2], _two_prime(p1, p2)), ([p2, p1], _two_prime(p2, p1))]
        else:
            continue
        for order, want in checks:
            if delta_sequence(N, order) != want:
                bad.append(f"delta {N} {order}")
    if count_characters(4) != 192:
        bad.append("count 4")
    return bad


def _two_prime(p1: int, p2: int) -> list[int]:
    g2 = math.gcd(12, p2 - 1)
    g12 = math.gcd(12, (p1 - 1) * (p2 - 1))
    return [24 * g2 // g12 // math.gcd(12 * g2 // g12, p1 - p2), 24 // g2]


def test_criterion_10_structural():
    t = time.perf_counter()
    failed = _structural()
    dt = time.perf_counter() - t
    record(10, not failed and dt < 120, f"six property suites, failures: {failed[:5] or 'none'}, {dt:.1f}s")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    tests.sort(key=lambda fn: int(fn.__name__.split("_")[2]))
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    print("\n".join(summary_lines()))
