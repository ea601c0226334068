from fractions import Fraction
import itertools
import math
import random

import pytest

from etaforms.cyclo import Cyclotomic, UnityRoot, e, sqrt_embed, sqrt_int
from etaforms.etaquot import in_L_f, parse
from etaforms.hecke import (
    HeckeContext, L_f_upto, closed_coeff, compatible, composition_check, dual_route_check,
    eigen_check, eigenvalue, gauss_sum, gauss_sum_direct, hecke_coeff, hecke_general,
    multiplicativity_check, operator_weights, psi_factor, required_terms, verify_eigenform,
)
from etaforms.ntheory import DomainError, factorize
from etaforms.qseries import expand

from conftest import F4, F6, F12, F27


def _setup(text, lmax=30, nmax=10):
    f = parse(text)
    ctx = HeckeContext.of(f)
    return f, ctx, expand(f, required_terms(ctx, lmax, nmax))


def test_compatible():
    f = parse(F27)
    assert compatible(1, f, f, 27)
    assert compatible(4, f, f, 27)
    assert not compatible(2, f, f, 27)
    for l in L_f_upto(parse(F6), 60):
        assert compatible(l, parse(F6), parse(F6), 6)
    with pytest.raises(DomainError):
        compatible(1, parse("1^2"), parse("1^4"), 1)


def test_psi_factor():
    ctx = HeckeContext.of(parse(F6))
    assert psi_factor(ctx, 1, 1, 0) == UnityRoot(0)
    ctx = HeckeContext.of(parse("1^12"))
    assert psi_factor(ctx, 2, 1, 1) == UnityRoot(0)


def test_psi_factor_half_integral_against_dual_route():
    f, ctx, s = _setup(F4, lmax=9, nmax=4)
    # first case of the split: l odd
    assert psi_factor(ctx, 9, 1, 1) == UnityRoot(-Fraction(7, 8) * 8 + Fraction(7, 8) * 8 * 3)
    assert dual_route_check(ctx, s, 9, terms=4)


def test_identity_operator():
    f, ctx, s = _setup(F6, lmax=1, nmax=10)
    for j in range(10):
        n = ctx.offset + j
        assert hecke_coeff(ctx, s, 1, n) == Cyclotomic.rational(s.coefficient(n))
    assert eigenvalue(ctx, s, 1) == Cyclotomic.rational(1)
    lit = hecke_general(s, 1, f, f, terms=10)
    assert lit.equals(s, 10)


def test_level_27_l_4():
    f, ctx, s = _setup(F27, lmax=4, nmax=14)
    c4 = eigenvalue(ctx, s, 4)
    assert hecke_coeff(ctx, s, 4, 1) == c4 * s.coefficient(1)
    assert dual_route_check(ctx, s, 4, terms=12)


def test_level_4_l_9():
    f, ctx, s = _setup(F4, lmax=9, nmax=2)
    c9 = eigenvalue(ctx, s, 9)
    assert hecke_coeff(ctx, s, 9, Fraction(5, 8)) == c9


def test_level_6_l_13():
    f, ctx, s = _setup(F6, lmax=13, nmax=40)
    # with the l^(-k/2) normalization only the a = 1 terms survive: c_13 = c_f(13) / sqrt(13)
    assert eigenvalue(ctx, s, 13) * sqrt_int(13) == Cyclotomic.rational(s.coefficient(13))
    assert all(c.equal for c in eigen_check(ctx, s, 13, nmax=40))


def test_eigen_check_rejects_l_outside_L_f():
    f, ctx, s = _setup(F27, lmax=2, nmax=2)
    with pytest.raises(DomainError):
        eigen_check(ctx, s, 2)


@pytest.mark.parametrize("text,pair", [(F27, (4, 7)), (F6, (13, 25)), (F27, (1, 10))])
def test_multiplicativity_examples(text, pair):
    f, ctx, s = _setup(text, lmax=pair[0] * pair[1], nmax=0)
    assert multiplicativity_check(ctx, s, *pair)


def test_dual_route_several():
    for text, ls in ((F27, (4, 7, 10)), (F6, (13, 25)), ("1^8", (4, 7)), ("1^12", (3, 5)),
                     (F12, (25,)), (F4, (9, 25))):
        f, ctx, s = _setup(text, lmax=max(ls), nmax=8)
        for l in ls:
            assert dual_route_check(ctx, s, l, terms=6), (text, l)


def test_xyz_selection_independent():
    rng = random.Random(8)
    triples = 0
    quotients = [parse(t) for t in (F27, F6, "1^8", F12, F4)]
    while triples < 50:
        f = rng.choice(quotients)
        l = rng.choice(L_f_upto(f, 60))
        a = dict(((x[0], x[1]), x[3]) for x in operator_weights(f, f, l, "canonical"))
        b = dict(((x[0], x[1]), x[3]) for x in operator_weights(f, f, l, "alternate"))
        for key in rng.sample(sorted(a), min(3, len(a))):
            assert a[key] == b[key]
            triples += 1


def _composition_cases():
    cases = []
    for text in (F27, "1^8", "1^12", "1^6", "1^4 2^4"):
        f = parse(text)
        ls = [l for l in L_f_upto(f, 40) if l > 1]
        pairs = [(a, b) for a, b in itertools.combinations(ls, 2) if math.gcd(a, b) == 1]
        pairs.sort(key=lambda p: p[0] * p[1])
        cases += [(text, p) for p in pairs[:4]]
    return cases


@pytest.mark.parametrize("text,pair", _composition_cases())
def test_composition(text, pair):
    f = parse(text)
    l1, l2 = pair
    ctx = HeckeContext.of(f)
    s = expand(f, int(l1 * l2 * (ctx.offset + 31)) + 2)
    assert composition_check(s, l1, l2, f, f, f, terms=30)


def test_composition_cases_count():
    assert len(_composition_cases()) == 20


def test_gauss_sum_examples():
    assert gauss_sum(1, 0) == Cyclotomic.rational(1)
    assert gauss_sum(3, 1) == e(Fraction(1, 4)) * sqrt_embed(3)
    assert gauss_sum(3, 1) == e(Fraction(1, 3)) - e(Fraction(2, 3))
    assert gauss_sum(9, 1).is_zero()
    with pytest.raises(DomainError):
        gauss_sum(4, 1)


def test_gauss_sum_closed_form():
    for a in range(1, 100, 2):
        for t in range(a):
            assert gauss_sum(a, t) == gauss_sum_direct(a, t), (a, t)


def test_closed_coeff_level_12():
    f = parse(F12)
    s = expand(f, 210)
    assert closed_coeff(f, 1) == Cyclotomic.rational(-f.r(1)) == Cyclotomic.rational(s.coefficient(1))
    for l in range(25, 201, 24):
        if in_L_f(f, l) and all(e_ == 1 for _, e_ in factorize(l)):
            got = closed_coeff(f, l)
            assert got == Cyclotomic.rational(s.coefficient(l))


def test_closed_coeff_rad_case():
    f = parse("1^2 2^-1 3^2 6^-1")
    for l in (3, 9, 27, 81):
        assert closed_coeff(f, l) == Cyclotomic.rational(-f.r(1))
    with pytest.raises(DomainError):
        closed_coeff(parse(F6), 1)  # x_N != 0


def test_verify_eigenform_small():
    rep = verify_eigenform(parse(F27), lmax=31, nmax=10)
    assert rep.ok and rep.checked == len(L_f_upto(parse(F27), 31)) * 11
