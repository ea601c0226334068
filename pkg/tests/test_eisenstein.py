from fractions import Fraction
import math
import random

import numpy as np
import pytest

from etaforms.eisenstein import (
    IDENTITY_PARAMETERS, EisParams, dedekind_6k_bulk, eis_coeff, eis_coeffs, p_factor, verify_identity,
)
from etaforms.etaquot import parse
from etaforms.ntheory import DomainError, dedekind_sum
from etaforms.qseries import expand


def _coprime_pairs(rng, count, cmax=200):
    out = []
    while len(out) < count:
        c = rng.randint(1, cmax)
        d = rng.randint(-10 * c, 10 * c)
        if math.gcd(d, 4 * c) == 1:
            out.append((c, d))
    return out


def test_p_factor_closed_forms():
    rng = random.Random(2)
    for c, d in _coprime_pairs(rng, 100):
        s = lambda k: dedekind_sum(-d, k)  # noqa: E731
        assert p_factor(4 * c, d, 0, Fraction(-3, 2)) == -18 * s(c) + 72 * s(4 * c) - Fraction(27, 2)
        assert p_factor(4 * c, d, 7, -4) == -48 * s(c) + 84 * s(2 * c) + 24 * s(4 * c) - 15
        assert p_factor(4 * c, d, Fraction(29, 2), Fraction(-22, 3)) == \
            -88 * s(c) + 174 * s(2 * c) + 4 * s(4 * c) - Fraction(45, 2)


def test_p_factor_domain():
    with pytest.raises(DomainError):
        p_factor(6, 1, 0, -1)
    with pytest.raises(DomainError):
        p_factor(8, 2, 0, -1)


def test_phase_periodic_in_d():
    rng = random.Random(3)
    for c, d in _coprime_pairs(rng, 50):
        for r2, r4 in IDENTITY_PARAMETERS.values():
            a = p_factor(4 * c, d, r2, r4) / 24 - Fraction(d, 4 * c)
            b = p_factor(4 * c, d + 4 * c, r2, r4) / 24 - Fraction(d + 4 * c, 4 * c)
            assert (a - b).denominator == 1


def test_bulk_dedekind_exact():
    rng = np.random.default_rng(5)
    k = rng.integers(1, 20000, size=2000)
    h = rng.integers(-10**6, 10**6, size=2000)
    keep = np.gcd(h, k) == 1
    h, k = h[keep], k[keep]
    got = dedekind_6k_bulk(h, k)
    for hh, kk, g in zip(h.tolist(), k.tolist(), got.tolist()):
        assert 6 * kk * dedekind_sum(hh, kk) == g


def test_params():
    p = EisParams("29/2", "-22/3")
    assert p.k == Fraction(15, 4) and p.D == 12 and p.in_window()
    assert p.r1 == Fraction(1, 3)
    assert not EisParams(0, -9).in_window()
    assert EisParams(0, Fraction(-3, 2)).quotient() == parse("1^6 4^-3/2")


def test_constant_term_and_errors():
    p = EisParams(0, Fraction(-3, 2), c_max=50)
    assert eis_coeff(p, 0).value == 1
    with pytest.raises(DomainError):
        eis_coeff(p, -1)
    with pytest.raises(DomainError):
        eis_coeffs(EisParams(0, -1, c_max=10), 3)  # k = 3/2
    with pytest.raises(DomainError):
        verify_identity(EisParams(0, -9, c_max=10))


def test_identities_coarse():
    for name, (r2, r4) in IDENTITY_PARAMETERS.items():
        rep = verify_identity(EisParams(r2, r4, c_max=300), n_max=6, tol=2e-2)
        assert rep.passed, (name, rep.max_error)
        assert rep.rows[0].abs_err == 0.0


def test_tail_bound_shrinks():
    p, q = EisParams(7, -4, c_max=100), EisParams(7, -4, c_max=400)
    assert eis_coeffs(q, 2)[0].tail_bound < eis_coeffs(p, 2)[0].tail_bound


@pytest.mark.slow
def test_tail_monotone():
    for r2, r4 in IDENTITY_PARAMETERS.values():
        errs = [verify_identity(EisParams(r2, r4, c_max=c)).max_error for c in (500, 2000)]
        assert errs[1] < errs[0]


@pytest.mark.slow
def test_integral_example_within_1e4():
    rep = verify_identity(EisParams(7, -4, c_max=2000), n_max=10, tol=1e-4)
    assert rep.passed
    assert expand(parse("1^2 2^7 4^-4"), 3).coefficient(0) == 1


@pytest.mark.slow
def test_sqrt_example_first_coefficient():
    p = EisParams(0, Fraction(-3, 2), c_max=4000)
    exact = expand(parse("1^6 4^-3/2"), 3).coefficient(1)
    assert abs(eis_coeff(p, 1).value - float(exact)) < 1e-4
