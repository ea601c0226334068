from fractions import Fraction
import random

import pytest

from etaforms.charclass import representatives
from etaforms.dims import (
    DimQuery, condition_holds, dimension, dimension_cusp, eisenstein_count, table,
    upper_bound, weight2_special, weight_summary, TABLE_LEVELS,
)
from etaforms.etaquot import CuspOrders, EtaQuotient, cusp_orders, parse, quotient_from_orders
from etaforms.gamma0 import invariants
from etaforms.ntheory import DomainError, divisors

from conftest import F4, F6


def _query(text, level=None, t=0):
    f = parse(text, level=level)
    return DimQuery(f.N, f, t)


def test_dimension_examples():
    r = dimension(_query("1^24"))
    assert r.exact and r.value == 2
    r = dimension(_query("1^-15 2^16 7^1", level=98))
    assert r.exact and r.value == 8
    r = dimension(_query("1^-7 2^1 4^6 5^1", level=20))
    assert r.exact and r.value == 1


def test_cusp_dimension():
    for text in (F6, F4):
        q = _query(text)
        assert dimension(q).value == 2
        assert eisenstein_count(q) == 1
        assert dimension_cusp(q) == 1
    with pytest.raises(DomainError):
        dimension_cusp(_query("1^2"))


def test_cusp_dimension_without_eisenstein_cusps():
    q = _query("1^-4 2^9")  # x = (1, 14)
    assert eisenstein_count(q) == 0
    assert dimension_cusp(q) == dimension(q).value == 1


@pytest.mark.parametrize("weight,N,row", [
    ("1/2", 4, (192, 146, 136, 10, 0)),
    ("1/2", 50, (48, 4, 0, 0, 4)),
    ("1", 36, (1152, 412, 0, 198, 168, 30, 15, 0, 1, 0, 0)),
])
def test_table_rows(weight, N, row):
    (r,) = table(weight, [N])
    got = (r.a, r.v) + tuple(r.padded(len(row) - 2))
    assert got == row


def test_weight_half_nonzero_spaces():
    rows = table("1/2")
    assert sum(sum(r.counts[1:]) for r in rows) == 188


def test_weight_three_halves_summary():
    s = weight_summary("3/2")
    assert (s.spaces, s.max_level, s.max_dim) == (17862, 400, 48)


def test_bounds_weight_half():
    k = Fraction(1, 2)
    for N in TABLE_LEVELS[k]:
        ub = upper_bound(N, k)
        for r in representatives(N, k):
            res = dimension(DimQuery(N, EtaQuotient.from_vector(N, r)))
            assert res.value <= ub
            if res.exact:
                assert res.value >= 0


@pytest.mark.parametrize("N,x,want", [(11, (12, -12), 1), (11, (120, -120), 2), (2, (0, 0), 1)])
def test_weight2_special_examples(N, x, want):
    assert weight2_special(CuspOrders.from_vector(N, x)) == want


def test_weight2_special_rejects():
    with pytest.raises(DomainError):
        weight2_special(CuspOrders.from_vector(9, [0, 0, 0]))
    with pytest.raises(DomainError):
        weight2_special(CuspOrders.from_vector(11, [1, 0]))


def test_weight2_special_matches_main_formula():
    rng = random.Random(3)
    checked = 0
    for N in (2, 3, 5, 6, 7, 10, 11, 13, 14, 15):
        done = 0
        while done < 20:
            r = [rng.randint(-6, 6) for _ in divisors(N)]
            r[0] -= sum(r)
            f = EtaQuotient.from_vector(N, r)
            x = cusp_orders(f)
            q = DimQuery(N, f, 1)
            if not condition_holds(q):
                continue
            assert weight2_special(x) == dimension(q).value
            done += 1
            checked += 1
    assert checked == 200


def test_large_levels_never_certified():
    for N in range(1024, 1101):
        inv = invariants(N)
        # the right-hand side of the t = 0 condition is at least this bound
        bound = 2 - Fraction(6 * inv.eps2 + 8 * inv.eps3 + 12 * inv.eps_inf, inv.m)
        assert Fraction(3, 2) <= bound
    rng = random.Random(0)
    for N in (1024, 1050, 1089, 1100):
        reps = list(representatives(N, Fraction(3, 2)))
        for r in rng.sample(reps, min(50, len(reps))):
            assert not condition_holds(DimQuery(N, EtaQuotient.from_vector(N, r)))
