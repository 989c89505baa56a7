from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from paramodforms import multimod, series
from paramodforms.series import FourierSeries, ZetaPoly
from paramodforms.theta import (ThetaBlockSpec, ThetaQuotientSpec, delta_expansion,
                                eta_expansion, tb_expand, tb_index, tb_q_order,
                                theta_expansion, theta_quotient_expand, theta_triple_product)


def pentagonal(precision):
    c = [0] * precision
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e < precision:
                c[e] += (-1) ** abs(kk)
                hit = True
        if not hit:
            break
        k += 1
    return c


def test_eta_matches_pentagonal_theorem():
    fs = eta_expansion(60)
    assert fs.q_offset == Fraction(1, 24)
    assert [fs.coefficient(fs.q_offset + s, 0) for s in range(60)] == pentagonal(60)


def test_delta_tau_values():
    fs = delta_expansion(8)
    tau = [fs.coefficient(1 + s, 0) for s in range(7)]
    assert tau == [1, -24, 252, -1472, 4830, -6048, -16744]


def test_theta_sum_equals_triple_product():
    for r in (1, 2, 5):
        assert theta_expansion(r, 30) == theta_triple_product(r, 30)


random_blocks = st.lists(st.integers(1, 6), min_size=1, max_size=8).flatmap(
    lambda rs: st.integers(0, 4).map(lambda extra: (2 * extra + len(rs), rs)))


@settings(max_examples=25, deadline=None)
@given(random_blocks)
def test_product_engine_matches_defining_sums(block):
    phi0, rs = block
    d = {0: phi0}
    for r in rs:
        d[r] = d.get(r, 0) + 1
    spec = ThetaBlockSpec.from_dict(d)
    assert tb_expand(spec, 12) == tb_expand(spec, 12, method="series")


def test_theta_block_bookkeeping():
    spec = ThetaBlockSpec.parse("TB(2; 1,1,1,2,2,2,3,3,4,5)")
    assert tb_index(spec) == 37
    assert tb_q_order(spec) == 1
    assert ThetaBlockSpec.parse(spec.notation()) == spec


def test_theta_quotient_index_and_parse():
    q = ThetaQuotientSpec.parse("8/1,18/6,14/7")
    assert q.index == 249
    assert ThetaQuotientSpec.parse(q.notation()) == q


def test_theta_quotient_is_exact_quotient():
    # theta_d / theta_e times theta_e gives theta_d back
    q = ThetaQuotientSpec.parse("6/2")
    fs = theta_quotient_expand(q, 10).to_series()
    back = series.mul(fs, theta_expansion(2, 10))
    assert back.truncate(9) == theta_expansion(6, 10).truncate(9)


polys = st.dictionaries(st.integers(-6, 6).map(lambda x: 2 * x), st.integers(-9, 9),
                        max_size=4).map(ZetaPoly.from_dict)


def series_of(polys_list, precision):
    return FourierSeries(0, {i: p for i, p in enumerate(polys_list) if p}, precision)


@settings(max_examples=50, deadline=None)
@given(st.lists(polys, min_size=1, max_size=5), st.lists(polys, min_size=1, max_size=5))
def test_series_ring_laws(a, b):
    A, B = series_of(a, 5), series_of(b, 5)
    assert A * B == B * A
    assert (A + B) - B == A
    one = FourierSeries.one(5)
    assert A * one == A


@settings(max_examples=50, deadline=None)
@given(st.lists(polys, min_size=1, max_size=5), st.integers(-5, 5))
def test_exact_division_recovers_factor(a, b0):
    A = series_of(a, 5)
    unit = series_of([ZetaPoly.monomial(2 * b0, 1), ZetaPoly.from_dict({2: 3, -2: 1})], 5)
    assert series.divide_exact(A * unit, unit) == A


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-10 ** 40, 10 ** 40), min_size=1, max_size=12))
def test_crt_round_trip(xs):
    bound = max(abs(x) for x in xs)
    residues = [(p, np.array([x % p for x in xs], dtype=np.int64))
                for p in multimod.primes_for_bound(bound)]
    assert list(multimod.crt(residues)) == xs
