from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from paramodforms.paramodular import IndexForm, brute_m_N, canonical_class, gritsenko_lift, multiply
from paramodforms.weight4 import (INCONCLUSIVE, TESTS, SpannedSpace, decompositions,
                                  determining_filter, evaluate_test, passes_filter,
                                  product_probe, rank_on, report_from_numbers, run_test)

from conftest import jacobi_tb


def brute_decompositions(n, r, m, N):
    out = []
    for n1 in range(0, n + 1):
        for m1 in range(0, m + 1):
            R = isqrt(4 * n * m * N) + 1
            for r1 in range(-R, R + 1):
                n2, r2, m2 = n - n1, r - r1, m - m1
                if (4 * n1 * m1 * N - r1 * r1 > 0 and n1 > 0 and
                        4 * n2 * m2 * N - r2 * r2 > 0 and n2 > 0):
                    out.append(((n1, r1, m1), (n2, r2, m2)))
    return sorted(out)


keys = st.sampled_from([6, 10, 15]).flatmap(lambda N: st.tuples(
    st.just(N), st.integers(1, 5), st.integers(1, 4)).flatmap(lambda x: st.tuples(
        st.just(x[0]), st.just(x[1]),
        st.integers(0, isqrt(4 * x[1] * x[2] * x[0] - 1)), st.just(x[2]))))


@settings(max_examples=50, deadline=None)
@given(keys)
def test_decompositions_match_triple_loop(k):
    N, n, r, m = k
    got = decompositions(IndexForm(n, r, m, N))
    assert sorted(got) == brute_decompositions(n, r, m, N)
    assert sorted((b, a) for a, b in got) == sorted(got)


@settings(max_examples=30, deadline=None)
@given(keys)
def test_filter_matches_brute_orbit_minimum(k):
    N, n, r, m = k
    for d in (1, 2, 3):
        for delta in {1, d}:
            want = all(brute_m_N(t1, N) < d or brute_m_N(t2, N) < delta
                       for t1, t2 in brute_decompositions(n, r, m, N))
            assert passes_filter((n, r, m), d, delta, N) == want


@settings(max_examples=30, deadline=None)
@given(keys)
def test_filter_monotone_in_d(k):
    N, n, r, m = k
    key = tuple(canonical_class((n, r, m), N))
    passed = [passes_filter(key, d, 1, N) for d in range(1, 6)]
    assert passed == sorted(passed)


def test_decompositions_need_definite_form():
    with pytest.raises(ValueError):
        decompositions(IndexForm(1, 10, 1, 6))


@pytest.mark.parametrize("name", TESTS)
def test_empty_spaces_are_inconclusive(name):
    applicable, verdict = evaluate_test(name, 100, 3, 5, 1, 0, 0, 0)
    assert verdict == INCONCLUSIVE and not applicable


def test_level_286_conclusions():
    # recorded numbers: dim S4 = 189, spanned plus/minus 161/27, dim J2 = 3
    r = report_from_numbers("H4(N,d,1)+", 286, 3, 189, 3, 161, 27, 159)
    assert r.verdict.code == "S2+=Grit"
    assert r.verdict.statement == "Jacobi restriction to two or more terms bounds the plus space"
    assert report_from_numbers("H4(N,d,1)+", 286, 3, 189, 3, 161, 27, 158).verdict == INCONCLUSIVE
    r = report_from_numbers("H4(N,d,1)-", 286, 1, 189, 3, 161, 27, 27)
    assert r.verdict.code == "S2-=0" and r.verdict.statement == "the Fricke minus space is 0"
    assert report_from_numbers("H4(N,d,1)-", 286, 1, 189, 3, 161, 27, 25).verdict == INCONCLUSIVE
    assert r.recompute() == (r.applicable, r.verdict)


def test_special_levels_branch():
    r = report_from_numbers("H4(N,d,1)+", 249, 3, 100, 10, 95, 4, 95)
    assert r.verdict.code == "S2+<=J+1"
    r = report_from_numbers("H4(N,d,1)+", 249, 2, 100, 10, 95, 4, 95)
    assert r.verdict.code == "S2+=Grit"


def test_level_range_is_enforced():
    with pytest.raises(ValueError):
        report_from_numbers("H4(N,d,1)", 37, 2, 3, 1, 3, 0, 3)
    with pytest.raises(ValueError):
        report_from_numbers("H4(N,d,1)", 98, 2, 3, 1, 3, 0, 3)
    report_from_numbers("H4(N,d,1)", 37, 2, 3, 1, 3, 0, 3, allow_any_level=True)


@pytest.fixture(scope="module")
def products67():
    cap, N = 200, 67
    P = (cap + N * N) // (4 * N) + 2
    a = gritsenko_lift(jacobi_tb("TB(2; 8,5,4,3,3,2,2,1,1,1)", 2, N, P), cap)
    b = gritsenko_lift(jacobi_tb("TB(2; 7,5,4,4,3,3,2,2,1,1)", 2, N, P), cap)
    return a, b, [multiply(a, a), multiply(a, b), multiply(b, b)]


def test_spanned_space_and_filters(products67):
    _, _, prods = products67
    S = SpannedSpace(1, prods)
    assert S.dim == 3 and rank_on(S, S.determining) == 3
    ranks = [rank_on(S, determining_filter(S.determining, d, 1, 67)) for d in range(1, 5)]
    assert ranks == sorted(ranks) and ranks[0] == 0 and ranks[-1] == 3
    with pytest.raises(ValueError):
        SpannedSpace(-1, prods)


def test_run_test_on_toy_numbers(products67):
    _, _, prods = products67
    Sp, Sm = SpannedSpace(1, prods), SpannedSpace(-1, [])
    lines = [run_test(n, Sp, Sm, 2, {"dim_S4": 3, "dim_J": 2}, allow_any_level=True)
             for n in TESTS]
    assert [r.verdict.code for r in lines] == ["S2=Grit", "S2=Grit", "S2+=Grit", "S2-=0"]
    for r in lines:
        assert r.recompute() == (r.applicable, r.verdict)


def test_product_probe(products67):
    a, b, _ = products67
    assert product_probe(a, [a, b]) == 2
