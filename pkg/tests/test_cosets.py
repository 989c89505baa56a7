from itertools import product
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from paramodforms.cosets import (complete_bottom_row, decompose_KNq_P, gamma0prime_reps,
                                 gamma_upper0_reps, in_Gamma0prime, in_KN, in_P20, in_Sp4Z,
                                 index_KN, inverse, klingen_column_reps, mul, p3_points,
                                 p3_reps, trace_cosets)
from paramodforms.paramodular import is_squarefree

PRIMES = [2, 3, 5, 7, 11]


def projective_classes(q):
    """Orbits of nonzero vectors of (Z/q)^4 under scaling by units (brute force)."""
    seen, classes = set(), 0
    units = [u for u in range(1, q) if gcd(u, q) == 1]
    for v in product(range(q), repeat=4):
        if not any(v) or v in seen:
            continue
        classes += 1
        for u in units:
            seen.add(tuple(u * x % q for x in v))
    return classes


@pytest.mark.parametrize("q", PRIMES)
def test_p3_count_and_inequivalence(q):
    pts = p3_points(q)
    assert len(pts) == 1 + q + q * q + q ** 3 == projective_classes(q)
    normalized = set()
    for v in pts:
        # every scalar multiple lands back on v only for u = 1
        for u in range(1, q):
            normalized.add(tuple(u * x % q for x in v))
    assert len(normalized) == (q - 1) * len(pts)


@pytest.mark.parametrize("N,q", [(1, 2), (1, 3), (10, 3), (6, 5)])
def test_p3_reps_are_primitive_lifts(N, q):
    pts = p3_points(q)
    for pt, v in zip(pts, p3_reps(q, N)):
        assert gcd(gcd(v[0] * N, v[1] * N), gcd(v[2] * N, v[3])) == 1
        u = next(u for u in range(1, q) if all((u * a - b) % q == 0 for a, b in zip(v, pt)))
        assert u


def test_p3_reps_reject_common_factor():
    with pytest.raises(ValueError):
        p3_reps(2, 6)


vectors = st.tuples(*[st.integers(-20, 20)] * 4)


@settings(max_examples=80, deadline=None)
@given(vectors)
def test_complete_bottom_row(v):
    assume(gcd(gcd(v[0], v[1]), gcd(v[2], v[3])) == 1)
    g = complete_bottom_row(v)
    assert in_Sp4Z(g) and list(g[3]) == list(v)


SQUAREFREE = [N for N in range(1, 31) if is_squarefree(N)]


@pytest.mark.parametrize("N", SQUAREFREE)
def test_klingen_reps_count_and_inequivalence(N):
    reps = klingen_column_reps(N)
    assert len(reps) == index_KN(N)
    assert len(gamma_upper0_reps(N)) == index_KN(N)
    for g in reps:
        assert in_KN(g, N)
    for i, a in enumerate(reps):
        ai = inverse(a)
        for b in reps[i + 1:]:
            assert not in_Gamma0prime(mul(b, ai), N)


@pytest.mark.parametrize("N,q", [(1, 2), (1, 3), (2, 3), (6, 5)])
def test_gamma0prime_reps(N, q):
    reps = gamma0prime_reps(N, q)
    assert len(reps) == 1 + q + q * q + q ** 3
    for g in reps:
        assert in_Gamma0prime(g, N)
    if q <= 3:
        for i, a in enumerate(reps):
            ai = inverse(a)
            for b in reps[i + 1:]:
                assert not in_Gamma0prime(mul(b, ai), N * q)


def test_decompositions_at_6_5():
    N, q = 6, 5
    count = 0
    for g1 in gamma0prime_reps(N, q):
        for h in klingen_column_reps(N):
            g = mul(g1, h)
            kappa, u = decompose_KNq_P(g, N, q)
            assert in_KN(kappa, N * q) and in_P20(u) and mul(kappa, u) == g
            count += 1
    assert count == 156 * 12 == len(trace_cosets(N, q))
