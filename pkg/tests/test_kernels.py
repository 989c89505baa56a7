import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paramodforms import kernels

P62 = (1 << 61) - 1
P31 = 2147483647

numba_only = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba backend unavailable")


def _poly_mul_ref(A, a, b, p):
    # dense schoolbook reference: A * (1 - q^a zeta^b) with zeta slot j = exponent + offset
    out = A.copy() % p
    n, w = A.shape
    for i in range(n - a):
        for j in range(w):
            jj = j + b
            if 0 <= jj < w:
                out[i + a, jj] = (out[i + a, jj] - A[i, j]) % p
    return out


arrays = st.integers(1, 12).flatmap(
    lambda n: st.integers(1, 9).flatmap(
        lambda w: st.lists(st.integers(0, 1000), min_size=n * w, max_size=n * w).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(n, w))))


@settings(max_examples=60, deadline=None)
@given(arrays, st.integers(1, 5), st.integers(-3, 3))
def test_mul_binomial_matches_reference(A, a, b):
    want = _poly_mul_ref(A, a, b, P62)
    got = A.copy()
    kernels.mul_binomial(got, a, b, P62)
    assert np.array_equal(got % P62, want)


@settings(max_examples=60, deadline=None)
@given(arrays, st.integers(1, 5), st.integers(-3, 3))
def test_div_inverts_mul(A, a, b):
    got = A.copy()
    kernels.mul_binomial(got, a, b, P62)
    kernels.div_binomial(got, a, b, P62)
    assert np.array_equal(got % P62, A % P62)


def _rank_ref(M, p):
    M = [[int(x) % p for x in row] for row in M]
    rank, rows, cols = 0, len(M), len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        for i in range(rows):
            if i != rank and M[i][c]:
                f = M[i][c] * inv % p
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_rank_mod_p_matches_reference(r, c, data):
    xs = data.draw(st.lists(st.integers(-3, 3), min_size=r * c, max_size=r * c))
    M = np.array(xs, dtype=np.int64).reshape(r, c)
    for p in (2, 7, P31):
        assert kernels.rank_mod_p(M, p) == _rank_ref(M.tolist(), p)


@settings(max_examples=60, deadline=None)
@given(st.integers(-200, 0), st.integers(0, 200), st.integers(-500, 500), st.integers(1, 60))
def test_residue_scan_matches_filter(lo, hi, disc, modulus):
    want = [r for r in range(lo, hi + 1) if (r * r + disc) % modulus == 0]
    assert list(kernels.residue_scan(lo, hi, disc, modulus)) == want


@settings(max_examples=40, deadline=None)
@given(arrays, arrays)
def test_conv2d_matches_numpy_convolution(A, B):
    want = np.zeros((A.shape[0] + B.shape[0] - 1, A.shape[1] + B.shape[1] - 1), dtype=object)
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            want[i:i + B.shape[0], j:j + B.shape[1]] += int(A[i, j]) * B.astype(object)
    got = kernels.conv2d_mod_p(A, B, P31)
    assert np.array_equal(got, (want % P31).astype(np.int64))


@numba_only
@settings(max_examples=30, deadline=None)
@given(arrays, st.integers(1, 4), st.integers(-2, 2))
def test_backends_agree_on_binomials(A, a, b):
    x, y = A.copy(), A.copy()
    kernels._nb_mul_binomial(x, a, b, np.int64(P62))
    kernels._np_mul_binomial(y, a, b, P62)
    assert np.array_equal(x % P62, y % P62)
    kernels._nb_div_binomial(x, a, b, np.int64(P62))
    kernels._np_div_binomial(y, a, b, P62)
    assert np.array_equal(x % P62, y % P62)


@numba_only
def test_backends_agree_on_slot_update():
    rng = np.random.default_rng(1)
    S = rng.integers(0, 100, size=(4, 10, 7)).astype(np.int64)
    T = S.copy()
    coefs = np.array([1, 3, -2], dtype=np.int64)
    kernels._nb_slot_update(S, 1, 1, coefs, 1, np.int64(P31))
    kernels._np_slot_update(T, 1, 1, coefs, 1, P31)
    assert np.array_equal(S % P31, T % P31)


def test_backend_flag_in_subprocess():
    import os
    import subprocess
    import sys
    env = dict(os.environ, PARAMODFORMS_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c",
                          "from paramodforms import kernels; print(kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_numpy_backend_reproduces_borcherds_invariants():
    import os
    import subprocess
    import sys
    code = ("from paramodforms import kernels\n"
            "from paramodforms.borcherds import from_theta_quotient, invariants, humbert_table\n"
            "w = from_theta_quotient('8/1,18/6,14/7')\n"
            "print(kernels.backend(), invariants(w).as_tuple(), len(humbert_table(w)))\n")
    env = dict(os.environ, PARAMODFORMS_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "numpy (2, 2, 63, 498, 0, 1) 26"
