"""Hot integer kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``PARAMODFORMS_NO_NUMBA`` is unset or ``0``.  Both paths compute
identical results; ``benchmarks/bench_kernels.py`` times one against the other.

All series kernels work on dense int64 arrays ``A[n, j]`` (q-step ``n``,
zeta slot ``j``) modulo a prime ``p < 2**62``, so every intermediate
``x - y + p`` fits in a signed 64-bit word.  Exact integers are recovered
by CRT in :mod:`paramodforms.multimod`.
"""
import os

import numpy as np

_DISABLED = os.environ.get("PARAMODFORMS_NO_NUMBA", "0") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("numba disabled by PARAMODFORMS_NO_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def backend():
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy reference implementations

def _np_mul_binomial(A, a, b, p):
    # A <- A * (1 - q^a zeta^b) mod p
    Q, W = A.shape
    if a >= Q or abs(b) >= W:
        return
    src = A[:Q - a].copy()
    if b >= 0:
        A[a:, b:] -= src[:, :W - b]
    else:
        A[a:, :W + b] -= src[:, -b:]
    np.remainder(A, p, out=A)


def _np_div_binomial(A, a, b, p):
    # A <- A / (1 - q^a zeta^b) mod p; rows in blocks of a depend on the previous block
    Q, W = A.shape
    if abs(b) >= W:
        return
    for n0 in range(a, Q, a):
        n1 = min(n0 + a, Q)
        src = A[n0 - a:n1 - a]
        if b >= 0:
            A[n0:n1, b:] += src[:, :W - b]
        else:
            A[n0:n1, :W + b] += src[:, -b:]
        np.remainder(A[n0:n1], p, out=A[n0:n1])


def _np_rank_mod_p(M, p):
    M = np.remainder(M, p).astype(np.int64)
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(M[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), p - 2, p)
        M[rank] = (M[rank] * inv) % p
        below = np.nonzero(M[rank + 1:, c])[0] + rank + 1
        if below.size:
            f = M[below, c].reshape(-1, 1)
            M[below] = (M[below] - (f * M[rank]) % p) % p
        rank += 1
    return rank


def _np_residue_scan(lo, hi, disc, modulus):
    r = np.arange(lo, hi + 1, dtype=np.int64)
    return r[(r * r + disc) % modulus == 0]


def _np_conv2d_mod_p(A, B, p, rows):
    # split B into 16-bit halves so each row convolution stays below 2**63
    Qa, Wa = A.shape
    Qb, Wb = B.shape
    C = np.zeros((rows, Wa + Wb - 1), dtype=np.int64)
    lo = B & 0xFFFF
    hi = B >> 16
    for i in range(min(Qa, rows)):
        if not A[i].any():
            continue
        for k in range(min(Qb, rows - i)):
            if not B[k].any():
                continue
            c = np.convolve(A[i], lo[k]) % p
            c = (c + (np.convolve(A[i], hi[k]) % p) * 65536) % p
            C[i + k] = (C[i + k] + c) % p
    return C


def _np_slot_update(S, dn, dr, coefs, step, p):
    J, Q, W = S.shape
    for s in range(J - 1, 0, -1):
        i = 1
        while s - i * step >= 0 and i < coefs.shape[0]:
            c = coefs[i]
            a, b = i * dn, i * dr
            if c and abs(a) < Q and abs(b) < W:
                src = S[s - i * step]
                rs = slice(max(0, -a), Q - max(0, a))
                rd = slice(max(0, a), Q - max(0, -a))
                cs = slice(max(0, -b), W - max(0, b))
                cd = slice(max(0, b), W - max(0, -b))
                S[s, rd, cd] = (S[s, rd, cd] + (src[rs, cs] * c) % p) % p
            i += 1


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_mul_binomial(A, a, b, p):
        Q, W = A.shape
        for n in range(Q - 1, a - 1, -1):
            for j in range(W):
                jj = j - b
                if jj >= 0 and jj < W:
                    v = A[n, j] - A[n - a, jj]
                    if v < 0:
                        v += p
                    A[n, j] = v

    @njit(cache=True)
    def _nb_div_binomial(A, a, b, p):
        Q, W = A.shape
        for n in range(a, Q):
            for j in range(W):
                jj = j - b
                if jj >= 0 and jj < W:
                    v = A[n, j] + A[n - a, jj]
                    if v >= p:
                        v -= p
                    A[n, j] = v

    @njit(cache=True)
    def _nb_rank_mod_p(M, p):
        rows, cols = M.shape
        for i in range(rows):
            for j in range(cols):
                M[i, j] %= p
                if M[i, j] < 0:
                    M[i, j] += p
        rank = 0
        for c in range(cols):
            if rank == rows:
                break
            piv = -1
            for i in range(rank, rows):
                if M[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(cols):
                    t = M[rank, j]
                    M[rank, j] = M[piv, j]
                    M[piv, j] = t
            # modular inverse by extended Euclid
            x0, x1, a0, b0 = 1, 0, M[rank, c], p
            while b0 != 0:
                qq = a0 // b0
                a0, b0 = b0, a0 - qq * b0
                x0, x1 = x1, x0 - qq * x1
            inv = x0 % p
            for j in range(cols):
                M[rank, j] = (M[rank, j] * inv) % p
            for i in range(rank + 1, rows):
                f = M[i, c]
                if f != 0:
                    for j in range(cols):
                        M[i, j] = (M[i, j] - f * M[rank, j]) % p
            rank += 1
        return rank

    @njit(cache=True)
    def _nb_residue_scan(lo, hi, disc, modulus):
        out = np.empty(hi - lo + 1, dtype=np.int64)
        k = 0
        for r in range(lo, hi + 1):
            if (r * r + disc) % modulus == 0:
                out[k] = r
                k += 1
        return out[:k]


    @njit(cache=True)
    def _nb_conv2d_mod_p(A, B, p, rows):
        Qa, Wa = A.shape
        Qb, Wb = B.shape
        C = np.zeros((rows, Wa + Wb - 1), dtype=np.int64)
        for i in range(min(Qa, rows)):
            for j in range(Wa):
                a = A[i, j]
                if a == 0:
                    continue
                for k in range(min(Qb, rows - i)):
                    for l in range(Wb):
                        b = B[k, l]
                        if b != 0:
                            C[i + k, j + l] = (C[i + k, j + l] + a * b) % p
        return C

    @njit(cache=True)
    def _nb_slot_update(S, dn, dr, coefs, step, p):
        J, Q, W = S.shape
        for s in range(J - 1, 0, -1):
            i = 1
            while s - i * step >= 0 and i < coefs.shape[0]:
                c = coefs[i]
                a = i * dn
                b = i * dr
                if c != 0:
                    src = s - i * step
                    for n in range(max(0, a), min(Q, Q + a)):
                        for j in range(max(0, b), min(W, W + b)):
                            v = S[src, n - a, j - b]
                            if v != 0:
                                S[s, n, j] = (S[s, n, j] + c * v) % p
                i += 1


# ---------------------------------------------------------------------------
# public dispatchers

def mul_binomial(A, a, b, p):
    """In place: ``A *= (1 - q^a zeta^b)`` modulo ``p`` (``a >= 1``)."""
    if HAVE_NUMBA:
        _nb_mul_binomial(A, int(a), int(b), np.int64(p))
    else:
        _np_mul_binomial(A, int(a), int(b), p)


def div_binomial(A, a, b, p):
    """In place: ``A /= (1 - q^a zeta^b)`` modulo ``p`` (``a >= 1``)."""
    if HAVE_NUMBA:
        _nb_div_binomial(A, int(a), int(b), np.int64(p))
    else:
        _np_div_binomial(A, int(a), int(b), p)


def rank_mod_p(M, p):
    """Rank of an integer matrix over F_p, for a prime ``p < 2**31``."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2 or M.size == 0:
        return 0
    if p >= 2 ** 31:
        raise ValueError("rank_mod_p needs p < 2**31 so products fit in int64")
    if HAVE_NUMBA:
        return int(_nb_rank_mod_p(M, np.int64(p)))
    return _np_rank_mod_p(M, p)


def residue_scan(lo, hi, disc, modulus):
    """All integers ``lo <= r <= hi`` with ``r*r + disc == 0 (mod modulus)``."""
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    if HAVE_NUMBA:
        return _nb_residue_scan(int(lo), int(hi), int(disc), int(modulus))
    return _np_residue_scan(lo, hi, disc, modulus)


def conv2d_mod_p(A, B, p, rows=None):
    """Bivariate product ``C[i+k, j+l] += A[i, j] B[k, l]`` mod ``p < 2**31``,
    keeping the first ``rows`` rows."""
    if p >= 2 ** 31:
        raise ValueError("conv2d_mod_p needs p < 2**31")
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    if rows is None:
        rows = A.shape[0] + B.shape[0] - 1
    if HAVE_NUMBA:
        return _nb_conv2d_mod_p(A, B, np.int64(p), int(rows))
    return _np_conv2d_mod_p(A, B, p, rows)


def slot_update(S, dn, dr, coefs, step, p):
    """In place: multiply a series truncated in X, stored as slots ``S[s]``
    (one dense q/zeta array per power of X), by ``sum_i coefs[i] u^i X^(i step)``
    with ``u = q^dn zeta^dr`` and ``coefs[0] = 1``, modulo ``p < 2**31``."""
    coefs = np.ascontiguousarray(coefs, dtype=np.int64)
    if HAVE_NUMBA:
        _nb_slot_update(S, int(dn), int(dr), coefs, int(step), np.int64(p))
    else:
        _np_slot_update(S, int(dn), int(dr), coefs, int(step), p)
