"""Multi-modular exact arithmetic on dense integer arrays.

Kernels work on int64 residues; exact integers come back by CRT with a
symmetric lift, given a rigorous bound on the absolute values.
"""
import numpy as np
from sympy import prevprime

from . import kernels

_BIG = []     # primes below 2**62 (additive kernels)
_SMALL = []   # primes below 2**31 (kernels that multiply residues)


def big_primes(k):
    while len(_BIG) < k:
        _BIG.append(prevprime(_BIG[-1] if _BIG else 2 ** 62))
    return _BIG[:k]


def small_primes(k):
    while len(_SMALL) < k:
        _SMALL.append(prevprime(_SMALL[-1] if _SMALL else 2 ** 31))
    return _SMALL[:k]


def primes_for_bound(bound, small=False):
    """Shortest prefix of the prime list whose product exceeds 2 * bound + 1."""
    get = small_primes if small else big_primes
    k, prod = 0, 1
    while prod <= 2 * bound + 1:
        k += 1
        prod *= get(k)[-1]
    return get(k)


def crt(residues):
    """Symmetric CRT lift of ``[(p, int64 array), ...]`` to an object array."""
    p0, A0 = residues[0]
    x = A0.astype(object)
    M = p0
    for p, A in residues[1:]:
        inv = pow(M % p, -1, p)
        t = ((A.astype(object) - x) % p * inv) % p
        x = x + M * t
        M *= p
    half = M // 2
    return np.where(x > half, x - M, x)


def abs_max(A):
    return max((abs(int(x)) for x in np.asarray(A).flat), default=0)


def abs_sum(A):
    return sum(abs(int(x)) for x in np.asarray(A).flat)


def dense_mul(A, B, rows=None):
    """Exact bivariate product of integer object arrays (rows: q, columns: zeta).

    ``C[i + k, j + l] = sum A[i, j] B[k, l]``, truncated to ``rows`` rows.
    """
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    if rows is None:
        rows = A.shape[0] + B.shape[0] - 1
    bound = min(abs_max(A) * abs_sum(B), abs_sum(A) * abs_max(B))
    shape = (rows, A.shape[1] + B.shape[1] - 1)
    if bound == 0:
        return np.zeros(shape, dtype=object)
    residues = []
    for p in primes_for_bound(bound, small=True):
        Ap = np.array([[int(x) % p for x in row] for row in A], dtype=np.int64)
        Bp = np.array([[int(x) % p for x in row] for row in B], dtype=np.int64)
        residues.append((p, kernels.conv2d_mod_p(Ap, Bp, p, rows)))
    return crt(residues)
