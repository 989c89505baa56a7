"""Exact linear algebra over Q (fraction-free) and over F_p (kernel-backed)."""
from fractions import Fraction
from math import lcm

import numpy as np

from . import kernels

DEFAULT_PRIME = 1000003


def _integral_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank_q(rows):
    """Rank over Q by Bareiss fraction-free elimination."""
    M = [r for r in _integral_rows(rows) if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, len(M)):
            a = M[i][c]
            row_i, row_r = M[i], M[rank]
            M[i] = [(p * row_i[j] - a * row_r[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == len(M):
            break
    return rank


def to_mod_p(rows, p):
    out = np.zeros((len(rows), len(rows[0]) if rows else 0), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"characteristic {p} divides a denominator")
                out[i, j] = x.numerator % p * pow(x.denominator, -1, p) % p
            else:
                out[i, j] = int(x) % p
    return out


def rank_mod_p(rows, p=DEFAULT_PRIME):
    if len(rows) == 0 or len(rows[0]) == 0:
        return 0
    return kernels.rank_mod_p(to_mod_p(rows, p), p)


def rank(rows, field=None):
    """Rank over Q (``field`` None or "Q") or over F_p (``field`` a prime)."""
    if field in (None, "Q", "QQ"):
        return rank_q(rows)
    return rank_mod_p(rows, int(field))


def rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace_q(rows, ncols=None):
    """Basis of ``{x : rows @ x = 0}`` over Q, as lists of Fractions."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_left_q(basis_rows, target):
    """Coefficients ``x`` with ``sum x_i basis_rows[i] == target``, or None."""
    n = len(basis_rows)
    if n == 0:
        return [] if not any(target) else None
    cols = len(target)
    # augmented system: unknowns are x_i, one equation per column
    eqs = [[basis_rows[i][j] for i in range(n)] + [target[j]] for j in range(cols)]
    R, pivots = rref(eqs)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x
