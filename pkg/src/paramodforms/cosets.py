"""Symplectic matrices, coset representatives and the K(Nq) P decomposition.

Matrices are 4x4 lists of Fractions acting on column vectors; ``J`` is
``[[0, -I], [I, 0]]`` and ``g`` is symplectic when ``g' J g = J``.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .paramodular import is_squarefree, prime_factors

J = ((0, 0, -1, 0), (0, 0, 0, -1), (1, 0, 0, 0), (0, 1, 0, 0))
I4 = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))


# ---------------------------------------------------------------------------
# small exact matrix helpers

def mat(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return tuple(tuple(sum(A[i][l] * B[l][j] for l in range(k)) for j in range(m)) for i in range(n))


def transpose(A):
    return tuple(zip(*A))


def inverse(A):
    M = Matrix(A).inv()
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in M.row(i)) for i in range(M.rows))


def det(A):
    x = Matrix(A).det()
    return Fraction(int(x.p), int(x.q))


def _is_int(x):
    return Fraction(x).denominator == 1


def blocks(g):
    """(a, b, c, d) 2x2 blocks."""
    a = ((g[0][0], g[0][1]), (g[1][0], g[1][1]))
    b = ((g[0][2], g[0][3]), (g[1][2], g[1][3]))
    c = ((g[2][0], g[2][1]), (g[3][0], g[3][1]))
    d = ((g[2][2], g[2][3]), (g[3][2], g[3][3]))
    return a, b, c, d


def omega(x, y):
    """x J y' for row vectors x, y."""
    return -x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1]


# ---------------------------------------------------------------------------
# membership predicates

def is_symplectic(g):
    return mul(mul(transpose(g), J), g) == mat(J)


def in_Sp4Z(g):
    return all(_is_int(x) for row in g for x in row) and is_symplectic(g)


def in_Gamma0prime(g, N):
    """K(N) intersected with Sp4(Z)."""
    return in_Sp4Z(g) and in_KN(g, N)


def in_KN(g, N):
    if not is_symplectic(g):
        return False
    # entries scaled so that every * in the coordinate description is integral
    scale = ((1, Fraction(1, N), 1, 1),
             (1, 1, 1, N),
             (1, Fraction(1, N), 1, 1),
             (Fraction(1, N), Fraction(1, N), Fraction(1, N), 1))
    return all(_is_int(Fraction(g[i][j]) * scale[i][j]) for i in range(4) for j in range(4))


def in_P20(g):
    return is_symplectic(g) and all(g[i][j] == 0 for i in (2, 3) for j in (0, 1))


# ---------------------------------------------------------------------------
# P^3(Z/q) and completion of bottom rows

def p3_points(q):
    """Normalized points of P^3(Z/q): first nonzero coordinate 1."""
    out = []
    for lead in range(4):
        for tail in product(range(q), repeat=3 - lead):
            out.append((0,) * lead + (1,) + tail)
    return out


def p3_reps(q, N=1):
    """Integer (a, b, c, d) per point of P^3(Z/q) with gcd(aN, bN, cN, d) = 1."""
    if gcd(q, N) != 1:
        raise ValueError("q must not divide N")
    out = []
    for a, b, c, d in p3_points(q):
        k = 0
        while gcd(d + k * q, N) != 1:
            k += 1
        v = (a, b, c, d + k * q)
        g = gcd(gcd(v[0], v[1]), gcd(v[2], v[3]))
        out.append(tuple(x // g for x in v))
    return out


def _solve_unit(w, target):
    """Integer x with x . w = target for a primitive integer vector w."""
    S, U, V = smith_normal_decomp(Matrix([list(w)]))
    s = int((U.inv() * S)[0, 0])   # w . V[:, 0] = s = +-1
    if abs(s) != 1:
        raise ValueError("vector is not primitive")
    return [int(target * s * x) for x in V.col(0)]


def _kernel(rows):
    """Integer basis of the kernel of an integer matrix (columns of V)."""
    A = Matrix([list(r) for r in rows])
    S, U, V = smith_normal_decomp(A)
    rank = sum(1 for i in range(min(S.shape)) if S[i, i] != 0)
    return [[int(x) for x in V.col(j)] for j in range(rank, A.cols)]


def complete_bottom_row(v):
    """A matrix in Sp4(Z) with bottom row ``v`` (rows r1..r4, r4 = v)."""
    v = [int(x) for x in v]
    if gcd(gcd(v[0], v[1]), gcd(v[2], v[3])) != 1:
        raise ValueError("bottom row must be primitive")
    if v == [0, 0, 0, 1]:
        return mat(I4)
    r4 = v
    Jr = lambda r: (-r[2], -r[3], r[0], r[1])   # x . Jr(r) = x J r'
    r2 = _solve_unit(Jr(r4), -1)
    r3 = _kernel([Jr(r2), Jr(r4)])[0]
    rho = _solve_unit(Jr(r3), -1)
    a, b = omega(rho, r4), omega(rho, r2)
    r1 = [rho[i] + a * r2[i] - b * r4[i] for i in range(4)]
    g = mat([r1, r2, r3, r4])
    if not in_Sp4Z(g):
        raise ArithmeticError("bottom-row completion failed")
    return g


# ---------------------------------------------------------------------------
# Gamma^0(N)\SL2(Z) and Gamma_0'(N)\K(N)

def p1_points(N):
    """Points (a : b) of P^1(Z/N), squarefree N, as residue pairs via CRT."""
    if N == 1:
        return [(0, 1)]
    if not is_squarefree(N):
        raise ValueError("squarefree level expected")
    per = []
    for p in prime_factors(N):
        per.append([(p, (1, y)) for y in range(p)] + [(p, (0, 1))])
    out = []
    for combo in product(*per):
        a = b = 0
        for p, (x, y) in combo:
            M = N // p
            e = M * pow(M, -1, p)
            a += x * e
            b += y * e
        out.append((a % N, b % N))
    return sorted(out)


def sl2_with_top_row(a, b):
    """(c, d) with a d - b c = 1."""
    S, U, V = smith_normal_decomp(Matrix([[a, b]]))
    s = int((U.inv() * S)[0, 0])
    x, y = (int(s * t) for t in V.col(0))   # a x + b y = 1
    return -y, x


def gamma_upper0_reps(N):
    """Coset representatives of Gamma^0(N)\\SL2(Z) (b = 0 mod N) via top rows."""
    out = []
    for a, b in p1_points(N):
        if N == 1:
            out.append(((1, 0), (0, 1)))
            continue
        if a == 0:
            a = N
        k = 0
        while gcd(a, b + k * N) != 1:
            k += 1
        b = b + k * N
        c, d = sl2_with_top_row(a, b)
        out.append(((a, b), (c, d)))
    return out


def klingen_embed(g0, N):
    (a, b), (c, d) = g0
    return mat([[1, 0, 0, 0],
                [0, a, 0, Fraction(b, N)],
                [0, 0, 1, 0],
                [0, c * N, 0, d]])


def klingen_column_reps(N):
    """One representative per coset of Gamma_0'(N)\\K(N)."""
    return [klingen_embed(g0, N) for g0 in gamma_upper0_reps(N)]


def index_KN(N):
    out = Fraction(N)
    for p in prime_factors(N):
        out *= Fraction(p + 1, p)
    return int(out)


@lru_cache(maxsize=None)
def gamma0prime_reps(N, q):
    """Representatives g_pi of Gamma_0'(Nq)\\Gamma_0'(N)."""
    out = []
    for a, b, c, d in p3_reps(q, N):
        out.append(complete_bottom_row((a * N, b * N, c * N, d)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Sp4(Q) = K(M) P(Q) for squarefree M

def _saturate(cols):
    """Integer basis (columns) of (Q-span of ``cols``) intersected with Z^4."""
    den = 1
    for col in cols:
        for x in col:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    A = Matrix([[int(Fraction(col[i]) * den) for col in cols] for i in range(4)])
    S, U, V = smith_normal_decomp(A)
    Ui = U.inv()
    return [[int(Ui[i, j]) for i in range(4)] for j in range(len(cols))]


def decompose_KNq_P(g, N, q=1):
    """Return (kappa, u) with kappa in K(Nq), u in P_{2,0}(Q) and kappa u = g."""
    M = N * q
    if not is_squarefree(M):
        raise ValueError("Nq must be squarefree")
    g = mat(g)
    if not is_symplectic(g):
        raise ValueError("matrix is not symplectic")
    if in_KN(g, M):
        return g, mat(I4)
    if in_P20(g):
        return mat(I4), g
    # coordinates on the lattice Z + Z + Z + MZ with basis B = diag(1, 1, 1, M)
    B = mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, M]])
    Bi = inverse(B)
    G = [[0, 0, -1, 0], [0, 0, 0, -M], [1, 0, 0, 0], [0, M, 0, 0]]
    L = mul(Bi, g)
    X = _saturate([[L[i][0] for i in range(4)], [L[i][1] for i in range(4)]])
    P = Matrix([[sum(x[i] * G[i][j] for i in range(4)) for j in range(4)] for x in X])
    S, U, V = smith_normal_decomp(P)
    if (abs(S[0, 0]), abs(S[1, 1])) != (1, M):
        raise ArithmeticError(f"isotropic plane has pairing divisors "
                              f"{(abs(S[0, 0]), abs(S[1, 1]))}, expected (1, {M})")
    # rows of U P V = S: new plane basis x'_i = sum_j U_ij x_j
    Xn = [[sum(int(U[i, j]) * X[j][c] for j in range(2)) for c in range(4)] for i in range(2)]
    s1, s2 = int(S[0, 0]), int(S[1, 1])
    f1, f2 = Xn
    f3 = [-int(V[c, 0]) * (1 if s1 > 0 else -1) for c in range(4)]
    f4 = [-int(V[c, 1]) * (M // s2) for c in range(4)]

    def w(x, y):
        return sum(x[i] * G[i][j] * y[j] for i in range(4) for j in range(4))

    c = w(f3, f4)
    f4 = [f4[i] - c * f1[i] for i in range(4)]
    F = mat(transpose([f1, f2, f3, f4]))
    kappa = mul(mul(B, F), Bi)
    u = mul(inverse(kappa), g)
    if not (in_KN(kappa, M) and in_P20(u) and mul(kappa, u) == g):
        raise ArithmeticError("K(Nq) P decomposition failed")
    return kappa, u


@lru_cache(maxsize=None)
def trace_cosets(N, q):
    """The u parts of g_ij = kappa_ij u_ij over Gamma_0'(Nq)\\K(N)."""
    if gcd(N, q) != 1:
        raise ValueError("q must not divide N")
    out = []
    g2 = klingen_column_reps(N)
    for g1 in gamma0prime_reps(N, q):
        for h in g2:
            _, u = decompose_KNq_P(mul(g1, h), N, q)
            out.append(u)
    return tuple(out)
