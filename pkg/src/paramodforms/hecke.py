"""Trace down from level Nq to level N, good-prime Hecke operators, eigen
splitting and spin Euler factors.

Both the trace and the Hecke operators are sums of slash operators by
upper-triangular matrices u = [[A, B], [0, D]] of similitude mu, for which

    fc_t(f | u) = mu^(2k-3) det(D)^(-k) e(tr(t D' B) / mu) fc_{D t D' / mu}(f).

Hecke operators: T(p) and T(p^2) for p not dividing the level use every
integral upper-triangular representative of similitude p or p^2 (the
classical degree-2 decomposition).  This formula is validated on lifts of
elliptic newforms, whose eigenvalues are known in closed form.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

import sympy

from . import linalg
from .cosets import blocks, trace_cosets
from .errors import PrecisionError, VerificationError
from .paramodular import SiegelExpansion, class_index, disc, prime_factors


# ---------------------------------------------------------------------------
# exact sums of roots of unity

@lru_cache(maxsize=None)
def _cyclotomic(M):
    x = sympy.Symbol("x")
    return [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(M, x), x).all_coeffs()[::-1]]


class CyclotomicValue:
    """sum_j c_j zeta_M^j with rational c_j; exponents kept mod M."""

    def __init__(self, M, coeffs=None):
        self.M = int(M)
        self.coeffs = {}
        for j, c in (coeffs or {}).items():
            self.add_root(j, c)

    def add_root(self, j, c=1):
        j %= self.M
        v = self.coeffs.get(j, 0) + c
        if v:
            self.coeffs[j] = v
        else:
            self.coeffs.pop(j, None)

    def add_phase(self, x, c=1):
        """Add c e(x) for rational x whose denominator divides M."""
        x = Fraction(x) * self.M
        if x.denominator != 1:
            raise ValueError(f"phase {x / self.M} is not an M-th root of unity for M = {self.M}")
        self.add_root(int(x), c)

    def __add__(self, other):
        if self.M != other.M:
            raise ValueError("orders differ")
        out = CyclotomicValue(self.M, self.coeffs)
        for j, c in other.coeffs.items():
            out.add_root(j, c)
        return out

    def reduced(self):
        """Coefficients on 1, z, ..., z^(phi(M)-1) after reduction mod Phi_M."""
        phi = _cyclotomic(self.M)
        deg = len(phi) - 1
        poly = [Fraction(0)] * max(self.M, deg + 1)
        for j, c in self.coeffs.items():
            poly[j] += c
        for i in range(len(poly) - 1, deg - 1, -1):
            c = poly[i]
            if c:
                for t in range(deg + 1):
                    poly[i - deg + t] -= c * phi[t]
        return poly[:deg]

    def is_rational(self):
        return not any(self.reduced()[1:])

    def to_rational(self):
        red = self.reduced()
        if any(red[1:]):
            raise VerificationError(f"sum of roots of unity of order {self.M} is not rational")
        v = red[0] if red else Fraction(0)
        return int(v) if v.denominator == 1 else v


# ---------------------------------------------------------------------------
# indices

def _index_matrix(n, r, m, N):
    return ((Fraction(n), Fraction(r, 2)), (Fraction(r, 2), Fraction(m * N)))


def _as_index(s, N):
    """(n, r, m) for a symmetric matrix in X(N), else None."""
    n, r, t22 = s[0][0], 2 * s[0][1], s[1][1]
    if n.denominator != 1 or r.denominator != 1:
        return None
    m = t22 / N
    if m.denominator != 1:
        return None
    return int(n), int(r), int(m)


def _congr(D, t):
    """D t D'."""
    (a, b), (c, d) = D
    (x, y), (_, z) = t
    s11 = a * a * x + 2 * a * b * y + b * b * z
    s12 = a * c * x + (a * d + b * c) * y + b * d * z
    s22 = c * c * x + 2 * c * d * y + d * d * z
    return ((s11, s12), (s12, s22))


def _trace_prod(t, E):
    return t[0][0] * E[0][0] + t[0][1] * (E[0][1] + E[1][0]) + t[1][1] * E[1][1]


def _mul2(A, B):
    return tuple(tuple(sum(A[i][l] * B[l][j] for l in range(2)) for j in range(2)) for i in range(2))


def _tr2(A):
    return ((A[0][0], A[1][0]), (A[0][1], A[1][1]))


# ---------------------------------------------------------------------------
# trace down

@dataclass(frozen=True)
class _TraceTerm:
    D: tuple        # d block
    E: tuple        # d' b
    weight_det: Fraction   # det d


def _trace_terms(N, q):
    out = []
    for u in trace_cosets(N, q):
        _, b, _, d = blocks(u)
        dd = d[0][0] * d[1][1] - d[0][1] * d[1][0]
        out.append(_TraceTerm(d, _mul2(_tr2(d), b), dd))
    return out


def trace_down_requirement(N, q, det_cap):
    """Largest discriminant of f read by trace_down at this cap."""
    dets = {t.weight_det for t in _trace_terms(N, q)}
    top = max(x * x for x in dets)
    return int(top * det_cap) if (top * det_cap).denominator == 1 else int(top * det_cap) + 1


def trace_down_coefficient(f, N, q, n, r, m, terms=None, order=None):
    k = f.weight
    terms = _trace_terms(N, q) if terms is None else terms
    t = _index_matrix(n, r, m, N)
    if order is None:
        order = 1
        for term in terms:
            den = _trace_prod(t, term.E).denominator
            order = order * den // gcd(order, den)
    acc = CyclotomicValue(order)
    for term in terms:
        s = _as_index(_congr(term.D, t), N * q)
        if s is None:
            continue
        c = f.coefficient(*s)
        if c:
            acc.add_phase(_trace_prod(t, term.E), Fraction(c) / term.weight_det ** k)
    return acc.to_rational()


def trace_down(f, N, q, det_cap):
    """TrDn f at level N on classes of discriminant <= det_cap."""
    if f.level != N * q or gcd(N, q) != 1:
        raise ValueError(f"expected an expansion of level {N * q} with q prime to N")
    need = trace_down_requirement(N, q, det_cap)
    if f.det_cap < need:
        raise PrecisionError(f"trace down to cap {det_cap} needs the input to determinant {need}",
                             required=need)
    terms = _trace_terms(N, q)
    out = {}
    for key in class_index(N).classes(det_cap):
        v = trace_down_coefficient(f, N, q, *key, terms=terms)
        if v:
            out[key] = v
    return SiegelExpansion(f.weight, N, det_cap, out, cusp=f.cusp)


# ---------------------------------------------------------------------------
# Hecke operators at good primes

@lru_cache(maxsize=None)
def hecke_reps(mu):
    """Pairs (D, Ys): upper-triangular D with mu D^-1 integral and the
    symmetric Y in (1/mu) Sym2(Z) / Sym2(Z) with Y D integral."""
    out = []
    for a in range(1, mu + 1):
        if mu % a:
            continue
        for d in range(1, mu + 1):
            if mu % d:
                continue
            for b in range(d):
                if (mu * b) % (a * d):
                    continue
                D = ((Fraction(a), Fraction(b)), (Fraction(0), Fraction(d)))
                Ys = []
                for y11, y12, y22 in product(range(mu), repeat=3):
                    Y = ((Fraction(y11, mu), Fraction(y12, mu)), (Fraction(y12, mu), Fraction(y22, mu)))
                    YD = _mul2(Y, D)
                    if all(x.denominator == 1 for row in YD for x in row):
                        Ys.append(Y)
                out.append((D, tuple(Ys)))
    return tuple(out)


def coset_count(mu):
    return sum(len(Ys) for _, Ys in hecke_reps(mu))


def _hecke_prime_power(f, p, e, det_cap):
    N, k = f.level, f.weight
    if N % p == 0:
        raise NotImplementedError(f"T({p}^{e}) at a prime dividing the level {N} is not implemented")
    if e not in (1, 2):
        raise ValueError("prime powers p and p^2 only; compose for other n")
    mu = p ** e
    need = mu * mu * det_cap
    if f.det_cap < need:
        raise PrecisionError(f"T({mu}) to cap {det_cap} needs the input to determinant {need}",
                             required=need)
    reps = []
    for D, Ys in hecke_reps(mu):
        detD = D[0][0] * D[1][1]
        Es = [_mul2(_mul2(_tr2(D), Y), D) for Y in Ys]   # D' Y D, so tr(t D' B) = tr(t E)
        reps.append((D, detD, Es))
    scale = Fraction(mu) ** (2 * k - 3)
    out = {}
    for key in class_index(N).classes(det_cap):
        t = _index_matrix(*key, N)
        total = Fraction(0)
        for D, detD, Es in reps:
            s = _as_index(tuple(tuple(x / mu for x in row) for row in _congr(D, t)), N)
            if s is None:
                continue
            c = f.coefficient(*s)
            if not c:
                continue
            # the phases form a character of the Y group: its sum is |group| or 0
            if all((_trace_prod(t, E) / mu).denominator == 1 for E in Es):
                total += Fraction(len(Es)) * c / detD ** k
        v = scale * total
        if v.denominator != 1:
            raise VerificationError(f"T({mu}) produced a non-integral coefficient at {tuple(key)}")
        if v:
            out[key] = int(v)
    return SiegelExpansion(k, N, det_cap, out, fricke_sign=f.fricke_sign, cusp=f.cusp)


def factor_hecke_index(n):
    out = []
    for p in prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def hecke_requirement(n, det_cap):
    return n * n * det_cap


def hecke_T(f, n, det_cap):
    """T(n) for n prime to the level, as a product of T(p) and T(p^2)."""
    if gcd(n, f.level) != 1:
        raise NotImplementedError("bad-prime operators are not implemented")
    parts = factor_hecke_index(n)
    need = hecke_requirement(n, det_cap)
    if f.det_cap < need:
        raise PrecisionError(f"T({n}) to cap {det_cap} needs the input to determinant {need}",
                             required=need)
    g = f
    rest = n
    for p, e in parts:
        rest //= p ** e
        g = _hecke_prime_power(g, p, e, det_cap * rest * rest)
    return g


# ---------------------------------------------------------------------------
# Euler factors and eigenspaces

def spin_euler_factor(lp, lp2, p, k=2):
    """Coefficients of 1 - l_p T + (l_p^2 - l_p2 - p^(2k-4)) T^2 - l_p p^(2k-3) T^3 + p^(4k-6) T^4."""
    return [1, -lp, lp * lp - lp2 - p ** (2 * k - 4), -lp * p ** (2 * k - 3), p ** (4 * k - 6)]


def format_poly(coeffs, var="T"):
    out = ""
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or i == 0) else ""
        term = body + mono
        if not out:
            out = ("-" if c < 0 else "") + term
        else:
            out += ("-" if c < 0 else "+") + term
    return out or "0"


@dataclass
class EigenSplit:
    matrix: list                                  # T g_i = sum_j matrix[i][j] g_j
    pairs: list = field(default_factory=list)     # (eigenvalue, coordinates)
    unsplit: list = field(default_factory=list)   # (characteristic factor, dimension)


def operator_matrix(space, images):
    """Coordinates of each image in the span of ``space``; raises when the span is not stable."""
    if not space:
        return []
    cap = min(g.det_cap for g in images)
    keys = class_index(space[0].level).classes(cap)
    rows = [g.vector(keys) for g in space]
    if linalg.rank(rows) < len(space):
        raise ValueError("space elements are dependent at the output cap")
    out = []
    for i, img in enumerate(images):
        x = linalg.solve_left_q(rows, img.vector(keys))
        if x is None:
            raise VerificationError(f"span not stable: image of element {i} leaves the span")
        out.append(x)
    return out


def eigen_split(space, operator):
    """Split ``space`` under ``operator`` (a callable f -> T f)."""
    images = [operator(g) for g in space]
    A = operator_matrix(space, images)
    res = EigenSplit(A)
    if not A:
        return res
    M = sympy.Matrix(A).T      # acts on coordinate columns
    for val, mult, vecs in M.eigenvects():
        if val.is_rational:
            for v in vecs:
                den = sympy.ilcm(1, *[sympy.fraction(x)[1] for x in v])
                coords = [Fraction(int(x * den)) for x in v]
                res.pairs.append((Fraction(int(sympy.fraction(val)[0]), int(sympy.fraction(val)[1])), coords))
        else:
            res.unsplit.append((str(sympy.minimal_polynomial(val, sympy.Symbol("x"))), mult))
    return res
