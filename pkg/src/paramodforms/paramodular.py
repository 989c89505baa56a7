"""Paramodular Fourier expansions keyed by Gamma^0(N)^{+-} classes.

An index ``t = [[n, r/2], [r/2, m N]]`` is handled as the binary quadratic
form ``Q(x, y) = n x^2 + r x y + m N y^2``; ``t[g] = g' t g`` is ``Q o g``.
The class of ``t`` under ``g`` in GL_2(Z) with upper-right entry divisible by
``N`` is determined by the GL_2-reduced form ``Q_o`` of ``Q`` together with
the point ``v = g^-1 e_2`` of P^1(Z/N) (where ``Q o g = Q_o``), taken up to
automorphisms of ``Q_o``.  The canonical representative of a class is the
element minimizing ``(m, n, |r|)`` with ``r >= 0``; its ``m`` is ``m_N(t)``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
import logging
from typing import NamedTuple

from . import kernels
from .errors import PrecisionError
from .jacobi import JacobiExpansion

log = logging.getLogger(__name__)


class ClassKey(NamedTuple):
    """Canonical representative (n, r, m) of a class; level is implicit."""
    n: int
    r: int
    m: int


@dataclass(frozen=True)
class IndexForm:
    n: int
    r: int
    m: int
    N: int

    @property
    def disc(self):
        return 4 * self.n * self.m * self.N - self.r * self.r

    @property
    def semidefinite(self):
        return self.disc >= 0 and self.n >= 0 and self.m >= 0

    @property
    def definite(self):
        return self.disc > 0 and self.n > 0

    def matrix(self):
        return [[Fraction(self.n), Fraction(self.r, 2)], [Fraction(self.r, 2), Fraction(self.m * self.N)]]


def disc(n, r, m, N):
    return 4 * n * m * N - r * r


def prime_factors(N):
    out, p = [], 2
    while p * p <= N:
        if N % p == 0:
            out.append(p)
            N //= p
            while N % p == 0:
                N //= p
        p += 1
    if N > 1:
        out.append(N)
    return out


def is_squarefree(N):
    return all((N // p) % p for p in prime_factors(N))


# ---------------------------------------------------------------------------
# binary forms

def _mat_mul(A, B):
    return (A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
            A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3])


def _det(A):
    return A[0] * A[3] - A[1] * A[2]


def form_compose(Q, g):
    """``Q o g`` for ``Q = (a, b, c)`` and ``g = (g11, g12, g21, g22)``."""
    a, b, c = Q
    p, q, s, t = g
    return (a * p * p + b * p * s + c * s * s,
            2 * a * p * q + b * (p * t + q * s) + 2 * c * s * t,
            a * q * q + b * q * t + c * t * t)


def reduce_form(Q):
    """GL_2-reduce a positive definite form; returns ``(Q_o, g)`` with ``Q o g = Q_o``
    and ``0 <= b <= a <= c``."""
    a, b, c = Q
    if 4 * a * c - b * b <= 0 or a <= 0:
        raise ValueError(f"form {Q} is not positive definite")
    g = (1, 0, 0, 1)
    while True:
        # b into (-a, a]
        lam = -((a - b) // (2 * a))
        if lam:
            S = (1, -lam, 0, 1)
            a, b, c = form_compose((a, b, c), S)
            g = _mat_mul(g, S)
        if a > c:
            S = (0, -1, 1, 0)
            a, b, c = form_compose((a, b, c), S)
            g = _mat_mul(g, S)
            continue
        break
    if b < 0:
        S = (1, 0, 0, -1)
        a, b, c = form_compose((a, b, c), S)
        g = _mat_mul(g, S)
    return (a, b, c), g


def _vectors_of_norm(Q, value):
    """Integer (x, y) with Q(x, y) = value for a reduced form (then |y| <= 1)."""
    a, b, c = Q
    D = 4 * a * c - b * b
    ymax = isqrt(4 * a * value // D) if value >= 0 else -1
    out = []
    for y in range(-ymax, ymax + 1):
        # a x^2 + b y x + (c y^2 - value) = 0
        disc_ = (b * y) ** 2 - 4 * a * (c * y * y - value)
        if disc_ < 0:
            continue
        s = isqrt(disc_)
        if s * s != disc_:
            continue
        for num in {-b * y + s, -b * y - s}:
            if num % (2 * a) == 0:
                out.append((num // (2 * a), y))
    return out


@lru_cache(maxsize=None)
def automorphisms(Q):
    """All g in GL_2(Z) with ``Q o g = Q`` for a reduced positive form."""
    a, b, c = Q
    out = []
    for v1 in _vectors_of_norm(Q, a):
        for v2 in _vectors_of_norm(Q, c):
            g = (v1[0], v2[0], v1[1], v2[1])
            if abs(_det(g)) == 1 and form_compose(Q, g) == Q:
                out.append(g)
    return tuple(sorted(set(out)))


def reduced_forms(D):
    """GL_2-reduced forms (a, b, c) with 4ac - b^2 = D."""
    out = []
    a = 1
    while 3 * a * a <= D:
        for b in range(0, a + 1):
            if (D + b * b) % (4 * a) == 0:
                c = (D + b * b) // (4 * a)
                if c >= a:
                    out.append((a, b, c))
        a += 1
    return out


# ---------------------------------------------------------------------------
# class index for one level

class ClassIndex:
    """Canonicalization and enumeration of Gamma^0(N)^{+-} classes at level N."""

    def __init__(self, N):
        if N < 1 or not is_squarefree(N):
            raise ValueError("level must be a squarefree positive integer")
        self.N = N
        self.primes = prime_factors(N)
        self._rep = {}        # invariant -> (ClassKey, frame sign, ambiguous)
        self._done_disc = set()
        self._cache = {}

    # invariants -------------------------------------------------------------
    def _code(self, x, y):
        out = []
        for p in self.primes:
            xp, yp = x % p, y % p
            out.append(yp * pow(xp, -1, p) % p if xp else p)
        return tuple(out)

    def _frame(self, n, r, m):
        """(invariant, frame sign, ambiguous) of a definite index."""
        Qo, g = reduce_form((n, r, m * self.N))
        # v = g^-1 e_2 up to sign: adj(g) e_2 = (-g12, g11)
        x, y = -g[1], g[0]
        best, dets = None, set()
        for A in automorphisms(Qo):
            c = self._code(A[0] * x + A[1] * y, A[2] * x + A[3] * y)
            if best is None or c < best:
                best, dets = c, {_det(A)}
            elif c == best:
                dets.add(_det(A))
        first = min(d for d in dets) if len(dets) == 2 else next(iter(dets))
        return (Qo, best), _det(g) * first, len(dets) == 2

    def _semi_invariant(self, n, r, m):
        if n == 0 and r == 0 and m == 0:
            return ("zero",)
        lam = gcd(gcd(n, r), m * self.N)
        beta = isqrt(m * self.N // lam)
        return ("semi", lam, gcd(beta, self.N))

    # canonical representatives -------------------------------------------
    def canonical(self, n, r, m):
        """``(key, sign, ambiguous)`` with ``t = key[g]`` for some g of determinant sign."""
        t = (n, r, m)
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        D = disc(n, r, m, self.N)
        if D < 0 or n < 0 or m < 0:
            raise ValueError(f"index {t} is not semidefinite at level {self.N}")
        if D == 0:
            out = self._canonical_semi(n, r, m)
        else:
            inv, s, amb = self._frame(n, r, m)
            if inv not in self._rep:
                self._find_rep(D, {inv})
            key, s0, _ = self._rep[inv]
            out = (key, s * s0, amb)
        if len(self._cache) > 500000:
            self._cache.clear()
        self._cache[t] = out
        return out

    def _find_rep(self, D, targets):
        targets = set(targets) - set(self._rep)
        N = self.N
        m = 1
        while targets:
            for r in kernels.residue_scan(0, m * N, D, 4 * m * N):
                r = int(r)
                n = (D + r * r) // (4 * m * N)
                inv, s, amb = self._frame(n, r, m)
                if inv in targets:
                    self._rep[inv] = (ClassKey(n, r, m), s, amb)
                    targets.discard(inv)
            m += 1
            if m > 4 * D + 4 and targets:
                raise RuntimeError(f"class search failed at discriminant {D}")

    def _canonical_semi(self, n, r, m):
        inv = self._semi_invariant(n, r, m)
        if inv not in self._rep:
            if inv[0] == "zero":
                self._rep[inv] = (ClassKey(0, 0, 0), 1, True)
            else:
                self._rep[inv] = (self._scan_semi(inv), 1, True)
        return self._rep[inv][0], 1, True

    def _scan_semi(self, inv):
        N = self.N
        lam = inv[1]
        if inv[2] == N:
            return ClassKey(lam, 0, 0)
        m = 1
        while True:
            for r in range(0, m * N + 1):
                if (r * r) % (4 * m * N) == 0:
                    n = r * r // (4 * m * N)
                    if self._semi_invariant(n, r, m) == inv:
                        return ClassKey(n, r, m)
            m += 1

    def m_N(self, n, r, m):
        return self.canonical(n, r, m)[0].m

    # enumeration ------------------------------------------------------------
    def p1_points(self):
        """Per prime, the points of P^1(Z/p) as (x, y)."""
        return [[(1, y) for y in range(p)] + [(0, 1)] for p in self.primes]

    def classes_of_disc(self, D):
        """Canonical keys of every definite class with discriminant D."""
        if D <= 0 or D % 4 not in (0, 3):
            return []
        invs = set()
        for Qo in reduced_forms(D):
            auts = automorphisms(Qo)
            per_prime = []
            for p, pts in zip(self.primes, self.p1_points()):
                a, b, c = Qo
                per_prime.append([(x, y) for x, y in pts if (a * x * x + b * x * y + c * y * y) % p == 0])
            for combo in _product(per_prime):
                best = None
                for A in auts:
                    code = tuple(
                        _code_one(p, A[0] * x + A[1] * y, A[2] * x + A[3] * y)
                        for p, (x, y) in zip(self.primes, combo))
                    if best is None or code < best:
                        best = code
                invs.add((Qo, best))
        self._find_rep(D, invs)
        return sorted(self._rep[i][0] for i in invs)

    def classes(self, det_cap, semidefinite=False):
        """Canonical keys with discriminant <= det_cap, ordered by (disc, m, n, r)."""
        out = []
        for D in range(1, det_cap + 1):
            out.extend(self.classes_of_disc(D))
        out.sort(key=lambda k: (disc(k.n, k.r, k.m, self.N), k.m, k.n, k.r))
        if semidefinite:
            out = self.semidefinite_classes(det_cap) + out
        return out

    def semidefinite_classes(self, n_max):
        """Semidefinite keys with scale lambda <= n_max (there are infinitely many)."""
        keys = {ClassKey(0, 0, 0)}
        divisors = [d for d in range(1, self.N + 1) if self.N % d == 0]
        for lam in range(1, n_max + 1):
            for g in divisors:
                # beta = g works when N | lam g^2, otherwise the class is empty
                if g == self.N or (lam * g * g) % self.N == 0:
                    keys.add(self._canonical_semi_from(lam, g))
        return sorted(keys, key=lambda k: (k.m, k.n, k.r))

    def _canonical_semi_from(self, lam, g):
        inv = ("semi", lam, g)
        if inv not in self._rep:
            self._rep[inv] = (self._scan_semi(inv), 1, True)
        return self._rep[inv][0]


def _code_one(p, x, y):
    xp, yp = x % p, y % p
    return yp * pow(xp, -1, p) % p if xp else p


def _product(lists):
    out = [()]
    for lst in lists:
        out = [o + (x,) for o in out for x in lst]
    return out


_INDEXES = {}


def class_index(N):
    idx = _INDEXES.get(N)
    if idx is None:
        idx = _INDEXES[N] = ClassIndex(N)
    return idx


def canonical_class(t, N=None):
    """Canonical ClassKey of an IndexForm (or of ``(n, r, m)`` with ``N``)."""
    if isinstance(t, IndexForm):
        n, r, m, N = t.n, t.r, t.m, t.N
    else:
        n, r, m = t
    if disc(n, r, m, N) < 0 or n < 0 or m < 0:
        raise ValueError("indefinite index form")
    return class_index(N).canonical(n, r, m)[0]


def m_N(t, N=None):
    if isinstance(t, IndexForm):
        n, r, m, N = t.n, t.r, t.m, t.N
    else:
        n, r, m = t
    if disc(n, r, m, N) <= 0:
        raise ValueError("m_N is defined for definite indices")
    return class_index(N).m_N(n, r, m)


# ---------------------------------------------------------------------------
# expansions

class SiegelExpansion:
    """Fourier coefficients on canonical class keys.

    ``coeffs`` holds nonzero values for every class of discriminant at most
    ``det_cap``.  With ``partial=True`` only the stored keys are known (zeros
    included) and lookups elsewhere raise :class:`PrecisionError`.
    """

    def __init__(self, weight, level, det_cap, coeffs, fricke_sign=None, al_signature=None,
                 partial=False, cusp=True):
        self.weight = weight
        self.level = level
        self.det_cap = det_cap
        self.partial = partial
        self.cusp = cusp
        self.fricke_sign = fricke_sign
        self.al_signature = al_signature
        self.index = class_index(level)
        self.coeffs = {ClassKey(*k): v for k, v in coeffs.items() if partial or v != 0}

    def coefficient(self, n, r, m):
        D = disc(n, r, m, self.level)
        if D > self.det_cap:
            raise PrecisionError(f"index ({n},{r},{m}) has discriminant {D} > cap {self.det_cap}",
                                 required=D)
        if D == 0 and self.cusp:
            if n < 0 or m < 0:
                raise ValueError("index is not semidefinite")
            return 0
        key, sign, amb = self.index.canonical(n, r, m)
        if self.partial and key not in self.coeffs:
            raise PrecisionError(f"class {tuple(key)} is outside the computed range")
        v = self.coeffs.get(key, 0)
        if amb and self.weight % 2:
            return 0
        return v if sign == 1 or self.weight % 2 == 0 else -v

    def __call__(self, n, r, m):
        return self.coefficient(n, r, m)

    def keys(self):
        return sorted(self.coeffs)

    def _compatible(self, other):
        if (self.weight, self.level) != (other.weight, other.level):
            raise ValueError("expansions of different weight or level")

    def __add__(self, other):
        self._compatible(other)
        cap = min(self.det_cap, other.det_cap)
        keys = set(self._known(cap)) | set(other._known(cap))
        out = {}
        for k in keys:
            out[k] = self.coefficient(*k) + other.coefficient(*k)
        sign = self.fricke_sign if self.fricke_sign == other.fricke_sign else None
        return SiegelExpansion(self.weight, self.level, cap, out, sign,
                               partial=self.partial or other.partial,
                               cusp=self.cusp and other.cusp)

    def _known(self, cap):
        return [k for k in self.coeffs if disc(k.n, k.r, k.m, self.level) <= cap]

    def scale(self, c):
        return SiegelExpansion(self.weight, self.level, self.det_cap,
                               {k: c * v for k, v in self.coeffs.items()},
                               self.fricke_sign, self.al_signature, self.partial, self.cusp)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, SiegelExpansion):
            return NotImplemented
        if (self.weight, self.level) != (other.weight, other.level):
            return False
        cap = min(self.det_cap, other.det_cap)
        a = {k: v for k, v in self.coeffs.items() if v and disc(k.n, k.r, k.m, self.level) <= cap}
        b = {k: v for k, v in other.coeffs.items() if v and disc(k.n, k.r, k.m, self.level) <= cap}
        return a == b

    def is_zero(self):
        return not any(self.coeffs.values())

    def truncate(self, det_cap):
        if det_cap > self.det_cap:
            raise PrecisionError("cannot raise the determinant cap", required=det_cap)
        return SiegelExpansion(self.weight, self.level, det_cap,
                               {k: v for k, v in self.coeffs.items()
                                if disc(k.n, k.r, k.m, self.level) <= det_cap},
                               self.fricke_sign, self.al_signature, self.partial, self.cusp)

    def vector(self, keys):
        return [self.coefficient(*k) for k in keys]

    def __repr__(self):
        return (f"SiegelExpansion(weight={self.weight}, level={self.level}, "
                f"det_cap={self.det_cap}, {len(self.coeffs)} classes)")


def write_siegel(f, path_or_file):
    lines = [f"SP {f.weight} {f.level} {f.det_cap}" +
             (f" {'+' if f.fricke_sign == 1 else '-'}" if f.fricke_sign else "")]
    for k in sorted(f.coeffs, key=lambda k: (disc(k.n, k.r, k.m, f.level), k.m, k.n, k.r)):
        lines.append(f"{k.n} {k.r} {k.m} {f.coeffs[k]}")
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w") as fh:
            fh.write(text)
    return text


def read_siegel(path_or_text):
    if "\n" in path_or_text:
        text = path_or_text
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    head = lines[0].split()
    if head[0] != "SP":
        raise ValueError("not a Siegel expansion file")
    k, N, cap = int(head[1]), int(head[2]), int(head[3])
    sign = None
    if len(head) > 4:
        sign = 1 if head[4] == "+" else -1
    coeffs = {}
    idx = class_index(N)
    for ln in lines[1:]:
        n, r, m, v = ln.split()
        n, r, m = int(n), int(r), int(m)
        v = Fraction(v)
        v = int(v) if v.denominator == 1 else v
        key, s, _ = idx.canonical(n, r, m)
        if tuple(key) != (n, r, m):
            raise ValueError(f"line {ln!r} is not keyed by a canonical representative")
        coeffs[key] = v
    return SiegelExpansion(k, N, cap, coeffs, sign)


# ---------------------------------------------------------------------------
# Atkin-Lehner action

def al_matrix(c, N):
    """Integer matrix M and scalar c with alpha_c = M / sqrt(c)."""
    if N % c or gcd(c, N // c) != 1:
        raise ValueError(f"{c} is not a unitary divisor of {N}")
    if c == 1:
        return (1, 0, 0, 1)
    if c == N:
        return (0, -1, N, 0)
    chat = pow(N // c, -1, c)
    return (c, -chat, N, 1 - (N // c) * chat)


def al_transform(n, r, m, c, N):
    """``t[alpha_c']`` for ``t = (n, r, m)``, returned as ``(n', r', m')``."""
    M = al_matrix(c, N)
    a2, b2, c2 = form_compose((n, r, m * N), (M[0], M[2], M[1], M[3]))
    if a2 % c or b2 % c or c2 % (c * N):
        raise ArithmeticError("Atkin-Lehner image left X_2(N)")
    return a2 // c, b2 // c, c2 // (c * N)


def al_pullback(f, c):
    """Coefficients of ``f |_k mu_c``: fc_t(f|mu_c) = fc_{t[alpha_c']}(f)."""
    N = f.level
    al_matrix(c, N)
    if c == 1:
        return f
    out = {}
    for key in f.index.classes(f.det_cap):
        try:
            out[key] = f.coefficient(*al_transform(key.n, key.r, key.m, c, N))
        except PrecisionError:
            if not f.partial:
                raise
    return SiegelExpansion(f.weight, N, f.det_cap, out, f.fricke_sign, partial=f.partial,
                           cusp=f.cusp)


def fricke_sign(f):
    """+1 or -1 when f is a Fricke eigenform on its known range, else None."""
    g = al_pullback(f, f.level)
    if g == f:
        return 1
    if g == f.scale(-1):
        return -1
    return None


# ---------------------------------------------------------------------------
# Gritsenko lift, products, Fourier-Jacobi coefficients

def gritsenko_lift(phi, det_cap):
    """Additive lift of a Jacobi cusp form of weight k and index N."""
    if phi.holomorphy != "cusp":
        raise ValueError("the lift takes Jacobi cusp forms")
    N, k = phi.index, phi.weight
    need = (det_cap + N * N) // (4 * N) + 1
    if phi.q_precision < need:
        raise PrecisionError(f"lift to determinant cap {det_cap} needs q-precision {need}",
                             required=need)
    idx = class_index(N)
    out = {}
    for key in idx.classes(det_cap):
        n, r, m = key
        g = gcd(gcd(n, r), m)
        s = 0
        for j in range(1, g + 1):
            if g % j == 0:
                s += j ** (k - 1) * phi.coefficient(n * m // (j * j), r // j)
        if s:
            out[key] = s
    return SiegelExpansion(k, N, det_cap, out, fricke_sign=(-1) ** k)


def multiply(f1, f2, det_cap=None):
    """Product of two expansions by the convolution over t = t1 + t2."""
    if f1.level != f2.level:
        raise ValueError("levels differ")
    N = f1.level
    cap = min(f1.det_cap, f2.det_cap)
    if det_cap is not None:
        if det_cap > cap:
            raise PrecisionError(f"product needs inputs to determinant {det_cap}", required=det_cap)
        cap = det_cap
    idx = f1.index
    out = {}
    sign = None
    if f1.fricke_sign and f2.fricke_sign:
        sign = f1.fricke_sign * f2.fricke_sign
    partial = f1.partial or f2.partial
    for key in idx.classes(cap):
        try:
            out[key] = _convolve_at(f1, f2, key)
        except PrecisionError:
            if not partial:
                raise
    return SiegelExpansion(f1.weight + f2.weight, N, cap, out, sign, partial=partial,
                           cusp=f1.cusp or f2.cusp)


def _split_indices(n, r, m, N, definite):
    """All (t1, t2) with t1 + t2 = (n, r, m) and both parts (semi)definite."""
    lo = 1 if definite else 0
    for n1 in range(lo, n - lo + 1):
        n2 = n - n1
        for m1 in range(lo, m - lo + 1):
            m2 = m - m1
            b1 = 4 * n1 * m1 * N
            b2 = 4 * n2 * m2 * N
            R1 = isqrt(b1)
            for r1 in range(-R1, R1 + 1):
                r2 = r - r1
                d1, d2 = b1 - r1 * r1, b2 - r2 * r2
                if definite:
                    if d1 > 0 and d2 > 0:
                        yield (n1, r1, m1), (n2, r2, m2)
                elif d1 >= 0 and d2 >= 0:
                    yield (n1, r1, m1), (n2, r2, m2)


def _convolve_at(f1, f2, key):
    N = f1.level
    definite = f1.cusp and f2.cusp
    s = 0
    for t1, t2 in _split_indices(key.n, key.r, key.m, N, definite):
        a = f1.coefficient(*t1)
        if a:
            b = f2.coefficient(*t2)
            if b:
                s += a * b
    return s


def fourier_jacobi(f, m, q_precision=None):
    """phi_m(f) as a JacobiExpansion of index mN."""
    N = f.level
    M = m * N
    max_prec = f.det_cap // (4 * M) + 1
    prec = max_prec if q_precision is None else q_precision
    if prec > max_prec:
        raise PrecisionError(f"phi_{m} to q-precision {prec} needs determinant cap "
                             f"{4 * (prec - 1) * M}", required=4 * (prec - 1) * M)
    coeffs = {}
    for n in range(prec):
        for r in range(-M, M + 1):
            if 4 * n * M - r * r < (1 if f.cusp else 0):
                continue
            c = f.coefficient(n, r, m)
            if c:
                coeffs[(n, r)] = c
    hol = "cusp" if f.cusp else "weak"
    return JacobiExpansion(f.weight, M, coeffs, prec, hol)


# ---------------------------------------------------------------------------
# brute-force equivalence (independent of reduction theory; used by tests)

def brute_equivalent(t1, t2, N):
    """Search g in Gamma^0(N)^{+-} with t1[g] = t2; returns g or None."""
    Q1 = (t1[0], t1[1], t1[2] * N)
    Q2 = (t2[0], t2[1], t2[2] * N)
    if 4 * Q1[0] * Q1[2] - Q1[1] ** 2 != 4 * Q2[0] * Q2[2] - Q2[1] ** 2:
        return None
    v1s = _brute_vectors(Q1, Q2[0])
    v2s = _brute_vectors(Q1, Q2[2])
    for v1 in v1s:
        for v2 in v2s:
            g = (v1[0], v2[0], v1[1], v2[1])
            if abs(_det(g)) == 1 and g[1] % N == 0 and form_compose(Q1, g) == Q2:
                return g
    return None


def _brute_vectors(Q, value):
    a, b, c = Q
    D = 4 * a * c - b * b
    ymax = isqrt(4 * a * value // D) + 1
    out = []
    for y in range(-ymax, ymax + 1):
        xmax = isqrt(value // a) + abs(b * y) // a + 2
        for x in range(-xmax, xmax + 1):
            if a * x * x + b * x * y + c * y * y == value:
                out.append((x, y))
    return out


def brute_m_N(t, N):
    """Smallest m over the orbit, by direct search over candidate (n, r, m)."""
    n, r, m = t
    D = disc(n, r, m, N)
    for m2 in range(1, m + 1):
        for r2 in range(0, m2 * N + 1):
            if (D + r2 * r2) % (4 * m2 * N) == 0:
                n2 = (D + r2 * r2) // (4 * m2 * N)
                if brute_equivalent(t, (n2, r2, m2), N) is not None:
                    return m2
    return m


class FJBackedExpansion(SiegelExpansion):
    """Expansion known through finitely many Fourier-Jacobi coefficients.

    ``forms[m]`` is phi_m (index mN); every phi_m with m < m_first vanishes.
    Classes whose canonical m exceeds the last stored index are unknown.
    """

    def __init__(self, weight, level, forms, m_first, fricke_sign=None):
        self.forms = dict(forms)
        self.m_first = m_first
        self.m_last = max(self.forms) if self.forms else m_first - 1
        prec = min((f.q_precision for f in self.forms.values()), default=0)
        cap = min((4 * m * level * prec - (m * level) ** 2 - 1 for m in self.forms), default=0)
        super().__init__(weight, level, max(cap, 0), {}, fricke_sign, partial=True)

    def coefficient(self, n, r, m):
        D = disc(n, r, m, self.level)
        if D <= 0:
            if D < 0 or n < 0 or m < 0:
                raise ValueError("index is not semidefinite")
            return 0
        key, sign, amb = self.index.canonical(n, r, m)
        if key.m < self.m_first:
            return 0
        if key.m not in self.forms:
            raise PrecisionError(f"class {tuple(key)} needs phi_{key.m}")
        v = self.forms[key.m].coefficient(key.n, key.r)
        if amb and self.weight % 2:
            return 0
        return v if sign == 1 or self.weight % 2 == 0 else -v


def fricke_probe(f, keys=None, limit=200):
    """Compare fc_t(f) with fc_{t[alpha_N']}(f) wherever both are known.

    Returns ``(sign or None, number of compared pairs)``; the sign is +1 or -1
    when every compared pair agrees with it.
    """
    N = f.level
    signs = set()
    count = 0
    if keys is None:
        keys = [(n, r, m) for m in range(1, 6) for n in range(1, 6)
                for r in range(-isqrt(4 * n * m * N), isqrt(4 * n * m * N) + 1)
                if 4 * n * m * N - r * r > 0]
    for t in keys:
        try:
            a = f.coefficient(*t)
            b = f.coefficient(*al_transform(*t, N, N))
        except PrecisionError:
            continue
        if a == 0 and b == 0:
            continue
        count += 1
        if b == a:
            signs.add(1)
        elif b == -a:
            signs.add(-1)
        else:
            return None, count
        if len(signs) > 1:
            return None, count
        if count >= limit:
            break
    return (signs.pop() if len(signs) == 1 else None), count
