"""eta, theta, theta blocks and theta quotients.

Two independent expansion routes exist:

* ``method="product"`` multiplies binomial factors ``(1 - q^a zeta^b)^e``
  given by the Jacobi triple product into a dense array.  The array lives in
  int64 modulo word-size primes (see :mod:`paramodforms.kernels`); enough
  primes are used to exceed twice a majorant of every coefficient, and CRT
  recovers exact integers.
* ``method="series"`` multiplies the defining sums with generic
  :mod:`paramodforms.series` arithmetic.  It only handles blocks without
  denominator and serves as a cross-check.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import re

import numpy as np

from . import kernels
from .jacobi import JacobiExpansion
from .multimod import crt, primes_for_bound
from .series import FourierSeries, ZetaPoly, dilate_zeta, invert, mul, power, zeta_exact_div


# ---------------------------------------------------------------------------
# specs and notation

@dataclass(frozen=True)
class ThetaBlockSpec:
    """``phi[0]`` is the eta exponent, ``phi[r]`` the exponent of theta_r / eta."""
    phi: tuple = ()

    @classmethod
    def from_dict(cls, phi):
        return cls(tuple(sorted((int(r), int(e)) for r, e in phi.items() if e != 0)))

    @classmethod
    def from_thetas(cls, weight, rs):
        d = {0: int(2 * Fraction(weight))}
        for r in rs:
            d[int(r)] = d.get(int(r), 0) + 1
        return cls.from_dict(d)

    @classmethod
    def parse(cls, text):
        """``TB(k; r1,r2,...)`` with ``phi(0) = 2k``; a ``-`` prefix marks a denominator."""
        m = re.fullmatch(r"\s*TB\(\s*([^;]+?)\s*(?:;\s*(.*?))?\s*\)\s*", text)
        if not m:
            raise ValueError(f"bad theta block notation: {text!r}")
        d = {0: int(2 * Fraction(m.group(1)))}
        for tok in (m.group(2) or "").split(","):
            tok = tok.strip()
            if not tok:
                continue
            sign = -1 if tok.startswith("-") else 1
            r = int(tok.lstrip("+-"))
            if r <= 0:
                raise ValueError("theta indices must be positive")
            d[r] = d.get(r, 0) + sign
        return cls.from_dict(d)

    def as_dict(self):
        return dict(self.phi)

    @property
    def without_denominator(self):
        return all(e >= 0 for r, e in self.phi if r >= 1)

    def notation(self):
        d = self.as_dict()
        parts = []
        for r in sorted(x for x in d if x >= 1):
            e = d[r]
            parts += [str(r) if e > 0 else f"-{r}"] * abs(e)
        k = tb_weight(self)
        ks = str(k) if Fraction(k).denominator != 1 else str(int(k))
        return f"TB({ks}; {','.join(parts)})" if parts else f"TB({ks})"

    def __str__(self):
        return self.notation()


@dataclass(frozen=True)
class ThetaQuotientSpec:
    factors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for d, e in self.factors:
            if d <= 0 or e <= 0 or d % e:
                raise ValueError(f"theta quotient {d}/{e} needs e | d")

    @classmethod
    def parse(cls, text):
        facs = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            d, e = tok.split("/")
            facs.append((int(d), int(e)))
        return cls(tuple(facs))

    def notation(self):
        return ",".join(f"{d}/{e}" for d, e in self.factors)

    @property
    def index(self):
        return sum(d * d - e * e for d, e in self.factors) // 2

    def __str__(self):
        return self.notation()


def tb_weight(spec):
    return Fraction(spec.as_dict().get(0, 0), 2)


def tb_index(spec):
    return Fraction(sum(r * r * e for r, e in spec.phi if r >= 1), 2)


def tb_q_order(spec):
    d = spec.as_dict()
    return Fraction(d.get(0, 0), 24) + Fraction(sum(e for r, e in d.items() if r >= 1), 12)


def tb_trivial_character(spec):
    return tb_q_order(spec).denominator == 1


# ---------------------------------------------------------------------------
# defining sums

def eta_expansion(precision):
    """q^(1/24) prod (1 - q^n) by direct product expansion."""
    c = [0] * precision
    c[0] = 1
    for n in range(1, precision):
        for s in range(precision - 1, n - 1, -1):
            c[s] -= c[s - n]
    return FourierSeries(Fraction(1, 24), {s: ZetaPoly.monomial(0, v) for s, v in enumerate(c) if v},
                         precision)


def theta_expansion(r, precision):
    """theta(tau, r z) from the defining sum; q offset 1/8."""
    if r < 1:
        raise ValueError("r must be positive")
    terms = {}
    n = 0
    while True:
        # n and -1-n share the q-power (n+1/2)^2/2 = 1/8 + n(n+1)/2
        s = n * (n + 1) // 2
        if s >= precision:
            break
        sign = -1 if n % 2 else 1
        e2 = (2 * n + 1) * r
        terms[s] = ZetaPoly.from_dict({e2: sign, -e2: -sign})
        n += 1
    return FourierSeries(Fraction(1, 8), terms, precision)


# ---------------------------------------------------------------------------
# binomial product engine

def _majorant(lead_l1, factors, Q):
    """Upper bound for |coefficient| at each q-step (evaluate at zeta = 1 with
    every sign made positive)."""
    M = [0] * Q
    M[0] = 1
    for (a, _b), e in factors.items():
        if a >= Q:
            continue
        for _ in range(abs(e)):
            if e > 0:
                for s in range(Q - 1, a - 1, -1):
                    M[s] += M[s - a]
            else:
                for s in range(a, Q):
                    M[s] += M[s - a]
    return [lead_l1 * x for x in M]


def binomial_product(lead, factors, precision, half_width=None):
    """Dense exact expansion of ``lead(zeta) * prod (1 - q^a zeta^b)^e``.

    ``lead`` is a ZetaPoly (doubled exponents); ``factors`` maps ``(a, b)``
    with ``a >= 1`` and integral ``b`` to exponents ``e``.  Returns
    ``(lo2, array)`` where ``array[s, j]`` is the coefficient of
    ``q^s zeta^((lo2 + 2j)/2)``.  With ``half_width=None`` no zeta truncation
    happens; otherwise only doubled exponents in ``[-2h, 2h]`` are exact.
    """
    Q = precision
    factors = {k: v for k, v in factors.items() if v != 0 and k[0] < Q}
    if not lead:
        return 0, np.zeros((Q, 1), dtype=object)
    smax = max([abs(b) / a for a, b in factors] + [0])
    par = lead.parity
    if half_width is None:
        lo = lead.lo - 2 * int(smax * (Q - 1))
        hi = lead.hi + 2 * int(smax * (Q - 1))
    else:
        reach = int(half_width + smax * (Q - 1)) + 1
        lo, hi = -2 * reach - par, 2 * reach + par
        lo = min(lo, lead.lo)
        hi = max(hi, lead.hi)
    if (lo - par) % 2:
        lo -= 1
    W = (hi - lo) // 2 + 1
    bound = max(_majorant(sum(abs(c) for c in lead.coeffs), factors, Q))
    residues = []
    for p in primes_for_bound(bound):
        A = np.zeros((Q, W), dtype=np.int64)
        for e2, c in lead.items():
            j = (e2 - lo) // 2
            if 0 <= j < W:
                A[0, j] = c % p
        # multiplications before divisions keeps the majorant honest either way
        for (a, b), e in sorted(factors.items()):
            fn = kernels.mul_binomial if e > 0 else kernels.div_binomial
            for _ in range(abs(e)):
                fn(A, a, b, p)
        residues.append((p, A))
    return lo, crt(residues)


def _dense_to_series(q_offset, lo, arr, precision, clip=None):
    terms = {}
    for s in range(min(precision, arr.shape[0])):
        row = arr[s]
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            continue
        d = {}
        for j in nz:
            e2 = lo + 2 * int(j)
            if clip is None or abs(e2) <= clip:
                d[e2] = int(row[j])
        if d:
            terms[s] = ZetaPoly.from_dict(d)
    return FourierSeries(q_offset, terms, precision)


def _sinh_poly(r, e):
    """(zeta^(r/2) - zeta^(-r/2))^e for e >= 0, doubled exponents."""
    base = ZetaPoly.from_dict({r: 1, -r: -1})
    out = ZetaPoly.monomial(0)
    for _ in range(e):
        out = out * base
    return out


def tb_factors(spec, precision):
    """Leading Laurent polynomial and binomial factors of a theta block."""
    d = spec.as_dict()
    num = ZetaPoly.monomial(0)
    den = ZetaPoly.monomial(0)
    factors = {}
    phi0 = d.get(0, 0)
    for n in range(1, precision):
        if phi0:
            factors[(n, 0)] = factors.get((n, 0), 0) + phi0
    for r, e in d.items():
        if r < 1:
            continue
        if e > 0:
            num = num * _sinh_poly(r, e)
        else:
            den = den * _sinh_poly(r, -e)
        for n in range(1, precision):
            factors[(n, r)] = factors.get((n, r), 0) + e
            factors[(n, -r)] = factors.get((n, -r), 0) + e
    try:
        lead = zeta_exact_div(num, den)
    except ValueError:
        raise ValueError(f"{spec}: leading Laurent polynomial is not divisible; "
                         "not a weakly holomorphic theta block") from None
    return lead, factors


def tb_expand(spec, precision, method="product"):
    """Truncated expansion of TB(phi) with q offset phi(0)/24 + sum phi(r)/12."""
    if isinstance(spec, str):
        spec = ThetaBlockSpec.parse(spec)
    if method == "series":
        return _tb_series(spec, precision)
    lead, factors = tb_factors(spec, precision)
    lo, arr = binomial_product(lead, factors, precision)
    fs = _dense_to_series(tb_q_order(spec), lo, arr, precision)
    for zp in fs.terms.values():
        if any(isinstance(c, Fraction) for c in zp.coeffs):
            raise ValueError(f"{spec}: non-integral coefficient")
    return fs


def _tb_series(spec, precision):
    d = spec.as_dict()
    if not spec.without_denominator:
        raise ValueError("series method handles theta blocks without denominator only")
    phi0 = d.get(0, 0)
    nth = sum(e for r, e in d.items() if r >= 1)
    result = FourierSeries.one(precision)
    base = theta_expansion(1, precision)
    for r, e in sorted(d.items()):
        if r >= 1:
            result = mul(result, power(dilate_zeta(base, r), e))
    eta_pow = phi0 - nth
    if eta_pow:
        result = mul(result, power(eta_expansion(precision), eta_pow))
    return result.truncate(precision)


def theta_triple_product(r, precision):
    """theta_r via the triple product, through the dense engine."""
    spec = ThetaBlockSpec.from_dict({0: 1, r: 1})
    return tb_expand(spec, precision)


def delta_expansion(precision):
    return tb_expand(ThetaBlockSpec.from_dict({0: 24}), precision)


# ---------------------------------------------------------------------------
# theta quotients

def quotient_factors(spec, precision):
    lead = ZetaPoly.monomial(0)
    factors = {}
    for d, e in spec.factors:
        if d == e:
            continue
        # zeta^(-(d-e)/2) (1 + zeta^e + ... + zeta^(d-e))
        poly = ZetaPoly.from_dict({2 * j * e - (d - e): 1 for j in range(d // e)})
        lead = lead * poly
        for n in range(1, precision):
            for b, sgn in ((d, 1), (-d, 1), (e, -1), (-e, -1)):
                factors[(n, b)] = factors.get((n, b), 0) + sgn
    return lead, factors


@lru_cache(maxsize=16)
def _quotient_cached(spec, precision):
    m = spec.index
    lead, factors = quotient_factors(spec, precision)
    lo, arr = binomial_product(lead, factors, precision, half_width=m)
    coeffs = {}
    for s in range(precision):
        row = arr[s]
        for j in np.nonzero(row)[0]:
            e2 = lo + 2 * int(j)
            if e2 % 2:
                raise ValueError("theta quotient produced a half-integral zeta power")
            r = e2 // 2
            if abs(r) <= m:
                coeffs[(s, r)] = int(row[j])
    return coeffs


def theta_quotient_expand(spec, precision):
    """Weight-0 weakly holomorphic Jacobi form prod theta_d / theta_e."""
    if isinstance(spec, str):
        spec = ThetaQuotientSpec.parse(spec)
    m = spec.index
    coeffs = _quotient_cached(spec, precision)
    if m == 0:
        return JacobiExpansion(0, 0, {(0, 0): 1}, precision, "weak", check=False)
    return JacobiExpansion(0, m, coeffs, precision, "weakly_holomorphic")
