"""Exact truncated two-variable series: q-series whose coefficients are
Laurent polynomials in zeta.

zeta exponents are stored doubled, so half-integral powers (theta functions)
stay integral.  Inside one :class:`ZetaPoly` every exponent has the same
parity; polynomials are held densely on the stride-2 grid starting at ``lo``.
Coefficients are Python ints, or Fractions once a division introduces them.
"""
from fractions import Fraction
from math import factorial

import numpy as np


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


class ZetaPoly:
    """Laurent polynomial in zeta with doubled exponents."""

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo=0, coeffs=()):
        coeffs = list(coeffs)
        i, j = 0, len(coeffs)
        while i < j and coeffs[i] == 0:
            i += 1
        while j > i and coeffs[j - 1] == 0:
            j -= 1
        self.coeffs = tuple(_clean(c) for c in coeffs[i:j])
        self.lo = lo + 2 * i if self.coeffs else 0

    @classmethod
    def from_dict(cls, d):
        """Build from ``{doubled_exponent: value}``; parities must agree."""
        d = {e: c for e, c in d.items() if c != 0}
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        if any((e - lo) % 2 for e in d):
            raise ValueError("mixed exponent parity in one ZetaPoly")
        dense = [0] * ((hi - lo) // 2 + 1)
        for e, c in d.items():
            dense[(e - lo) // 2] = c
        return cls(lo, dense)

    @classmethod
    def monomial(cls, e2, c=1):
        return cls(e2, [c])

    # mapping view -----------------------------------------------------
    def items(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.lo + 2 * i, c

    def to_dict(self):
        return dict(self.items())

    def __getitem__(self, e2):
        i, rem = divmod(e2 - self.lo, 2)
        if rem or i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return sum(1 for c in self.coeffs if c != 0)

    @property
    def hi(self):
        return self.lo + 2 * (len(self.coeffs) - 1)

    @property
    def parity(self):
        return self.lo % 2 if self.coeffs else None

    def is_monomial(self):
        return len(self.coeffs) == 1

    def __eq__(self, other):
        if not isinstance(other, ZetaPoly):
            return NotImplemented
        return self.lo == other.lo and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lo, self.coeffs))

    def __repr__(self):
        terms = ", ".join(f"{e}/2:{c}" for e, c in self.items())
        return f"ZetaPoly({{{terms}}})"

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        if (self.lo - other.lo) % 2:
            raise ValueError("cannot add ZetaPolys of different parity")
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * ((hi - lo) // 2 + 1)
        for src in (self, other):
            off = (src.lo - lo) // 2
            for i, c in enumerate(src.coeffs):
                out[off + i] += c
        return ZetaPoly(lo, out)

    def __neg__(self):
        return ZetaPoly(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if c == 0:
            return ZetaPoly()
        return ZetaPoly(self.lo, [c * x for x in self.coeffs])

    def shift(self, e2):
        return ZetaPoly(self.lo + e2, self.coeffs) if self.coeffs else self

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return ZetaPoly()
        a = np.array(self.coeffs, dtype=object)
        b = np.array(other.coeffs, dtype=object)
        return ZetaPoly(self.lo + other.lo, np.convolve(a, b).tolist())

    def dilate(self, r):
        """Substitute zeta -> zeta^r."""
        return ZetaPoly.from_dict({e * r: c for e, c in self.items()})


class FourierSeries:
    """Truncated series ``sum_{0 <= s < precision} q^(q_offset + s) * terms[s]``."""

    __slots__ = ("q_offset", "terms", "precision")

    def __init__(self, q_offset, terms, precision):
        self.q_offset = Fraction(q_offset)
        self.precision = int(precision)
        clean = {}
        for s, zp in terms.items():
            if s < 0:
                raise ValueError("negative q-step; absorb it into q_offset")
            if s < self.precision and zp:
                clean[int(s)] = zp
        self.terms = clean
        par = {zp.parity for zp in clean.values()}
        if len(par) > 1:
            raise ValueError("mixed zeta parity across q-steps")

    # constructors -----------------------------------------------------
    @classmethod
    def one(cls, precision):
        return cls(0, {0: ZetaPoly.monomial(0)}, precision)

    @classmethod
    def zero(cls, precision, q_offset=0):
        return cls(q_offset, {}, precision)

    @classmethod
    def from_coeffs(cls, coeffs, precision, q_offset=0):
        """``coeffs`` maps ``(step, doubled zeta exponent)`` to values."""
        by_step = {}
        for (s, e2), c in coeffs.items():
            by_step.setdefault(s, {})[e2] = c
        return cls(q_offset, {s: ZetaPoly.from_dict(d) for s, d in by_step.items()},
                   precision)

    # views --------------------------------------------------------------
    @property
    def zeta_offset(self):
        for zp in self.terms.values():
            return Fraction(zp.parity, 2)
        return Fraction(0)

    def valuation(self):
        """Smallest step with a nonzero term, or ``precision`` for the zero series."""
        return min(self.terms) if self.terms else self.precision

    def coefficient(self, q_exp, zeta_exp):
        """Coefficient of ``q^q_exp zeta^zeta_exp`` (true rational exponents)."""
        s = Fraction(q_exp) - self.q_offset
        if s.denominator != 1:
            return 0
        s = int(s)
        if s >= self.precision:
            raise ValueError(f"q-step {s} beyond precision {self.precision}")
        zp = self.terms.get(s)
        e2 = Fraction(zeta_exp) * 2
        if zp is None or e2.denominator != 1:
            return 0
        return zp[int(e2)]

    def items(self):
        """Yield ``(true q exponent, true zeta exponent, value)``."""
        for s in sorted(self.terms):
            for e2, c in self.terms[s].items():
                yield self.q_offset + s, Fraction(e2, 2), c

    def is_zero(self):
        return not self.terms

    def truncate(self, precision):
        return FourierSeries(self.q_offset, self.terms, min(precision, self.precision))

    def __eq__(self, other):
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return sub(self, other).is_zero()

    def __repr__(self):
        return (f"FourierSeries(q_offset={self.q_offset}, precision={self.precision}, "
                f"terms={{{', '.join(f'{s}: {zp!r}' for s, zp in sorted(self.terms.items()))}}})")

    # operator sugar
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return scale(self, -1)


def _align(a, b):
    d = a.q_offset - b.q_offset
    if d.denominator != 1:
        raise ValueError(f"q offsets {a.q_offset} and {b.q_offset} are not alignable")
    d = int(d)
    pa, pb = a.zeta_offset, b.zeta_offset
    if a.terms and b.terms and pa != pb:
        raise ValueError("zeta offsets are not alignable")
    return d


def add(a, b):
    d = _align(a, b)
    # express both relative to the smaller offset
    if d >= 0:
        base, sa, sb = b.q_offset, d, 0
    else:
        base, sa, sb = a.q_offset, 0, -d
    prec = min(a.precision + sa, b.precision + sb)
    terms = {}
    for src, sh in ((a, sa), (b, sb)):
        for s, zp in src.terms.items():
            t = s + sh
            if t < prec:
                terms[t] = terms[t] + zp if t in terms else zp
    return FourierSeries(base, terms, prec)


def scale(a, c):
    return FourierSeries(a.q_offset, {s: zp.scale(c) for s, zp in a.terms.items()}, a.precision)


def sub(a, b):
    return add(a, scale(b, -1))


def mul(a, b):
    va, vb = a.valuation(), b.valuation()
    prec = min(a.precision + vb, b.precision + va)
    terms = {}
    for s1, z1 in a.terms.items():
        for s2, z2 in b.terms.items():
            s = s1 + s2
            if s < prec:
                z = z1 * z2
                terms[s] = terms[s] + z if s in terms else z
    return FourierSeries(a.q_offset + b.q_offset, terms, prec)


def power(a, e):
    if e < 0:
        return power(invert(a), -e)
    result = FourierSeries.one(a.precision)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def invert(a):
    """Multiplicative inverse; the leading coefficient must be a monomial."""
    if a.is_zero():
        raise ValueError("cannot invert the zero series")
    s0 = a.valuation()
    lead = a.terms[s0]
    if not lead.is_monomial():
        raise ValueError("leading ZetaPoly is not a unit monomial")
    c, t = lead.coeffs[0], lead.lo
    if isinstance(c, int) and c in (1, -1):
        cinv = c
    else:
        cinv = Fraction(1) / Fraction(c)
    prec = a.precision - s0

    def div_lead(zp):
        return zp.shift(-t).scale(cinv)

    b = {0: ZetaPoly.monomial(-t, cinv)}
    for n in range(1, prec):
        acc = ZetaPoly()
        for i in range(1, n + 1):
            ai = a.terms.get(s0 + i)
            bj = b.get(n - i)
            if ai is not None and bj is not None:
                acc = acc + ai * bj
        if acc:
            b[n] = -div_lead(acc)
    return FourierSeries(-(a.q_offset + s0), b, prec)


def exp_neg(a):
    """``exp(-a)`` truncated; ``a`` must have only positive integral q-powers."""
    if a.q_offset.denominator != 1:
        raise ValueError("exp_neg needs an integral q offset")
    if not a.is_zero() and a.q_offset + a.valuation() <= 0:
        raise ValueError("exp_neg needs a series without constant term")
    # rebase to offset 0 so every power shares one frame
    if a.q_offset:
        a = FourierSeries(0, {s + int(a.q_offset): zp for s, zp in a.terms.items()},
                          a.precision + int(a.q_offset))
    prec = a.precision
    total = FourierSeries.one(prec)
    term = FourierSeries.one(prec)
    neg = scale(a, -1)
    k = 1
    while True:
        term = mul(term, neg).truncate(prec)
        if term.is_zero():
            break
        total = add(total, scale(term, Fraction(1, factorial(k))))
        k += 1
        if k > prec + 1:
            break
    return FourierSeries(total.q_offset, total.terms, prec)


def dilate_zeta(a, r):
    """Substitute zeta -> zeta^r."""
    return FourierSeries(a.q_offset, {s: zp.dilate(r) for s, zp in a.terms.items()}, a.precision)


def require_integral(a):
    """Strip Fraction denominators, failing if any coefficient is not an integer."""
    terms = {}
    for s, zp in a.terms.items():
        vals = []
        for c in zp.coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c} at q-step {s}")
                c = int(c)
            vals.append(c)
        terms[s] = ZetaPoly(zp.lo, vals)
    return FourierSeries(a.q_offset, terms, a.precision)


def zeta_exact_div(num, den):
    """Exact quotient of Laurent polynomials, or ValueError if ``den`` does not divide."""
    if not den:
        raise ZeroDivisionError("division by the zero ZetaPoly")
    if not num:
        return ZetaPoly()
    rem = list(num.coeffs)
    d = list(den.coeffs)
    lead = d[-1]
    nq = len(rem) - len(d) + 1
    if nq <= 0:
        raise ValueError("ZetaPoly division is not exact")
    quot = [0] * nq
    for i in range(nq - 1, -1, -1):
        c = rem[i + len(d) - 1]
        if c == 0:
            continue
        qc = Fraction(c) / lead if not (isinstance(c, int) and lead in (1, -1)) else c * lead
        quot[i] = _clean(qc)
        for j, dj in enumerate(d):
            rem[i + j] -= qc * dj
    if any(x != 0 for x in rem):
        raise ValueError("ZetaPoly division is not exact")
    return ZetaPoly(num.lo - den.lo, quot)


def divide_exact(a, b):
    """``a / b`` where each q-order quotient must be a Laurent polynomial.

    Unlike :func:`invert` the leading coefficient of ``b`` may be any nonzero
    ZetaPoly; the recursion divides by it exactly and fails loudly otherwise.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero series")
    vb = b.valuation()
    lead = b.terms[vb]
    prec = min(a.precision, b.precision - vb)
    offset = a.q_offset - b.q_offset - vb
    out = {}
    for n in range(prec):
        acc = a.terms.get(n, ZetaPoly())
        for i in range(1, n + 1):
            bi = b.terms.get(vb + i)
            cj = out.get(n - i)
            if bi is not None and cj is not None:
                acc = acc - bi * cj
        if acc:
            try:
                out[n] = zeta_exact_div(acc, lead)
            except ValueError as exc:
                raise ValueError(f"quotient is not a Laurent polynomial at q-step {n}") from exc
    return FourierSeries(offset, out, prec)
