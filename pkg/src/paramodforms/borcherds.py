"""Borcherds products: weight-0 inputs, invariants, Humbert multiplicities,
holomorphy and cuspidality, and expansion by product and by series."""
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, isqrt
import logging

import numpy as np

from . import kernels
from .errors import PrecisionError, VerificationError
from .jacobi import JacobiExpansion, apply_V, from_series, singular_part
from .multimod import crt, dense_mul, primes_for_bound
from .series import divide_exact
from .theta import (ThetaBlockSpec, ThetaQuotientSpec, binomial_product, delta_expansion,
                    tb_expand, theta_quotient_expand)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# inputs

@dataclass
class WeightZeroInput:
    source: str
    resolved: JacobiExpansion
    detail: dict = field(default_factory=dict)

    @property
    def N(self):
        return self.resolved.index


def singular_precision(N, slack=4):
    return -(-N // 4) + slack


def from_theta_quotient(spec, precision=None):
    if isinstance(spec, str):
        spec = ThetaQuotientSpec.parse(spec)
    N = spec.index
    prec = precision or singular_precision(N)
    psi = theta_quotient_expand(spec, prec)
    return WeightZeroInput("theta_quotient", psi, {"spec": spec.notation()})


def _divide_by_delta(fs):
    return divide_exact(fs, delta_expansion(fs.precision + 1))


def build_bp_plus_input(psi12):
    """psi12 / Delta_12 for psi12 of weight 12."""
    if psi12.weight != 12:
        raise ValueError("numerator must have weight 12")
    fs = _divide_by_delta(psi12.to_series())
    psi = from_series(fs, 0, psi12.index)
    return WeightZeroInput("quotient12", psi, {})


def build_bp_minus_input(phi, correction=None):
    """(phi | V_2) / phi + correction / Delta_12, as written for the minus space."""
    if phi.holomorphy not in ("cusp", "weak"):
        raise ValueError("phi must be holomorphic")
    v2 = apply_V(phi, 2)
    num = v2.to_series()
    den = phi.to_series(num.precision + 1)
    try:
        fs = divide_exact(num, den)
    except ValueError as exc:
        raise ValueError(f"phi leading structure not invertible: {exc}") from exc
    psi = from_series(fs, 0, phi.index)
    if correction is not None:
        if correction.index != phi.index:
            raise ValueError("correction index mismatch")
        corr = from_series(_divide_by_delta(correction.to_series()), 0, phi.index)
        prec = min(psi.q_precision, corr.q_precision)
        psi = (psi.truncate(prec) + corr.truncate(prec))
    return WeightZeroInput("v2_quotient", psi, {})


def _resolved(psi):
    return psi.resolved if isinstance(psi, WeightZeroInput) else psi


# ---------------------------------------------------------------------------
# invariants and Humbert multiplicities

def sigma0(n):
    return sum(1 for d in range(1, isqrt(n) + 1) if n % d == 0 for _ in ((d,) if d * d == n else (d, n // d)))


@dataclass
class BorcherdsInvariants:
    k: object
    A: Fraction
    B: Fraction
    C: Fraction
    D0: int
    epsilon: int
    humbert: list = field(default_factory=list)

    def as_tuple(self):
        return (self.k, self.A, self.B, self.C, self.D0, self.epsilon)


def _singular_dict(psi):
    return {(n, r): c for n, r, c in singular_part(psi)}


def invariants(psi):
    """(k, A, B, C, D0, epsilon) from the singular part."""
    psi = _resolved(psi)
    sing = _singular_dict(psi)
    c0 = {r: c for (n, r), c in sing.items() if n == 0}
    c00 = c0.get(0, 0)
    pos = {r: c for r, c in c0.items() if r > 0}
    A = Fraction(c00, 24) + Fraction(sum(pos.values()), 12)
    B = Fraction(sum(r * c for r, c in pos.items()), 2)
    C = Fraction(sum(r * r * c for r, c in pos.items()), 2)
    D0 = sum(sigma0(-n) * c for (n, r), c in sing.items() if n < 0 and r == 0)
    k = Fraction(c00, 2)
    k = int(k) if k.denominator == 1 else k
    if isinstance(k, int):
        eps = -1 if (k + D0) % 2 else 1
    else:
        eps = None
    A, B, C = (int(x) if x.denominator == 1 else x for x in (A, B, C))
    return BorcherdsInvariants(k, A, B, C, D0, eps)


def _class_coefficient(psi, D, rho):
    """Coefficient with discriminant 4nN - r^2 = D and r = rho mod 2N, or 0."""
    N = psi.index
    r = (rho + N) % (2 * N) - N
    num = D + r * r
    if num % (4 * N):
        return 0
    return psi.coefficient(num // (4 * N), r)


def realizable(N, d, r):
    return d > 0 and (d - r * r) % (4 * N) == 0


def canonical_humbert_r(N, r):
    rr = r % (2 * N)
    return min(rr, 2 * N - rr)


def humbert_sum(psi, n, m, r):
    """sum_j c(j^2 n m, j r) for an explicit primitive triple."""
    psi = _resolved(psi)
    N = psi.index
    if gcd(gcd(n, m), r) != 1 or m < 0:
        raise ValueError("need a primitive triple with m >= 0")
    D = 4 * n * m * N - r * r
    if D >= 0:
        raise ValueError("Humbert triples have negative discriminant")
    total, j = 0, 1
    while -j * j * (-D) >= psi.disc_floor:
        total += psi.coefficient(j * j * n * m, j * r)
        j += 1
    return total


def humbert_multiplicity(psi, d, r):
    psi = _resolved(psi)
    N = psi.index
    if not realizable(N, d, r):
        raise ValueError(f"(d, r) = ({d}, {r}) is not realizable at level {N}")
    total, j = 0, 1
    while -j * j * d >= psi.disc_floor:
        total += _class_coefficient(psi, -j * j * d, j * r)
        j += 1
    return total


def humbert_candidates(psi):
    """Every realizable (d, r) whose j-sum can meet the singular support."""
    psi = _resolved(psi)
    N = psi.index
    out = set()
    for n0, r0, c in singular_part(psi):
        D = 4 * n0 * N - r0 * r0
        if D >= 0:
            continue
        j = 1
        while j * j <= -D:
            if (-D) % (j * j) == 0:
                d = -D // (j * j)
                g = gcd(j, 2 * N)
                if r0 % g == 0:
                    mod = 2 * N // g
                    jj = j // g
                    base = (r0 // g) * pow(jj, -1, mod) % mod if mod > 1 else 0
                    for t in range(g):
                        r = base + t * mod
                        if realizable(N, d, r):
                            out.add((d, canonical_humbert_r(N, r)))
            j += 1
    return sorted(out)


def humbert_table(psi):
    psi = _resolved(psi)
    return [(d, r, humbert_multiplicity(psi, d, r)) for d, r in humbert_candidates(psi)]


def certify_holomorphic(psi, N=None):
    """Check the three holomorphy conditions; returns (ok, invariants, table)."""
    psi = _resolved(psi)
    if N is not None and N != psi.index:
        raise ValueError("level does not match the index of psi")
    sing = singular_part(psi)
    integral = all(isinstance(c, int) or Fraction(c).denominator == 1 for _, _, c in sing)
    inv = invariants(psi)
    table = humbert_table(psi)
    inv.humbert = table
    a_ok = Fraction(inv.A).denominator == 1
    mult_ok = all(m >= 0 for _, _, m in table)
    return integral and a_ok and mult_ok, inv, table


class CriterionInapplicable(ValueError):
    pass


def is_paramodular_cusp(inv, N=None):
    """Cuspidality criterion for a certified holomorphic Borcherds product."""
    k = inv.k
    if not isinstance(k, int):
        raise CriterionInapplicable("non-integral weight")
    if k % 2 == 1 or k == 2:
        return True
    if k in (4, 6, 8, 10, 14):
        return inv.C > 0
    raise CriterionInapplicable(f"cuspidality criterion does not cover weight {k}")


# ---------------------------------------------------------------------------
# expansions

@dataclass
class ExpansionLedger:
    """Coefficient requirements of a truncated Borcherds product expansion."""
    fj_terms: int
    q_precision: int       # q-steps past q^A kept in every FJ coefficient
    headroom: int          # extra q-steps absorbing negative-n factors
    psi_precision: int     # q-precision of psi that the expansion reads
    zeta_half_width: int
    factors: int = 0

    def line(self):
        return (f"fj_terms={self.fj_terms} q_precision={self.q_precision} "
                f"headroom={self.headroom} psi_precision={self.psi_precision} "
                f"zeta_half_width={self.zeta_half_width} factors={self.factors}")


@dataclass
class BorcherdsExpansion:
    """Fourier-Jacobi coefficients xi^(C + jN), j < fj_terms, of BL(psi)."""
    weight: object
    level: int
    A: int
    B: int
    C: int
    fj: dict               # FJ index (multiple of N) -> {(n, r): c} absolute exponents
    q_limit: int           # every n < q_limit is exact
    ledger: ExpansionLedger
    method: str

    def jacobi(self, index):
        coeffs = {k: v for k, v in self.fj[index].items() if abs(k[1]) <= index}
        return JacobiExpansion(self.weight, index, coeffs, self.q_limit, "weak")

    def siegel(self):
        from .paramodular import FJBackedExpansion
        N = self.level
        m_first = self.C // N
        forms = {M // N: self.jacobi(M) for M in self.fj}
        return FJBackedExpansion(self.weight, N, forms, m_first)


def _floor_row(floor, N, m=1):
    # least n with 4 n m N >= floor
    return -((-floor) // (4 * m * N)) if floor < 0 else 0


def plan_expansion(psi, fj_terms, q_precision):
    psi = _resolved(psi)
    N = psi.index
    floor = min(psi.disc_floor, 0)
    n_min = _floor_row(floor, N)
    H = (fj_terms - 1) * max(0, -n_min)
    top = q_precision + H
    need = (fj_terms - 1) * (top - 1) + 1 if fj_terms > 1 else 1
    m_top = max(fj_terms - 1, 1)
    R = isqrt(max(0, 4 * (top - 1) * m_top * N - m_top * m_top * floor))
    return ExpansionLedger(fj_terms, q_precision, H, need, (fj_terms - 1) * R)


def _check_expandable(psi, ledger):
    sing = singular_part(psi)
    if any(Fraction(c).denominator != 1 for _, _, c in sing):
        raise ValueError("singular part is not integral")
    if psi.q_precision < ledger.psi_precision:
        raise PrecisionError(f"expansion needs psi to q-precision {ledger.psi_precision}, "
                             f"have {psi.q_precision}", required=ledger.psi_precision)
    inv = invariants(psi)
    if Fraction(inv.A).denominator != 1 or Fraction(inv.B).denominator != 1:
        raise ValueError("A and B must be integral for an expansion in integral powers")
    if inv.C % psi.index:
        raise ValueError("C is not a multiple of the level")
    return inv


def _binom_exact(e, i):
    num, den = 1, 1
    for j in range(i):
        num *= e - j
        den *= j + 1
    return num // den


def _lead_product(psi):
    """zeta^B prod_{r<0} (1 - zeta^r)^c(0,r), as a ZetaPoly."""
    from .series import ZetaPoly, zeta_exact_div
    B = invariants(psi).B
    num = ZetaPoly.monomial(2 * B)
    den = ZetaPoly.monomial(0)
    for r in range(-psi.index, 0):
        c = psi.coefficient(0, r)
        poly = ZetaPoly.from_dict({0: 1, 2 * r: -1})
        for _ in range(abs(c)):
            if c > 0:
                num = num * poly
            else:
                den = den * poly
    return zeta_exact_div(num, den)


def _to_dict(arr, row0, col0, q_limit, q_base):
    """Dense array (row = exponent - row0, column = zeta - col0) to {(n, r): c}."""
    out = {}
    for i in range(arr.shape[0]):
        n = q_base + row0 + i
        if n >= q_limit:
            break
        row = arr[i]
        for j in np.nonzero(row)[0]:
            out[(n, col0 + int(j))] = row[j]
    return out


def expand_product(psi, N=None, fj_terms=3, q_precision=10):
    """BL(psi) through FJ index C + (fj_terms - 1) N from the product formula.

    Every factor ``(1 - q^n zeta^r xi^(mN))^c(nm, r)`` is multiplied in: the
    ``m = 0`` factors by the binomial engine, the ``m >= 1`` factors into
    ``fj_terms`` slots (one per power of ``xi^N``) modulo word-size primes.
    """
    psi = _resolved(psi)
    if N is not None and N != psi.index:
        raise ValueError("level does not match the index of psi")
    N = psi.index
    ledger = plan_expansion(psi, fj_terms, q_precision)
    inv = _check_expandable(psi, ledger)
    log.info("expand_product %s", ledger.line())
    A, B, C = int(inv.A), int(inv.B), int(inv.C)
    P, H = q_precision, ledger.headroom
    floor = min(psi.disc_floor, 0)
    J = fj_terms

    # m = 0: q^A zeta^B prod (1 - zeta^r)^c(0,r) (r < 0) prod_{n>0} (1 - q^n zeta^r)^c(0,r)
    lead = _lead_product(psi)
    f0 = {}
    for r in range(-N, N + 1):
        c = psi.coefficient(0, r)
        if c:
            for n in range(1, P):
                f0[(n, r)] = c
    lo2, T = binomial_product(lead, f0, P)
    if lo2 % 2:
        raise ValueError("half-integral zeta power in the leading product")
    t_col0 = lo2 // 2

    # m >= 1 slots
    L = (J - 1) * min(0, _floor_row(floor, N))
    top = P + H
    factors = []
    for m in range(1, J):
        for n in range(_floor_row(floor, N, m), top):
            bound = 4 * n * m * N - floor
            if bound < 0:
                continue
            R = isqrt(bound)
            for r in range(-R, R + 1):
                c = psi.coefficient(n * m, r)
                if c:
                    factors.append((m, n, r, int(c)))
    ledger.factors = len(factors) + len(f0)
    Wh = max([abs(r) for _, _, r, _ in factors] + [0]) * (J - 1)
    rows = top - L
    slots = [np.zeros((rows, 1), dtype=object)] * J
    if J > 1:
        # majorant of slot coefficient sums
        M = [1] + [0] * (J - 1)
        for m, n, r, c in factors:
            co = [abs(_binom_exact(c, i)) for i in range((J - 1) // m + 1)]
            M = [sum(co[i] * M[s - i * m] for i in range(len(co)) if s - i * m >= 0)
                 for s in range(J)]
        residues = []
        for p in primes_for_bound(max(M), small=True):
            S = np.zeros((J, rows, 2 * Wh + 1), dtype=np.int64)
            S[0, -L, Wh] = 1
            for m, n, r, c in factors:
                co = np.array([_binom_exact(c, i) * (-1) ** i % p
                               for i in range((J - 1) // m + 1)], dtype=np.int64)
                kernels.slot_update(S, n, r, co, m, p)
            residues.append((p, S.reshape(J, -1)))
        G = crt(residues).reshape(J, rows, 2 * Wh + 1)
        slots = [G[s] for s in range(J)]
    else:
        slots = [np.ones((1, 1), dtype=object)]
    fj = {}
    for j in range(J):
        Gj = slots[j] if J > 1 else slots[0]
        g_row0 = L if J > 1 else 0
        g_col0 = -Wh if J > 1 else 0
        Fj = dense_mul(T, Gj, rows=P - g_row0)
        fj[C + j * N] = _to_dict(Fj, g_row0, t_col0 + g_col0, A + P, A)
    return BorcherdsExpansion(inv.k, N, A, B, C, fj, A + P, ledger, "product")


def weight0_V(psi, m, n_range):
    """Weight-0 index-raising operator coefficients: sum_{d | (n, r, m)} d^-1 c(nm/d^2, r/d)."""
    N = psi.index
    floor = min(psi.disc_floor, 0)
    out = {}
    for n in n_range:
        bound = 4 * n * m * N - m * m * floor
        if bound < 0:
            continue
        R = isqrt(bound)
        for r in range(-R, R + 1):
            g = gcd(gcd(n, r), m)
            s = Fraction(0)
            for d in range(1, g + 1):
                if g % d == 0:
                    s += Fraction(psi.coefficient(n * m // (d * d), r // d), d)
            if s:
                out[(n, r)] = s
    return out


def _dict_to_dense(d, row0, rows, col0, cols, scale=1):
    arr = np.zeros((rows, cols), dtype=object)
    for (n, r), c in d.items():
        i, j = n - row0, r - col0
        if not (0 <= i < rows and 0 <= j < cols):
            raise IndexError(f"term ({n}, {r}) outside the dense window")
        v = c * scale
        if Fraction(v).denominator != 1:
            raise ValueError("scale does not clear denominators")
        arr[i, j] = int(v)
    return arr


def expand_series(psi, N=None, fj_terms=3, q_precision=10):
    """BL(psi) from TB(phi) xi^C exp(-Grit(psi)), with phi(r) = c(0, r).

    The weight-0 lift is ``sum_{m >= 1} (psi | V_m) xi^(mN)`` with divisor
    weights ``d^-1``; the exponential is expanded in powers of ``xi^N``.
    """
    psi = _resolved(psi)
    if N is not None and N != psi.index:
        raise ValueError("level does not match the index of psi")
    N = psi.index
    ledger = plan_expansion(psi, fj_terms, q_precision)
    inv = _check_expandable(psi, ledger)
    A, B, C = int(inv.A), int(inv.B), int(inv.C)
    P, H = q_precision, ledger.headroom
    J = fj_terms
    floor = min(psi.disc_floor, 0)

    phi = {0: psi.coefficient(0, 0)}
    for r in range(1, N + 1):
        c = psi.coefficient(0, r)
        if c:
            phi[r] = c
    tb = tb_expand(ThetaBlockSpec.from_dict(phi), P, method="series")
    if tb.q_offset != A:
        raise ValueError("theta block q-order disagrees with A")
    t_dict = {}
    for s, zp in tb.terms.items():
        for e2, c in zp.items():
            if e2 % 2:
                raise ValueError("half-integral zeta power in the theta block")
            t_dict[(s, e2 // 2)] = c
    tR = max([abs(r) for _, r in t_dict] + [0])
    T = _dict_to_dense(t_dict, 0, P, -tR, 2 * tR + 1)

    L = (J - 1) * min(0, _floor_row(floor, N))
    top = P + H
    Lc = 1
    for m in range(1, J):
        Lc = Lc * m // gcd(Lc, m)
    g = {}
    for m in range(1, J):
        g[m] = weight0_V(psi, m, range(L, top))
    R = max([abs(r) for gm in g.values() for _, r in gm] + [0]) * max(J - 1, 1)
    rows, cols = top - L, 2 * R + 1
    # exp(-g) = sum E_s X^s with E_s = B_s / (s! Lc^s); B_0 = 1
    Gs = {m: _dict_to_dense(g[m], L, rows, -R, cols, Lc) for m in g}
    Bs = [np.zeros((rows, cols), dtype=object)]
    Bs[0][-L, R] = 1
    for s in range(1, J):
        acc = np.zeros((rows, cols), dtype=object)
        for i in range(1, s + 1):
            w = -i * Lc ** (i - 1) * (factorial(s - 1) // factorial(s - i))
            prod = dense_mul(Gs[i], Bs[s - i], rows=rows - L)
            # rows of prod start at 2L; keep those from L
            prod = prod[-L:-L + rows] if L else prod[:rows]
            prod = prod[:, R:R + cols]
            acc = acc + w * _pad_rows(prod, rows)
        Bs.append(acc)
    fj = {}
    for j in range(J):
        den = factorial(j) * Lc ** j
        Fj = dense_mul(T, Bs[j], rows=P - L)
        for x in Fj.flat:
            if x % den:
                raise ValueError("exp(-Grit(psi)) times the theta block is not integral")
        fj[C + j * N] = _to_dict(Fj // den, L, -tR - R, A + P, A)
    ledger.factors = 0
    return BorcherdsExpansion(inv.k, N, A, B, C, fj, A + P, ledger, "series")


def _pad_rows(arr, rows):
    if arr.shape[0] >= rows:
        return arr[:rows]
    out = np.zeros((rows, arr.shape[1]), dtype=object)
    out[:arr.shape[0]] = arr
    return out


# ---------------------------------------------------------------------------
# certificates

SECTIONS = ("SINGULAR", "INVARIANTS", "HUMBERT", "LEADING_FJ", "COMBINATION", "BASIS")


@dataclass
class BPCertificate:
    kind: str              # "BP+" or "BP-"
    level: int
    singular: list         # (n, r, c)
    invariants: tuple      # (k, A, B, C, D0, eps)
    humbert: list          # (d, r, mult)
    leading_fj: str = ""   # Jacobi basis-file fragment
    combination: list = field(default_factory=list)
    basis: list = field(default_factory=list)

    def dumps(self):
        out = [f"BPCERT {self.kind} {self.level}", "SINGULAR"]
        out += [f"{n} {r} {c}" for n, r, c in self.singular]
        out += ["INVARIANTS", " ".join(str(x) for x in self.invariants), "HUMBERT"]
        out += [f"{d} {r} {m}" for d, r, m in self.humbert]
        out += ["LEADING_FJ"] + [ln for ln in self.leading_fj.splitlines() if ln.strip()]
        out += ["COMBINATION", " ".join(str(x) for x in self.combination), "BASIS"]
        out += list(self.basis)
        out.append("END")
        return "\n".join(out) + "\n"

    @classmethod
    def loads(cls, text):
        lines = text.splitlines()
        head = lines[0].split()
        if head[0] != "BPCERT" or len(head) != 3:
            raise ValueError("not a BP certificate")
        blocks, cur = {}, None
        for ln in lines[1:]:
            if ln in SECTIONS or ln == "END":
                cur = ln
                blocks[cur] = []
            elif cur is None:
                raise ValueError("content before the first section")
            else:
                blocks[cur].append(ln)
        missing = [s for s in SECTIONS if s not in blocks]
        if missing:
            raise ValueError(f"missing sections {missing}")
        ints = lambda ln: tuple(int(x) for x in ln.split())
        inv = tuple(_num(x) for x in " ".join(blocks["INVARIANTS"]).split())
        if len(inv) != 6:
            raise ValueError("INVARIANTS needs six values")
        comb = [int(x) for x in " ".join(blocks["COMBINATION"]).split()]
        return cls(head[1], int(head[2]),
                   [ints(ln) for ln in blocks["SINGULAR"] if ln.strip()], inv,
                   [ints(ln) for ln in blocks["HUMBERT"] if ln.strip()],
                   "\n".join(blocks["LEADING_FJ"]), comb,
                   [ln for ln in blocks["BASIS"] if ln.strip()])


def _num(x):
    v = Fraction(x)
    return int(v) if v.denominator == 1 else v


def make_certificate(psi, basis=(), combination=(1,), leading_precision=2):
    """Certify psi and package the result; raises VerificationError if it fails."""
    from .jacobi import JacobiBasis, write_basis
    w = psi if isinstance(psi, WeightZeroInput) else WeightZeroInput("given", psi)
    res = w.resolved
    ok, inv, table = certify_holomorphic(res)
    if not ok:
        raise VerificationError("psi fails the holomorphy conditions")
    kind = "BP+" if inv.epsilon == 1 else "BP-"
    lead = ""
    if Fraction(inv.A).denominator == 1 and Fraction(inv.k).denominator == 1:
        phi = {r: res.coefficient(0, r) for r in range(0, res.index + 1) if res.coefficient(0, r)}
        spec = ThetaBlockSpec.from_dict(phi)
        A = int(inv.A)
        fs = tb_expand(spec, leading_precision)
        jac = from_series(fs, inv.k, int(inv.C), "weak")
        jac = JacobiExpansion(inv.k, int(inv.C), jac.coeffs, A + leading_precision, "weak")
        lead = write_basis(JacobiBasis([jac], [spec.notation()]), _Sink())
    basis = list(basis) or [w.detail.get("spec", w.source)]
    return BPCertificate(kind, res.index, sorted(singular_part(res)), inv.as_tuple(), table,
                         lead, list(combination), basis)


class _Sink:
    def write(self, text):
        pass


def psi_from_singular(N, singular):
    """A JacobiExpansion carrying only the singular coefficients (enough for
    invariants and Humbert multiplicities, which read discriminants <= 0)."""
    coeffs = {(n, r): c for n, r, c in singular}
    floor = min([4 * n * N - r * r for n, r, _ in singular] + [0])
    return JacobiExpansion(0, N, coeffs, N // 4 + 1, "weakly_holomorphic", floor, check=False)


def verify_certificate(cert):
    """Recheck a certificate from its singular part alone."""
    N = cert.level
    for n, r, c in cert.singular:
        if abs(r) > N or 4 * n * N - r * r > 0 or 4 * n > N:
            raise VerificationError(f"({n}, {r}) is not a singular index")
    psi = psi_from_singular(N, cert.singular)
    ok, inv, table = certify_holomorphic(psi)
    if tuple(inv.as_tuple()) != tuple(cert.invariants):
        raise VerificationError(f"invariants {inv.as_tuple()} differ from {cert.invariants}")
    if [tuple(x) for x in table] != [tuple(x) for x in cert.humbert]:
        diff = set(map(tuple, table)) ^ set(map(tuple, cert.humbert))
        raise VerificationError(f"Humbert table differs at {sorted(diff)[:5]}")
    if not ok:
        raise VerificationError("holomorphy conditions fail")
    kind = "BP+" if inv.epsilon == 1 else "BP-"
    if kind != cert.kind:
        raise VerificationError(f"certificate kind {cert.kind} but epsilon gives {kind}")
    return True
