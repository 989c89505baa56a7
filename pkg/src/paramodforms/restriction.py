"""Jacobi restriction: linear conditions on truncated Fourier-Jacobi tuples.

Unknowns are the coordinates of ``(phi_1, ..., phi_mmax)`` in given bases of
Jacobi cusp forms of index ``N, 2N, ...``.  Two kinds of relations apply to
the Fourier-Jacobi coefficients of a paramodular form of weight k:

* siegel: indices (n, r, m) and (n', r', m') in one Gamma^0(N)^{+-} class
  carry coefficients related by the determinant sign to the power k;
* fricke: c(n, r; phi_m) = eps c(m, -r; phi_n).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import linalg
from .errors import PrecisionError
from .jacobi import JacobiExpansion
from .paramodular import class_index


@dataclass
class RestrictionProblem:
    N: int
    k: int
    epsilon: int
    bases: list                 # bases[m - 1] spans (part of) J_{k, mN}^cusp
    det_cap: int = None
    field: object = linalg.DEFAULT_PRIME
    use_siegel: bool = True
    use_fricke: bool = True

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        for m, b in enumerate(self.bases, start=1):
            for f in b:
                if f.index != m * self.N or f.weight != self.k:
                    raise ValueError(f"basis {m} must have weight {self.k} and index {m * self.N}")
        if self.det_cap is None:
            self.det_cap = default_det_cap(self)

    @property
    def m_max(self):
        return len(self.bases)

    @property
    def dims(self):
        return [len(b) for b in self.bases]

    def offsets(self):
        out, s = [], 0
        for d in self.dims:
            out.append(s)
            s += d
        return out


def default_det_cap(p):
    """Largest discriminant at which every basis coefficient the relations read is known."""
    caps = []
    for b in p.bases:
        for f in b:
            caps.append(f.discriminant_cap())
    return max(0, min(caps)) if caps else 0


@dataclass
class RelationSet:
    tags: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def add(self, tag, row):
        if any(row):
            self.tags.append(tag)
            self.rows.append(row)


def _coeff_row(p, n, r, m, scale=1):
    """Row expressing scale * c(n, r; phi_m) in the unknowns."""
    total = sum(p.dims)
    row = [0] * total
    off = p.offsets()[m - 1]
    for i, f in enumerate(p.bases[m - 1]):
        try:
            c = f.coefficient(n, r)
        except PrecisionError as exc:
            raise PrecisionError(f"relation at (n, r, m) = ({n}, {r}, {m}) needs basis "
                                 f"q-precision {exc.required}", required=exc.required) from None
        row[off + i] = scale * c
    return row


def class_members(p, D):
    """Group the indices (n, r >= 0, m <= m_max), |r| <= mN, of discriminant D by class."""
    N = p.N
    idx = class_index(N)
    groups = {}
    for m in range(1, p.m_max + 1):
        M = m * N
        for r in range(0, M + 1):
            if (D + r * r) % (4 * M):
                continue
            n = (D + r * r) // (4 * M)
            key, sign, amb = idx.canonical(n, r, m)
            groups.setdefault(key, []).append(((n, r, m), sign, amb))
    return groups


def build_relations(p):
    rels = RelationSet()
    N, k = p.N, p.k
    for D in range(1, p.det_cap + 1):
        if D % 4 not in (0, 3):
            continue
        if p.use_siegel:
            for key, members in class_members(p, D).items():
                if k % 2 and members[0][2]:
                    for t, _, _ in members:
                        rels.add(("siegel", t, t), _coeff_row(p, *t))
                    continue
                t0, s0, _ = members[0]
                base = _coeff_row(p, *t0, scale=s0 ** k)
                for t, s, _ in members[1:]:
                    other = _coeff_row(p, *t, scale=s ** k)
                    rels.add(("siegel", t0, t), [a - b for a, b in zip(base, other)])
        if p.use_fricke:
            for n in range(1, p.m_max + 1):
                for m in range(n, p.m_max + 1):
                    M4 = 4 * n * m * N
                    if M4 < D:
                        continue
                    r2 = M4 - D
                    r = isqrt(r2)
                    if r * r != r2:
                        continue
                    for rr in {r, -r}:
                        a = _coeff_row(p, n, rr, m)
                        b = _coeff_row(p, m, -rr, n, scale=p.epsilon)
                        rels.add(("fricke", (n, rr, m)), [x - y for x, y in zip(a, b)])
    return rels


@dataclass
class RestrictionReport:
    N: int
    k: int
    epsilon: int
    m_max: int
    det_cap: int
    field: object
    dim_bases: int
    rank: int

    @property
    def bound(self):
        return self.dim_bases - self.rank

    def line(self):
        eps = "+" if self.epsilon == 1 else "-"
        fld = "Q" if self.field in (None, "Q", "QQ") else f"F{self.field}"
        return (f"{self.N} {self.k} {eps} {self.m_max} {self.det_cap} {fld} "
                f"{self.dim_bases} {self.rank} {self.bound}")


def dim_bound(p, relations=None):
    rels = build_relations(p) if relations is None else relations
    total = sum(p.dims)
    rk = linalg.rank(rels.rows, p.field) if rels.rows else 0
    return RestrictionReport(p.N, p.k, p.epsilon, p.m_max, p.det_cap, p.field, total, rk)


def extract_solution_basis(p, relations=None):
    """Basis of V(m_max) as tuples of JacobiExpansions (characteristic 0 only)."""
    if p.field not in (None, "Q", "QQ"):
        raise ValueError("solution tuples are extracted over Q only")
    rels = build_relations(p) if relations is None else relations
    total = sum(p.dims)
    null = linalg.nullspace_q(rels.rows, total) if rels.rows else \
        [[Fraction(int(i == j)) for j in range(total)] for i in range(total)]
    out = []
    offs = p.offsets()
    for vec in null:
        tup = []
        for m, b in enumerate(p.bases, start=1):
            off = offs[m - 1]
            tup.append(combine(b, vec[off:off + len(b)], p.k, m * p.N))
        out.append(tuple(tup))
    return out


def combine(basis, coords, k, index):
    elements = list(basis)
    if not elements:
        return JacobiExpansion(k, index, {}, 1, "cusp")
    prec = min(f.q_precision for f in elements)
    acc = {}
    for c, f in zip(coords, elements):
        if c:
            for key, v in f.coeffs.items():
                if key[0] < prec:
                    acc[key] = acc.get(key, 0) + c * v
    return JacobiExpansion(k, index, acc, prec, "cusp", check=False)


def residual(p, coords, relations=None):
    """Relation values on a coordinate vector (all zero for a solution)."""
    rels = build_relations(p) if relations is None else relations
    return [sum(a * x for a, x in zip(row, coords)) for row in rels.rows]
