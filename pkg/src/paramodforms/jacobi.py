"""Jacobi-form expansions, index reduction, V_l, singular parts, bases and
dimension tables."""
from fractions import Fraction
from math import gcd, isqrt
import os

from . import linalg
from .errors import PrecisionError, TableGap
from .series import FourierSeries, ZetaPoly

HOLOMORPHY = ("cusp", "weak", "weakly_holomorphic")


def reduce_r(n, r, m):
    """Translate ``(n, r)`` so that ``|r'| <= m``; returns ``(n', r', lam)``.

    Uses ``c(n - lam r + lam^2 m, r - 2 lam m) = c(n, r)``; the reduced ``r'``
    lies in ``[-m, m)`` so the choice is unique.
    """
    if m < 1:
        raise ValueError("index must be positive")
    lam = (r + m) // (2 * m)
    return n - lam * r + lam * lam * m, r - 2 * lam * m, lam


class JacobiExpansion:
    """Coefficients ``c(n, r)`` of a Jacobi form, stored for ``|r| <= index``.

    Every ``(n, r)`` with ``n < q_precision`` and ``|r| <= index`` is known:
    absent keys are zero.  ``disc_floor`` bounds ``4 n index - r^2`` from below
    over the support (0 for holomorphic, 1 for cusp forms).
    """

    def __init__(self, weight, index, coeffs, q_precision, holomorphy="weakly_holomorphic",
                 disc_floor=None, check=True):
        if holomorphy not in HOLOMORPHY:
            raise ValueError(f"unknown holomorphy class {holomorphy!r}")
        self.weight = weight
        self.index = int(index)
        self.q_precision = int(q_precision)
        self.holomorphy = holomorphy
        m = self.index
        clean = {}
        for (n, r), c in coeffs.items():
            if c == 0 or n >= self.q_precision:
                continue
            if m > 0 and abs(r) > m:
                n, r, _ = reduce_r(n, r, m)
                if (n, r) in clean and clean[(n, r)] != c:
                    raise ValueError(f"inconsistent coefficient at {(n, r)}")
            if isinstance(c, Fraction) and c.denominator == 1:
                c = int(c)
            clean[(n, r)] = c
        self.coeffs = clean
        discs = [4 * n * m - r * r for (n, r) in clean]
        lowest = min(discs) if discs else 0
        if disc_floor is None:
            disc_floor = {"cusp": 1, "weak": 0}.get(holomorphy, min(lowest, 0))
        self.disc_floor = disc_floor
        if check and discs and lowest < disc_floor:
            raise ValueError(f"coefficient below the discriminant floor {disc_floor} "
                             f"for holomorphy class {holomorphy}")

    # lookup -------------------------------------------------------------
    def __call__(self, n, r):
        return self.coefficient(n, r)

    def coefficient(self, n, r):
        m = self.index
        if m == 0:
            if r != 0:
                return 0
        elif abs(r) > m:
            n, r, _ = reduce_r(n, r, m)
        if 4 * n * m - r * r < self.disc_floor:
            return 0
        if n >= self.q_precision:
            raise PrecisionError(
                f"coefficient c({n},{r}) needs q-precision {n + 1}, have {self.q_precision}",
                required=n + 1)
        return self.coeffs.get((n, r), 0)

    def items(self):
        return sorted(self.coeffs.items())

    def precision_for_disc(self, disc):
        """q-precision needed to read every coefficient with discriminant <= disc."""
        m = self.index
        return (disc + m * m) // (4 * m) + 1

    def discriminant_cap(self):
        """Largest D such that every coefficient with discriminant <= D is known."""
        m = self.index
        return 4 * self.q_precision * m - m * m - 1

    def truncate(self, q_precision):
        if q_precision > self.q_precision:
            raise PrecisionError(f"cannot raise precision {self.q_precision} to {q_precision}",
                                 required=q_precision)
        return JacobiExpansion(self.weight, self.index,
                               {k: v for k, v in self.coeffs.items() if k[0] < q_precision},
                               q_precision, self.holomorphy, self.disc_floor, check=False)

    def scale(self, c):
        return JacobiExpansion(self.weight, self.index,
                               {k: c * v for k, v in self.coeffs.items()},
                               self.q_precision, self.holomorphy, self.disc_floor, check=False)

    def __add__(self, other):
        _same_space(self, other)
        prec = min(self.q_precision, other.q_precision)
        out = dict((k, v) for k, v in self.coeffs.items() if k[0] < prec)
        for k, v in other.coeffs.items():
            if k[0] < prec:
                out[k] = out.get(k, 0) + v
        hol = self.holomorphy if self.holomorphy == other.holomorphy else "weakly_holomorphic"
        return JacobiExpansion(self.weight, self.index, out, prec, hol,
                               min(self.disc_floor, other.disc_floor), check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        if (self.weight, self.index) != (other.weight, other.index):
            return False
        prec = min(self.q_precision, other.q_precision)
        a = {k: v for k, v in self.coeffs.items() if k[0] < prec}
        b = {k: v for k, v in other.coeffs.items() if k[0] < prec}
        return a == b

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        return (f"JacobiExpansion(weight={self.weight}, index={self.index}, "
                f"q_precision={self.q_precision}, {self.holomorphy}, {len(self.coeffs)} terms)")

    # conversions ----------------------------------------------------------
    def columns(self, q_precision=None):
        prec = self.q_precision if q_precision is None else q_precision
        m = self.index
        lo = min([n for n, _ in self.coeffs] + [0])
        return [(n, r) for n in range(lo, prec) for r in range(-m, m + 1)
                if 4 * n * m - r * r >= self.disc_floor]

    def vector(self, columns):
        return [self.coefficient(n, r) for n, r in columns]

    def to_series(self, q_precision=None):
        """FourierSeries with every zeta power (not just ``|r| <= index``)."""
        prec = self.q_precision if q_precision is None else min(q_precision, self.q_precision)
        m = self.index
        lo = min([n for n, _ in self.coeffs] + [0])
        terms = {}
        for n in range(lo, prec):
            bound = 4 * n * m - self.disc_floor
            if bound < 0:
                continue
            R = isqrt(bound) if m else 0
            d = {}
            for r in range(-R, R + 1):
                c = self.coefficient(n, r)
                if c:
                    d[2 * r] = c
            if d:
                terms[n - lo] = ZetaPoly.from_dict(d)
        return FourierSeries(lo, terms, prec - lo)


def _same_space(a, b):
    if a.weight != b.weight or a.index != b.index:
        raise ValueError("Jacobi forms of different weight or index")


def from_series(fs, weight, index, holomorphy="weakly_holomorphic", disc_floor=None):
    """Read a JacobiExpansion off a FourierSeries with integral q and zeta powers."""
    if fs.q_offset.denominator != 1 or fs.zeta_offset != 0:
        raise ValueError("series is not integrally graded")
    base = int(fs.q_offset)
    coeffs = {}
    for s, zp in fs.terms.items():
        n = base + s
        for e2, c in zp.items():
            r = e2 // 2
            if abs(r) <= index:
                coeffs[(n, r)] = c
    return JacobiExpansion(weight, index, coeffs, base + fs.precision, holomorphy, disc_floor)


def jacobi_mul(a, b):
    """Product of two Jacobi expansions (weights and indices add)."""
    fs = a.to_series() * b.to_series()
    hol = "cusp" if "cusp" in (a.holomorphy, b.holomorphy) and \
        {a.holomorphy, b.holomorphy} <= {"cusp", "weak"} else \
        ("weak" if {a.holomorphy, b.holomorphy} <= {"cusp", "weak"} else "weakly_holomorphic")
    return from_series(fs, a.weight + b.weight, a.index + b.index, hol)


def singular_part(psi):
    """All ``(n, r, c)`` with ``4 n m - r^2 <= 0``, ``|r| <= m``, ``n <= m/4``, ``c != 0``."""
    m = psi.index
    need = m // 4 + 1
    if psi.q_precision < need:
        raise PrecisionError(f"singular part of index {m} needs q-precision {need}, "
                             f"have {psi.q_precision}", required=need)
    out = []
    for (n, r), c in psi.items():
        if 4 * n * m - r * r <= 0 and 4 * n <= m and c != 0:
            out.append((n, r, c))
    return out


def apply_V(phi, ell):
    """Index-raising operator: c'(n, r) = sum_{j | (n, r, ell)} j^(k-1) c(n ell / j^2, r / j)."""
    if phi.holomorphy not in ("cusp", "weak"):
        raise ValueError("V_l is applied to holomorphic forms only")
    if ell == 1:
        return phi
    k = phi.weight
    m = phi.index * ell
    # c(n ell, r) needs n ell < q_precision
    prec = (phi.q_precision - 1) // ell + 1
    out = {}
    for n in range(prec):
        for r in range(-m, m + 1):
            if 4 * n * m - r * r < phi.disc_floor:
                continue
            g = gcd(gcd(n, r), ell)
            s = 0
            for j in range(1, g + 1):
                if g % j == 0:
                    s += Fraction(j) ** (k - 1) * phi.coefficient(n * ell // (j * j), r // j)
            if s:
                out[(n, r)] = s
    return JacobiExpansion(k, m, out, prec, phi.holomorphy, phi.disc_floor)


def _matrix(forms, q_precision=None):
    if not forms:
        return []
    f0 = forms[0]
    for f in forms[1:]:
        _same_space(f0, f)
    prec = min(f.q_precision for f in forms) if q_precision is None else q_precision
    floor = min(f.disc_floor for f in forms)
    m = f0.index
    lo = min([n for f in forms for n, _ in f.coeffs] + [0])
    cols = [(n, r) for n in range(lo, prec) for r in range(-m, m + 1)
            if 4 * n * m - r * r >= floor]
    return [[f.coefficient(n, r) for n, r in cols] for f in forms]


def rank(forms, field=None):
    """Rank of the coefficient matrix (rows forms, columns (n, r))."""
    rows = _matrix(forms)
    if not rows or not rows[0]:
        return 0
    return linalg.rank(rows, field)


class JacobiBasis:
    """Linearly independent Jacobi expansions with provenance strings."""

    def __init__(self, elements, provenance=None, check=True):
        self.elements = list(elements)
        self.provenance = list(provenance) if provenance is not None else [""] * len(self.elements)
        if len(self.provenance) != len(self.elements):
            raise ValueError("provenance length mismatch")
        if self.elements:
            f0 = self.elements[0]
            self.weight, self.index = f0.weight, f0.index
            self.q_precision = min(f.q_precision for f in self.elements)
        else:
            self.weight = self.index = None
            self.q_precision = 0
        if check and self.elements and rank(self.elements) != len(self.elements):
            raise ValueError("basis elements are linearly dependent at stored precision")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


# ---------------------------------------------------------------------------
# file formats

def write_basis(basis, path_or_file, weight=None, index=None):
    """Basis file: header ``J k m prec class`` then per element a provenance
    line and ``n r c`` lines."""
    lines = []
    k = basis.weight if basis.elements else weight
    m = basis.index if basis.elements else index
    hol = basis.elements[0].holomorphy if basis.elements else "cusp"
    lines.append(f"J {k} {m} {basis.q_precision} {hol}")
    for f, prov in zip(basis.elements, basis.provenance):
        lines.append(f"# {prov}" if prov else "#")
        for (n, r), c in f.items():
            if n < basis.q_precision:
                lines.append(f"{n} {r} {c}")
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w") as fh:
            fh.write(text)
    return text


def read_basis(path_or_text):
    if "\n" in path_or_text or not os.path.exists(path_or_text):
        text = path_or_text
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "J":
        raise ValueError("not a Jacobi basis file")
    k, m, prec, hol = Fraction(head[1]), int(head[2]), int(head[3]), head[4]
    k = int(k) if k.denominator == 1 else k
    elements, prov = [], []
    cur = None
    for ln in lines[1:]:
        if ln.startswith("#"):
            if cur is not None:
                elements.append(cur)
            cur = {}
            prov.append(ln[1:].strip())
            continue
        n, r, c = ln.split()
        c = Fraction(c)
        cur[(int(n), int(r))] = int(c) if c.denominator == 1 else c
    if cur is not None:
        elements.append(cur)
    forms = [JacobiExpansion(k, m, d, prec, hol) for d in elements]
    return JacobiBasis(forms, prov, check=False)


class DimensionTable:
    """``(weight, index) -> dim`` with a source tag per entry."""

    def __init__(self, entries=None):
        self.entries = dict(entries or {})

    @classmethod
    def load(cls, path):
        entries = {}
        with open(path) as fh:
            for ln in fh:
                ln = ln.split("#", 1)[0].strip()
                if not ln:
                    continue
                k, m, dim, source = ln.split(None, 3)
                entries[(int(k), int(m))] = (int(dim), source.strip())
        return cls(entries)

    def dump(self, path):
        with open(path, "w") as fh:
            for (k, m), (dim, src) in sorted(self.entries.items()):
                fh.write(f"{k} {m} {dim} {src}\n")

    def __contains__(self, key):
        return key in self.entries


def default_table_path(name="jacobi_cusp_dims.txt"):
    base = os.environ.get("PARAMODFORMS_DATA") or os.path.join(os.path.dirname(__file__), "data")
    return os.path.join(base, name)


def dim_lookup(weight, index, table=None):
    if table is None:
        table = DimensionTable.load(default_table_path())
    try:
        return table.entries[(weight, index)][0]
    except KeyError:
        raise TableGap(f"table gap: no dimension for weight {weight}, index {index}") from None
