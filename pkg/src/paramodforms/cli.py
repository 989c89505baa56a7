"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or data error,
3 precision or cap shortfall (the requirement is printed).
"""
import argparse
import logging
import os
import platform
import sys
from dataclasses import dataclass

from . import __version__, certificates, kernels
from .errors import PrecisionError, TableGap, VerificationError

log = logging.getLogger("paramodforms")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    level: int = None
    weight: int = None
    det_cap: int = None
    precision: int = None
    field: object = None
    data_dir: str = None
    jobs: int = 1

    def __post_init__(self):
        for name in ("level", "weight", "det_cap", "precision", "jobs"):
            v = getattr(self, name)
            if v is not None and v <= 0 and not (name == "weight" and v == 0):
                raise ValueError(f"{name} must be positive")


def _data_path(cfg, name):
    base = cfg.data_dir or os.environ.get("PARAMODFORMS_DATA") or \
        os.path.join(os.path.dirname(__file__), "data")
    return os.path.join(base, name)


def s4_dimension(N, cfg=None):
    path = _data_path(cfg or RunConfig(), "paramodular_s4_dims.txt")
    with open(path) as fh:
        for ln in fh:
            ln = ln.split("#", 1)[0].split()
            if ln and int(ln[0]) == N:
                return int(ln[1])
    raise TableGap(f"table gap: no dim S_4(K({N})) in {path}")


def jacobi_dimension(k, m, cfg=None):
    from .jacobi import DimensionTable, dim_lookup
    table = DimensionTable.load(_data_path(cfg or RunConfig(), "jacobi_cusp_dims.txt"))
    return dim_lookup(k, m, table)


def _field(args):
    return getattr(args, "mod", None) or None


def _emit(text, out):
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_tb(args, cfg):
    from .jacobi import JacobiBasis, from_series, write_basis
    from .theta import ThetaBlockSpec, tb_expand, tb_index, tb_q_order, tb_weight
    spec = ThetaBlockSpec.parse(args.spec)
    k, m, qo = tb_weight(spec), tb_index(spec), tb_q_order(spec)
    print(f"# {spec.notation()} weight {k} index {m} q-order {qo}", file=sys.stderr)
    if qo.denominator != 1 or m.denominator != 1:
        raise ValueError("theta block has a nontrivial character; no Jacobi form output")
    fs = tb_expand(spec, args.precision)
    f = from_series(fs, int(k) if k.denominator == 1 else k, int(m), args.holomorphy)
    _emit(write_basis(JacobiBasis([f], [spec.notation()]), _Null()), args.out)
    return EXIT_OK


class _Null:
    def write(self, text):
        pass


def cmd_jacobi(args, cfg):
    if args.action == "dim":
        print(jacobi_dimension(args.weight, args.index, cfg))
        return EXIT_OK
    from .jacobi import read_basis, rank
    b = read_basis(args.file)
    print(f"weight {b.weight} index {b.index} q_precision {b.q_precision} "
          f"elements {len(b)} rank {rank(b.elements, _field(args))}")
    return EXIT_OK


def cmd_grit(args, cfg):
    from .jacobi import read_basis
    from .paramodular import gritsenko_lift, write_siegel
    b = read_basis(args.infile)
    f = gritsenko_lift(b[args.element], args.detcap)
    log.info("lift: weight %s level %s cap %s classes %d", f.weight, f.level, f.det_cap, len(f.coeffs))
    _emit(write_siegel(f, _Null()), args.out)
    return EXIT_OK


def cmd_bp(args, cfg):
    from .borcherds import (expand_product, expand_series, from_theta_quotient,
                            make_certificate, singular_precision)
    w = from_theta_quotient(args.thetas, args.precision)
    if args.level is not None and args.level != w.N:
        raise ValueError(f"theta quotient {args.thetas} has index {w.N}, not {args.level}")
    log.info("psi: %s index %d q-precision %d", args.thetas, w.N, w.resolved.q_precision)
    if args.action == "certify":
        cert = make_certificate(w)
        k, A, B, C, D0, eps = cert.invariants
        print(f"# k={k} A={A} B={B} C={C} D0={D0} eps={eps:+d} humbert_rows={len(cert.humbert)}",
              file=sys.stderr)
        _emit(cert.dumps(), args.out)
        return EXIT_OK
    if args.precision is None:
        need = max(singular_precision(w.N), args.q_precision + args.fj_terms * 8)
        w = from_theta_quotient(args.thetas, need)
    fn = expand_product if args.method == "product" else expand_series
    e = fn(w.resolved, fj_terms=args.fj_terms, q_precision=args.q_precision)
    log.info("ledger: %s", e.ledger.line())
    lines = [f"BL {e.weight} {e.level} {e.A} {e.B} {e.C} {e.method}"]
    for M in sorted(e.fj):
        for (n, r), c in sorted(e.fj[M].items()):
            lines.append(f"{M} {n} {r} {c}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_jr(args, cfg):
    from .jacobi import read_basis
    from .restriction import RestrictionProblem, dim_bound, extract_solution_basis
    bases = [list(read_basis(p)) for p in args.bases]
    field = "Q" if args.rational else (args.mod or None)
    if field is None:
        from .linalg import DEFAULT_PRIME
        field = DEFAULT_PRIME
    eps = 1 if args.eps in ("+", "+1", "1") else -1
    p = RestrictionProblem(args.level, args.weight, eps, bases, args.detcap, field)
    rep = dim_bound(p)
    log.info("jr: det_cap %d", p.det_cap)
    print(rep.line())
    if args.cert:
        _emit(certificates.jr_certificate(rep).dumps(), args.cert)
    if args.solutions:
        from .jacobi import JacobiBasis, write_basis
        sols = extract_solution_basis(p)
        with open(args.solutions, "w") as fh:
            for m in range(p.m_max):
                write_basis(JacobiBasis([s[m] for s in sols], check=False), fh,
                            args.weight, (m + 1) * args.level)
    return EXIT_OK


def cmd_h4(args, cfg):
    from .paramodular import read_siegel
    from .weight4 import SpannedSpace, report_from_numbers, run_test
    N = args.level
    dim_S4 = args.dim_s4 if args.dim_s4 is not None else s4_dimension(N, cfg)
    dim_J = args.dim_j if args.dim_j is not None else jacobi_dimension(2, N, cfg)
    if args.numbers:
        dp, dm, rk = args.numbers
        rep = report_from_numbers(args.test, N, args.d, dim_S4, dim_J, dp, dm, rk,
                                  allow_any_level=args.any_level)
    else:
        Sp = SpannedSpace(1, [read_siegel(f) for f in args.plus])
        Sm = SpannedSpace(-1, [read_siegel(f) for f in args.minus])
        rep = run_test(args.test, Sp, Sm, args.d, {"N": N, "dim_S4": dim_S4, "dim_J": dim_J},
                       field=_field(args), allow_any_level=args.any_level)
    print(rep.line())
    print(f"# {rep.verdict.statement}", file=sys.stderr)
    if rep.nonstandard_d:
        log.warning("d = %d is outside the standard range 1..6", args.d)
    if args.cert:
        _emit(certificates.h4_certificate(rep).dumps(), args.cert)
    return EXIT_OK


def cmd_trace_down(args, cfg):
    from .hecke import trace_down
    from .paramodular import read_siegel, write_siegel
    f = read_siegel(args.infile)
    if f.weight != args.weight:
        raise ValueError(f"input has weight {f.weight}, not {args.weight}")
    g = trace_down(f, args.level, args.q, args.detcap)
    _emit(write_siegel(g, _Null()), args.out)
    return EXIT_OK


def cmd_hecke(args, cfg):
    from fractions import Fraction
    from .hecke import hecke_T
    from .paramodular import read_siegel, write_siegel
    f = read_siegel(args.infile)
    cap = args.detcap or f.det_cap // (args.n * args.n)
    g = hecke_T(f, args.n, cap)
    base = f.truncate(cap)
    ratios = {Fraction(g.coeffs.get(k, 0), v) for k, v in base.coeffs.items() if v}
    if set(g.coeffs) <= set(base.coeffs) and len(ratios) == 1:
        print(f"# eigenvalue {ratios.pop()}", file=sys.stderr)
    _emit(write_siegel(g, _Null()), args.out)
    return EXIT_OK


def cmd_euler(args, cfg):
    from .hecke import format_poly, spin_euler_factor
    print(format_poly(spin_euler_factor(args.lp, args.lp2, args.p, args.weight)))
    if args.cert:
        _emit(certificates.euler_certificate(args.p, args.lp, args.lp2, args.weight).dumps(), args.cert)
    return EXIT_OK


def cmd_verify(args, cfg):
    with open(args.file) as fh:
        text = fh.read()
    cert = certificates.load(text)
    certificates.verify(cert)
    print(f"OK {cert.kind}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser():
    p = argparse.ArgumentParser(prog="paramodforms", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--data-dir", help="directory with dimension tables")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="parallelism degree (recorded; computations run serially)")
    p.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tb", help="expand a theta block")
    s.add_argument("spec", help='e.g. "TB(2; 1,1,1,2,2,2,3,3,4,5)"')
    s.add_argument("--precision", type=int, default=10)
    s.add_argument("--holomorphy", default="cusp", choices=("cusp", "weak", "weakly_holomorphic"))
    s.add_argument("--out")
    s.set_defaults(func=cmd_tb)

    s = sub.add_parser("jacobi", help="dimension lookup or basis-file summary")
    js = s.add_subparsers(dest="action", required=True)
    d = js.add_parser("dim")
    d.add_argument("--weight", type=int, required=True)
    d.add_argument("--index", type=int, required=True)
    i = js.add_parser("info")
    i.add_argument("file")
    i.add_argument("--mod", type=int)
    s.set_defaults(func=cmd_jacobi)

    s = sub.add_parser("grit", help="Gritsenko lift of a basis element")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--element", type=int, default=0)
    s.add_argument("--detcap", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_grit)

    s = sub.add_parser("bp", help="Borcherds products from theta quotients")
    s.add_argument("action", choices=("certify", "expand"))
    s.add_argument("--thetas", required=True, help="theta quotient, e.g. 8/1,18/6,14/7")
    s.add_argument("--level", type=int)
    s.add_argument("--precision", type=int, help="q-precision of psi")
    s.add_argument("--fj-terms", type=int, default=3)
    s.add_argument("--q-precision", type=int, default=10)
    s.add_argument("--method", choices=("product", "series"), default="product")
    s.add_argument("--out")
    s.set_defaults(func=cmd_bp)

    s = sub.add_parser("jr", help="Jacobi restriction dimension bound")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--weight", type=int, default=2)
    s.add_argument("--eps", default="+", choices=("+", "-", "+1", "-1", "1"))
    s.add_argument("--bases", nargs="+", required=True, help="basis files for indices N, 2N, ...")
    s.add_argument("--detcap", type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--mod", type=int, help="rank over F_q")
    g.add_argument("--rational", action="store_true", help="rank over Q")
    s.add_argument("--solutions", help="write solution tuples (requires --rational)")
    s.add_argument("--cert")
    s.set_defaults(func=cmd_jr)

    s = sub.add_parser("h4", help="weight-4 certification tests")
    s.add_argument("--test", required=True, choices=("H4(N,d,d)+", "H4(N,d,1)", "H4(N,d,1)+", "H4(N,d,1)-"))
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--dim-s4", type=int)
    s.add_argument("--dim-j", type=int)
    s.add_argument("--numbers", type=int, nargs=3, metavar=("DIMPLUS", "DIMMINUS", "RANK"))
    s.add_argument("--plus", nargs="*", default=[])
    s.add_argument("--minus", nargs="*", default=[])
    s.add_argument("--mod", type=int)
    s.add_argument("--any-level", action="store_true",
                   help="allow levels outside 62..299 (toy checks only)")
    s.add_argument("--cert")
    s.set_defaults(func=cmd_h4)

    s = sub.add_parser("trace-down", help="trace from level Nq to level N")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--out")
    s.add_argument("--detcap", type=int, required=True)
    s.set_defaults(func=cmd_trace_down)

    s = sub.add_parser("hecke", help="Hecke operator T(n), n prime to the level")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--detcap", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_hecke)

    s = sub.add_parser("euler", help="spin Euler factor from Hecke eigenvalues")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--lp", type=int, required=True)
    s.add_argument("--lp2", type=int, required=True)
    s.add_argument("--weight", type=int, default=2)
    s.add_argument("--cert")
    s.set_defaults(func=cmd_euler)

    s = sub.add_parser("verify", help="re-verify a certificate")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = RunConfig(level=getattr(args, "level", None), weight=getattr(args, "weight", None),
                        det_cap=getattr(args, "detcap", None), field=getattr(args, "mod", None),
                        data_dir=args.data_dir, jobs=args.jobs)
        log.info("paramodforms %s python %s backend %s", __version__, platform.python_version(),
                 kernels.backend())
        log.info("config: %s", cfg)
        return args.func(args, cfg)
    except PrecisionError as exc:
        print(f"precision shortfall: {exc}", file=sys.stderr)
        if exc.required is not None:
            print(f"required: {exc.required}", file=sys.stderr)
        return EXIT_PRECISION
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, TableGap, OSError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
