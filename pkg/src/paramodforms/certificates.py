"""Line-oriented certificates for H4 tests, Jacobi restriction reports and
spin Euler factors, plus dispatch to the Borcherds product format.

Each non-BP certificate is::

    CERT <kind>
    <payload lines>
    END
"""
from dataclasses import dataclass

from .borcherds import BPCertificate, verify_certificate
from .errors import VerificationError
from .hecke import format_poly, spin_euler_factor
from .weight4 import TESTS, evaluate_test

KINDS = ("BP+", "BP-", "H4", "JR", "EULER")


@dataclass
class SimpleCertificate:
    kind: str
    payload: list

    def dumps(self):
        return "\n".join([f"CERT {self.kind}"] + self.payload + ["END"]) + "\n"

    @classmethod
    def loads(cls, text):
        lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if len(head) != 2 or head[0] != "CERT" or head[1] not in ("H4", "JR", "EULER"):
            raise ValueError("not a certificate")
        if lines[-1] != "END":
            raise ValueError("certificate is missing END")
        return cls(head[1], lines[1:-1])


def h4_certificate(report):
    return SimpleCertificate("H4", [f"TEST {report.name}", report.line()])


def jr_certificate(report):
    return SimpleCertificate("JR", ["JR " + report.line()])


def euler_certificate(p, lp, lp2, k=2):
    poly = format_poly(spin_euler_factor(lp, lp2, p, k))
    return SimpleCertificate("EULER", [f"EULER {p} {lp} {lp2} {k} {poly}"])


def _verify_h4(cert):
    name = cert.payload[0].split(None, 1)[1]
    if name not in TESTS:
        raise VerificationError(f"unknown test {name}")
    tok = cert.payload[1].split()
    if tok[0] != "H4" or len(tok) != 11:
        raise VerificationError("malformed H4 line")
    N, d, delta = int(tok[1]), int(tok[2]), int(tok[3])
    dims = [int(x) for x in tok[5:10]]
    _, verdict = evaluate_test(name, N, d, *dims)
    if verdict.code != tok[10]:
        raise VerificationError(f"verdict {tok[10]} but the recorded numbers give {verdict.code}")
    want_delta = d if name == "H4(N,d,d)+" else 1
    if delta != want_delta:
        raise VerificationError("delta does not match the test")


def _verify_jr(cert):
    tok = cert.payload[0].split()
    if tok[0] != "JR" or len(tok) != 10:
        raise VerificationError("malformed JR line")
    dim_bases, rank, bound = int(tok[7]), int(tok[8]), int(tok[9])
    if not 0 <= rank <= dim_bases or bound != dim_bases - rank:
        raise VerificationError("bound is not dim_bases - rank")
    if tok[3] not in "+-":
        raise VerificationError("sign must be + or -")


def _verify_euler(cert):
    tok = cert.payload[0].split()
    if tok[0] != "EULER" or len(tok) != 6:
        raise VerificationError("malformed EULER line")
    p, lp, lp2, k = (int(x) for x in tok[1:5])
    want = format_poly(spin_euler_factor(lp, lp2, p, k))
    if want != tok[5]:
        raise VerificationError(f"factor {tok[5]} but the eigenvalues give {want}")


def load(text):
    if text.startswith("BPCERT"):
        return BPCertificate.loads(text)
    return SimpleCertificate.loads(text)


def verify(cert):
    """Raise VerificationError unless the certificate checks out."""
    if isinstance(cert, BPCertificate):
        return verify_certificate(cert)
    {"H4": _verify_h4, "JR": _verify_jr, "EULER": _verify_euler}[cert.kind](cert)
    return True
