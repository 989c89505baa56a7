import pytest

from paramodforms import certificates
from paramodforms.cli import main
from paramodforms.errors import VerificationError
from paramodforms.weight4 import report_from_numbers


def run(capsys, *argv):
    rc = main(["-q", *argv])
    out, err = capsys.readouterr()
    return rc, out, err


def test_euler(capsys, tmp_path):
    cert = tmp_path / "e.cert"
    rc, out, _ = run(capsys, "euler", "--p", "2", "--lp", "-2", "--lp2", "0", "--cert", str(cert))
    assert rc == 0 and out.strip() == "1+2T+3T^2+4T^3+4T^4"
    assert run(capsys, "verify", str(cert))[0] == 0
    cert.write_text(cert.read_text().replace("4T^4", "5T^4"))
    assert run(capsys, "verify", str(cert))[0] == 1


def test_bp_certify_and_verify(capsys, tmp_path):
    cert = tmp_path / "bp.cert"
    rc, _, err = run(capsys, "bp", "certify", "--thetas", "8/1,18/6,14/7", "--level", "249",
                     "--out", str(cert))
    assert rc == 0 and "A=2 B=63 C=498 D0=0 eps=+1" in err
    rc, out, _ = run(capsys, "verify", str(cert))
    assert rc == 0 and out.strip() == "OK BP+"
    cert.write_text(cert.read_text().replace("\n21 207 0\n", "\n21 207 1\n"))
    assert run(capsys, "verify", str(cert))[0] == 1


def test_bp_level_mismatch(capsys):
    assert run(capsys, "bp", "certify", "--thetas", "8/1,18/6,14/7", "--level", "250")[0] == 2


def test_bp_expand_methods_agree(capsys):
    base = ["bp", "expand", "--thetas", "8/1,18/6,14/7", "--fj-terms", "2", "--q-precision", "4"]
    rc1, a, _ = run(capsys, *base)
    rc2, b, _ = run(capsys, *base, "--method", "series")
    assert rc1 == rc2 == 0
    assert a.splitlines()[1:] == b.splitlines()[1:]
    assert a.splitlines()[0].startswith("BL 2 249 2 63 498")


def test_tb_grit_hecke_pipeline(capsys, tmp_path):
    basis, lift = tmp_path / "phi.txt", tmp_path / "lift.txt"
    rc, _, _ = run(capsys, "tb", "TB(2; 1,1,1,2,2,2,3,3,4,5)", "--precision", "12",
                   "--out", str(basis))
    assert rc == 0
    rc, out, _ = run(capsys, "jacobi", "info", str(basis))
    assert rc == 0 and "index 37" in out and "rank 1" in out
    assert run(capsys, "grit", "--in", str(basis), "--detcap", "80", "--out", str(lift))[0] == 0
    rc, _, err = run(capsys, "hecke", "--n", "2", "--in", str(lift), "--detcap", "20")
    assert rc == 0 and "eigenvalue 1" in err


def test_precision_shortfall_exit_code(capsys, tmp_path):
    basis = tmp_path / "phi.txt"
    run(capsys, "tb", "TB(2; 1,1,1,2,2,2,3,3,4,5)", "--precision", "4", "--out", str(basis))
    rc, _, err = run(capsys, "grit", "--in", str(basis), "--detcap", "2000")
    assert rc == 3 and "required:" in err


def test_jr_and_certificate(capsys, tmp_path):
    basis, cert = tmp_path / "phi.txt", tmp_path / "jr.cert"
    run(capsys, "tb", "TB(2; 1,1,1,2,2,2,3,3,4,5)", "--precision", "20", "--out", str(basis))
    rc, out, _ = run(capsys, "jr", "--level", "37", "--bases", str(basis), "--rational",
                     "--cert", str(cert))
    assert rc == 0 and out.split()[-1] == "1"
    assert run(capsys, "verify", str(cert))[0] == 0


def test_h4_numbers_and_level_refusal(capsys, tmp_path):
    cert = tmp_path / "h4.cert"
    rc, out, err = run(capsys, "h4", "--test", "H4(N,d,1)-", "--level", "286", "--d", "1",
                       "--numbers", "161", "27", "27", "--cert", str(cert))
    assert rc == 0 and out.split()[-1] == "S2-=0"
    assert run(capsys, "verify", str(cert))[0] == 0
    rc, _, _ = run(capsys, "h4", "--test", "H4(N,d,1)", "--level", "37", "--d", "1",
                   "--dim-s4", "1", "--dim-j", "1", "--numbers", "1", "0", "1")
    assert rc == 2


def test_table_gap_and_usage_errors(capsys):
    assert run(capsys, "jacobi", "dim", "--weight", "2", "--index", "1000")[0] == 2
    assert run(capsys, "jacobi", "dim", "--weight", "4", "--index", "286")[1].strip() == "48"
    assert run(capsys, "euler", "--p", "2")[0] == 2
    assert run(capsys, "hecke", "--n", "2", "--in", "/nonexistent")[0] == 2


def test_certificate_loads_reject_garbage():
    with pytest.raises(ValueError):
        certificates.load("hello\nEND\n")


def test_h4_certificate_tamper():
    rep = report_from_numbers("H4(N,d,1)+", 286, 3, 189, 3, 161, 27, 159)
    text = certificates.h4_certificate(rep).dumps()
    assert certificates.verify(certificates.load(text))
    bad = text.replace(" 159 S2+=Grit", " 150 S2+=Grit")
    with pytest.raises(VerificationError):
        certificates.verify(certificates.load(bad))


def test_jr_certificate_tamper():
    cert = certificates.SimpleCertificate("JR", ["JR 37 2 + 1 100 Q 1 0 0"])
    with pytest.raises(VerificationError):
        certificates.verify(cert)
