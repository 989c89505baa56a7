import io
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from paramodforms import linalg
from paramodforms.errors import PrecisionError, TableGap
from paramodforms.jacobi import (DimensionTable, JacobiBasis, apply_V, dim_lookup, rank,
                                 read_basis, reduce_r, singular_part, write_basis)
from paramodforms.paramodular import fourier_jacobi

from conftest import jacobi_tb


@settings(max_examples=100)
@given(st.integers(-50, 50), st.integers(-500, 500), st.integers(1, 40))
def test_reduce_r_preserves_discriminant(n, r, m):
    n2, r2, lam = reduce_r(n, r, m)
    assert -m <= r2 < m
    assert 4 * n2 * m - r2 * r2 == 4 * n * m - r * r
    assert r2 == r - 2 * lam * m


def test_phi37_depends_on_class_only(phi37):
    # c(n, r) depends on D = 4 n m - r^2 and r mod 2m, and is even in r
    m = 37
    seen = {}
    for n in range(phi37.q_precision):
        for r in range(-m, m + 1):
            D = 4 * n * m - r * r
            key = (D, abs(r) % (2 * m))
            c = phi37.coefficient(n, r)
            assert seen.setdefault(key, c) == c
            assert c == phi37.coefficient(n, -r)


def test_phi37_first_coefficients(phi37):
    # q-order 1: c(1, r) nonzero only for r^2 < 148
    assert all(phi37.coefficient(0, r) == 0 for r in range(-37, 38))
    assert phi37.coefficient(1, 0) != 0


def test_precision_error_names_requirement(phi37):
    with pytest.raises(PrecisionError) as exc:
        phi37.coefficient(phi37.q_precision + 2, 0)
    assert exc.value.required == phi37.q_precision + 3


def test_V2_is_second_fourier_jacobi_coefficient(phi37, lift37):
    v2 = apply_V(phi37, 2)
    fj = fourier_jacobi(lift37, 2)
    assert fj.q_precision == 2 and fj.coeffs
    assert fj == v2.truncate(2)


def test_lift_first_fourier_jacobi_coefficient(phi37, lift37):
    prec = lift37.det_cap // (4 * 37) + 1
    assert fourier_jacobi(lift37, 1) == phi37.truncate(prec)


def test_singular_part_of_cusp_form_is_empty(phi37):
    assert singular_part(phi37) == []


def test_basis_file_round_trip(phi37):
    b = JacobiBasis([phi37.truncate(6), phi37.truncate(6).scale(3)], check=False)
    buf = io.StringIO()
    write_basis(b, buf, 2, 37)
    back = list(read_basis(buf.getvalue()))
    assert back[0] == b[0] and back[1] == b[1]


def test_basis_rejects_dependent_elements(phi37):
    with pytest.raises(ValueError):
        JacobiBasis([phi37, phi37.scale(2)])


def test_rank_of_theta_block_lifts_at_67():
    a = jacobi_tb("TB(2; 8,5,4,3,3,2,2,1,1,1)", 2, 67, 20)
    b = jacobi_tb("TB(2; 7,5,4,4,3,3,2,2,1,1)", 2, 67, 20)
    assert rank([a, b]) == 2
    assert rank([a, b, a + b]) == 2


def test_dimension_table_lookups(tmp_path):
    assert dim_lookup(2, 37) == 1
    assert dim_lookup(4, 286) == 48
    with pytest.raises(TableGap):
        dim_lookup(2, 1000)
    p = tmp_path / "dims.txt"
    p.write_text("2 11 0 test\n")
    assert DimensionTable.load(str(p)).entries[(2, 11)][0] == 0


mats = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(mats)
def test_rank_q_matches_sympy(rows):
    assert linalg.rank(rows, "Q") == sympy.Matrix(rows).rank()
    assert linalg.rank(rows) <= linalg.rank(rows, "Q")


@settings(max_examples=60, deadline=None)
@given(mats)
def test_nullspace_is_kernel(rows):
    ncols = len(rows[0])
    null = linalg.nullspace_q(rows, ncols)
    assert len(null) == ncols - sympy.Matrix(rows).rank()
    for v in null:
        for row in rows:
            assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0
