from math import isqrt

import pytest

from paramodforms.errors import PrecisionError
from paramodforms.jacobi import apply_V, rank
from paramodforms.paramodular import brute_equivalent
from paramodforms.restriction import (RestrictionProblem, build_relations, class_members,
                                      dim_bound, extract_solution_basis, residual)

from conftest import PHI37, jacobi_tb


@pytest.fixture(scope="module")
def toy():
    phi = jacobi_tb(PHI37, 2, 37, 40)
    return [[phi], [apply_V(phi, 2)]]


def test_no_relations_gives_sum_of_dimensions(toy):
    p = RestrictionProblem(37, 2, 1, toy, use_siegel=False, use_fricke=False)
    rep = dim_bound(p)
    assert rep.rank == 0 and rep.bound == sum(p.dims) == 2


@pytest.mark.parametrize("eps,want", [(1, 1), (-1, 0)])
def test_toy_bounds(toy, eps, want):
    for m_max in (1, 2):
        assert dim_bound(RestrictionProblem(37, 2, eps, toy[:m_max])).bound == want


def test_bound_is_monotone_in_m_max(toy):
    for eps in (1, -1):
        b1 = dim_bound(RestrictionProblem(37, 2, eps, toy[:1])).bound
        b2 = dim_bound(RestrictionProblem(37, 2, eps, toy)).bound
        assert b2 <= b1


def test_lift_tuple_satisfies_plus_relations(toy):
    p = RestrictionProblem(37, 2, 1, toy, field="Q")
    assert set(residual(p, [1, 1])) == {0}
    sols = extract_solution_basis(p)
    assert len(sols) == 1
    phi1, phi2 = sols[0]
    assert rank([phi1, toy[0][0].truncate(phi1.q_precision)], "Q") == 1
    assert rank([phi2, toy[1][0].truncate(phi2.q_precision)], "Q") == 1


def test_lift_tuple_violates_minus_relations(toy):
    p = RestrictionProblem(37, 2, -1, toy, field="Q")
    assert any(residual(p, [1, 1]))


def test_finite_field_rank_is_at_most_rational_rank(toy):
    for eps in (1, -1):
        rq = dim_bound(RestrictionProblem(37, 2, eps, toy, field="Q")).rank
        assert dim_bound(RestrictionProblem(37, 2, eps, toy, field=7)).rank <= rq


def test_class_members_match_brute_grouping(toy):
    # oracle: pairwise brute-force equivalence partitions the same members
    p = RestrictionProblem(37, 2, 1, toy, det_cap=400)
    for D in range(3, 400, 4):
        groups = class_members(p, D)
        members = [t for g in groups.values() for t, _, _ in g]
        label = {t: key for key, g in groups.items() for t, _, _ in g}
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                same = brute_equivalent(a, b, 37) is not None
                assert same == (label[a] == label[b])


def test_fricke_relation_count_matches_double_loop(toy):
    p = RestrictionProblem(37, 2, 1, toy, use_siegel=False)
    rels = build_relations(p)
    want = set()
    for n in (1, 2):
        for m in range(n, 3):
            for r in range(-isqrt(4 * n * m * 37), isqrt(4 * n * m * 37) + 1):
                D = 4 * n * m * 37 - r * r
                if not 0 < D <= p.det_cap:
                    continue
                # one unknown per index: the row is c(n, r; phi_m) - c(m, -r; phi_n)
                row = [0, 0]
                row[m - 1] += toy[m - 1][0].coefficient(n, r)
                row[n - 1] -= toy[n - 1][0].coefficient(m, -r)
                if any(row):
                    want.add((n, r, m))
    assert {tag[1] for tag in rels.tags} == want
    assert len(rels) == len(want)


def test_precision_error_names_index(toy):
    p = RestrictionProblem(37, 2, 1, toy, det_cap=10 ** 5)
    with pytest.raises(PrecisionError, match=r"\(n, r, m\)"):
        build_relations(p)


def test_report_line(toy):
    line = dim_bound(RestrictionProblem(37, 2, 1, toy)).line().split()
    assert line[:4] == ["37", "2", "+", "2"] and line[-1] == "1"
