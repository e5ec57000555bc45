from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kchain.chain_graphs import ChainSpec, build_chain, build_subchain, end_degree_sum, enumerate_family
from kchain.closed_forms import (
    AS_PRINTED,
    CORRECTED,
    InconsistentParametersError,
    check_r_d,
    f1,
    f2,
    g1,
    g2,
    gutman_gn,
    kf_gn,
    kf_grn,
    kf_over_w,
    kfstar_gn,
    kfstar_over_gut,
    per_vertex_rows,
    ratio_report,
    tau_gn,
    tau_grn,
    wiener_gn,
    wiener_grn,
)
from kchain.exact_linalg import display2
from kchain.invariant_oracles import (
    full_report,
    gutman,
    kirchhoff,
    mult_deg_kirchhoff,
    spanning_trees,
    vertex_distance_sums,
    vertex_weighted_distance_sums,
    wiener,
)

F = Fraction


def test_base_examples():
    assert kf_gn(1) == 3
    assert kf_gn(50) == 22984
    assert kfstar_gn(2) == F(298, 3)
    assert kfstar_gn(40) == 284428
    assert tau_gn(1) == 16
    assert tau_gn(10) == 82556485632
    assert gutman_gn(3) == 636


def test_wiener_variants():
    assert wiener_gn(2) == 19
    assert wiener_gn(2, CORRECTED) == 19
    assert wiener_gn(2, AS_PRINTED) == F(59, 3)
    assert wiener_gn(1, AS_PRINTED) == wiener_gn(1) == 6


@pytest.mark.parametrize("bad", [0, -3, 1.5, True])
def test_bad_n(bad):
    with pytest.raises(ValueError):
        kf_gn(bad)


@pytest.mark.parametrize("n", range(1, 13))
def test_base_forms_match_oracle(n):
    g = build_chain(n)
    assert kf_gn(n) == kirchhoff(g)
    assert kfstar_gn(n) == mult_deg_kirchhoff(g)
    assert tau_gn(n) == spanning_trees(g)
    assert wiener_gn(n) == wiener(g)
    assert gutman_gn(n) == gutman(g)


@pytest.mark.parametrize("n", range(2, 11))
def test_printed_wiener_wrong_beyond_n1(n):
    assert wiener_gn(n, AS_PRINTED) - wiener_gn(n) == F(n * n - n, 3) != 0


def test_vertex_rows_examples():
    assert f1(2) == 7
    assert g1(2) == 75
    assert f2(2, 2) == 5
    assert f2(2, 2, AS_PRINTED) == 3
    assert g2(2, 2) == 85
    assert per_vertex_rows(2).f2 is None
    rows = per_vertex_rows(2, 2)
    assert (rows.f1, rows.g1, rows.f2, rows.g2) == (7, 75, 5, 85)


@pytest.mark.parametrize("n, i", [(1, 2), (3, 1), (3, 4)])
def test_vertex_rows_index_range(n, i):
    with pytest.raises(ValueError):
        per_vertex_rows(n, i)


@pytest.mark.parametrize("n", range(1, 11))
def test_vertex_rows_match_bfs(n):
    g = build_chain(n)
    f = vertex_distance_sums(g)
    gw = vertex_weighted_distance_sums(g)
    # corners are top 1 (vertex 0) and its images under the symmetries
    for v in (0, n, n + 1, 2 * n + 1):
        assert f[v] == f1(n)
        assert gw[v] == g1(n)
    for i in range(2, n + 1):
        rows = per_vertex_rows(n, i)
        assert f[i - 1] == f[n + i] == rows.f2
        assert gw[i - 1] == gw[n + i] == rows.g2


@pytest.mark.parametrize(
    "spec, kf, tau",
    [(ChainSpec(1, {1}), 4, 8), (ChainSpec(1, {1, 2}), 5, 4), (ChainSpec(2, {2}), F(17, 2), 128)],
)
def test_subchain_examples(spec, kf, tau):
    d = end_degree_sum(spec)
    assert kf_grn(spec.n, spec.r, d) == kf
    assert tau_grn(spec.n, spec.r, d) == tau


@pytest.mark.parametrize("n", range(1, 9))
def test_subchain_forms_match_oracle(n):
    for spec in enumerate_family(n):
        d = end_degree_sum(spec)
        r = full_report(spec)
        assert kf_grn(n, spec.r, d) == r.kirchhoff
        assert tau_grn(n, spec.r, d) == r.spanning_trees
        assert wiener_grn(n, spec.r) == r.wiener


@pytest.mark.parametrize("n, r, d", [(3, 0, 5), (3, 4, 6), (3, 1, 4), (3, 5, 4), (3, 2, 7), (1, 0, 4)])
def test_inconsistent_parameters(n, r, d):
    with pytest.raises(InconsistentParametersError):
        check_r_d(n, r, d)
    with pytest.raises(InconsistentParametersError):
        kf_grn(n, r, d)
    with pytest.raises(InconsistentParametersError):
        tau_grn(n, r, d)


@pytest.mark.parametrize("n", range(1, 8))
def test_consistent_parameters_are_realized(n):
    realized = {(s.r, end_degree_sum(s)) for s in enumerate_family(n)}
    accepted = set()
    for r in range(0, n + 2):
        for d in (4, 5, 6):
            try:
                check_r_d(n, r, d)
            except InconsistentParametersError:
                continue
            accepted.add((r, d))
    assert accepted == realized


def test_wiener_grn_range():
    assert wiener_grn(2, 3) == 22
    with pytest.raises(InconsistentParametersError):
        wiener_grn(2, 4)


@given(st.integers(1, 1000))
def test_integrality(n):
    assert (6 * kf_gn(n)).denominator == 1
    assert (6 * kfstar_gn(n)).denominator == 1
    assert (3 * wiener_gn(n)).denominator == 1
    assert isinstance(gutman_gn(n), int)
    assert tau_gn(n) == 2 ** (2 * n + 2) * 3 ** (n - 1)


@given(st.integers(1, 1000))
def test_kfstar_bounds(n):
    assert 4 * kf_gn(n) <= kfstar_gn(n) <= 25 * kf_gn(n)


def test_ratio_examples():
    kf_w, kfs_gut = ratio_report(100)
    assert kf_w == pytest.approx(0.25496251, abs=1e-8)
    assert kfs_gut == pytest.approx(0.25498177, abs=1e-8)


def test_ratio_with_printed_wiener():
    # where a four-decimal value of 0.25374 at n = 100 comes from
    assert kf_over_w(100, AS_PRINTED) == F(175134, 690201)
    assert abs(float(kf_over_w(100, AS_PRINTED)) - 0.25374) < 5e-5


def test_ratios_converge_monotonically():
    kfw = [kf_over_w(n) for n in range(20, 400)]
    kfg = [kfstar_over_gut(n) for n in range(20, 400)]
    for seq in (kfw, kfg):
        assert all(a > b for a, b in zip(seq, seq[1:]))
        assert all(b > F(1, 4) for b in seq)
    assert abs(float(kf_over_w(10**6)) - 0.25) < 1e-5
    assert abs(float(kfstar_over_gut(10**6)) - 0.25) < 1e-5


def test_kf_g48_from_oracle():
    # resistance sum on the 98-vertex graph, independent of the closed form
    value = kirchhoff(build_chain(48))
    assert value == kf_gn(48) == F(122500, 6)
    assert display2(value) == "20416.67"
