from collections import Counter
from math import comb

import pytest
from hypothesis import given, strategies as st

from kchain.chain_graphs import (
    ChainSpec,
    ChainSpecError,
    Graph,
    build_chain,
    build_subchain,
    end_degree_sum,
    enumerate_family,
    enumerate_subchains,
    laplacian,
    laplacian_blocks,
)


@st.composite
def chain_specs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    deleted = draw(st.sets(st.integers(1, n + 1)))
    return ChainSpec(n, deleted)


def is_complete(g: Graph) -> bool:
    k = g.num_vertices
    return g.num_edges == k * (k - 1) // 2


def test_g1_is_k4():
    g = build_chain(1)
    assert g.num_vertices == 4
    assert g.num_edges == 6
    assert is_complete(g)


def test_g2_counts_and_degrees():
    g = build_chain(2)
    assert (g.num_vertices, g.num_edges) == (6, 11)
    assert sorted(g.degrees()) == [3, 3, 3, 3, 5, 5]


def test_g3_counts():
    g = build_chain(3)
    assert (g.num_vertices, g.num_edges) == (8, 16)


def test_n_zero_rejected():
    with pytest.raises(ChainSpecError):
        build_chain(0)


def test_subchain_k4():
    assert build_subchain(ChainSpec(1)) == build_chain(1)


def test_subchain_four_cycle():
    # top 1,2 -> 0,1 ; bottom 1',2' -> 2,3
    g = build_subchain(ChainSpec(1, {1, 2}))
    assert set(g.edges) == {(0, 1), (2, 3), (0, 3), (1, 2)}
    assert g.degrees() == [2, 2, 2, 2]


def test_subchain_middle_deleted():
    g = build_subchain(ChainSpec(2, {2}))
    assert g.num_edges == 10
    deg = g.degrees()
    assert deg[1] == 4 and deg[4] == 4


@pytest.mark.parametrize("deleted", [[0], [3], [1, 1]])
def test_bad_deletion_sets(deleted):
    with pytest.raises(ChainSpecError):
        ChainSpec(1, deleted)


def test_spec_is_set_like():
    assert ChainSpec(3, [3, 1]) == ChainSpec(3, (1, 3))
    assert ChainSpec(3, [3, 1]).deleted == (1, 3)
    assert ChainSpec.from_dict({"n": 3, "deleted": [3, 1]}).to_dict() == {"n": 3, "deleted": [1, 3]}


@pytest.mark.parametrize(
    "deleted, expected",
    [((), 6), ((1,), 5), ((1, 6), 4), ((6,), 5), ((3, 4), 6)],
)
def test_end_degree_sum(deleted, expected):
    spec = ChainSpec(5, deleted)
    assert end_degree_sum(spec) == expected
    deg = build_subchain(spec).degrees()
    assert deg[0] + deg[5] == expected


@pytest.mark.parametrize("n, r, count", [(1, 1, 2), (3, 2, 6), (2, 0, 1)])
def test_enumerate_counts(n, r, count):
    specs = list(enumerate_subchains(n, r))
    assert len(specs) == count == comb(n + 1, r)


def test_enumerate_is_lexicographic():
    assert [s.deleted for s in enumerate_subchains(1, 1)] == [(1,), (2,)]
    assert [s.deleted for s in enumerate_subchains(2, 2)] == [(1, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("r", [-1, 3])
def test_enumerate_rejects_r(r):
    with pytest.raises(ChainSpecError):
        list(enumerate_subchains(1, r))


def test_laplacian_k4():
    lap = laplacian(build_chain(1))
    assert [lap[i][i] for i in range(4)] == [3, 3, 3, 3]
    assert all(lap[i][j] == -1 for i in range(4) for j in range(4) if i != j)


def test_laplacian_g2_diagonal():
    lap = laplacian(build_chain(2))
    assert Counter(lap[i][i] for i in range(6))[5] == 2


def test_blocks_g1():
    l11, l12 = laplacian_blocks(build_chain(1), ChainSpec(1))
    assert l11 == [[3, -1], [-1, 3]]
    assert l12 == [[-1, -1], [-1, -1]]


@pytest.mark.parametrize("n", range(1, 7))
def test_blocks_diagonal_pattern(n):
    l11, _ = laplacian_blocks(build_chain(n), ChainSpec(n))
    assert [l11[i][i] for i in range(n + 1)] == [3] + [5] * (n - 1) + [3]


def test_blocks_with_end_deleted():
    spec = ChainSpec(4, {1})
    l11, l12 = laplacian_blocks(build_subchain(spec), spec)
    assert l11[0][0] == 2
    assert l12[0][0] == 0


def test_blocks_reject_foreign_ordering():
    g = build_chain(2)
    # swap the roles of vertex 0 (top 1) and vertex 4 (bottom 2')
    perm = {0: 4, 4: 0}
    shuffled = Graph.from_edges(6, [(perm.get(u, u), perm.get(v, v)) for u, v in g.edges])
    with pytest.raises(RuntimeError):
        laplacian_blocks(shuffled, ChainSpec(2))


@given(chain_specs())
def test_structural_invariants(spec):
    g = build_subchain(spec)
    n = spec.n
    assert g.num_vertices == 2 * n + 2
    assert g.num_edges == 5 * n + 1 - spec.r
    assert g.is_connected()
    deg = g.degrees()
    for i in range(1, n + 2):
        expected = 3 + 2 * (1 < i < n + 1) - (i in spec.deleted)
        assert deg[i - 1] == expected
        assert deg[n + i] == expected
    lap = laplacian(g)
    assert all(sum(row) == 0 for row in lap)
    assert all(lap[i][j] == lap[j][i] for i in range(len(lap)) for j in range(len(lap)))
    laplacian_blocks(g, spec)


@pytest.mark.parametrize("n", range(1, 9))
def test_every_family_member_connected(n):
    specs = list(enumerate_family(n))
    assert len(specs) == 2 ** (n + 1)
    assert all(build_subchain(s).is_connected() for s in specs)


def test_edge_list_serialization():
    assert build_subchain(ChainSpec(1, {1, 2})).to_edge_list() == [[0, 1], [0, 3], [1, 2], [2, 3]]
