import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgeinsert.multigraph import (
    Disconnected,
    LoopEdge,
    VertexOutOfRange,
    block_vertices,
    blocks_and_cuts,
    build,
    insertion_set,
    is_connected,
    max_degree,
)

from conftest import k_n


def test_build_path():
    g = build(3, [(0, 1), (1, 2)])
    assert (g.n, g.m) == (3, 2)
    assert list(zip(g.eu, g.ev)) == [(0, 1), (1, 2)]


def test_parallel_edges_kept():
    g = build(2, [(0, 1)] * 3)
    assert g.m == 3 and max_degree(g) == 3


def test_loop_rejected():
    with pytest.raises(LoopEdge):
        build(1, [(0, 0)])


def test_vertex_range_checked():
    with pytest.raises(VertexOutOfRange):
        build(2, [(0, 2)])


def test_max_degree():
    assert max_degree(build(3, [(0, 1), (1, 2)])) == 2
    assert max_degree(k_n(4)) == 3
    assert max_degree(build(0, [])) == 0


def test_blocks_of_path():
    blocks, cuts = blocks_and_cuts(build(3, [(0, 1), (1, 2)]))
    assert sorted(map(sorted, blocks)) == [[0], [1]]
    assert cuts == {1}


def test_blocks_of_k4():
    blocks, cuts = blocks_and_cuts(k_n(4))
    assert len(blocks) == 1 and not cuts


def test_bowtie_has_one_cut():
    g = build(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    blocks, cuts = blocks_and_cuts(g)
    assert len(blocks) == 2 and cuts == {2}


def test_blocks_need_connected_graph():
    with pytest.raises(Disconnected):
        blocks_and_cuts(build(2, []))


def test_is_connected():
    assert is_connected(k_n(4))
    assert not is_connected(build(2, []))
    assert is_connected(build(0, []))


def test_insertion_set_validation():
    g = k_n(3)
    insertion_set([(0, 1)]).validate(g)
    with pytest.raises(LoopEdge):
        insertion_set([(1, 1)]).validate(g)
    with pytest.raises(VertexOutOfRange):
        insertion_set([(0, 5)]).validate(g)


@st.composite
def connected_multigraphs(draw):
    n = draw(st.integers(2, 9))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    edges += [(u, v) for u, v in extra if u != v]
    return build(n, edges)


@settings(max_examples=150, deadline=None)
@given(connected_multigraphs())
def test_block_properties(g):
    deg = [0] * g.n
    for u, v in zip(g.eu, g.ev):
        deg[u] += 1
        deg[v] += 1
    assert sum(deg) == 2 * g.m
    blocks, cuts = blocks_and_cuts(g)
    seen = sorted(e for b in blocks for e in b)
    assert seen == list(range(g.m))
    for c in cuts:
        keep = [v for v in range(g.n) if v != c]
        idx = {v: i for i, v in enumerate(keep)}
        rest = [(idx[u], idx[v]) for u, v in zip(g.eu, g.ev) if c not in (u, v)]
        assert not is_connected(build(len(keep), rest))
    # vertices in two or more blocks are exactly the cut vertices
    count = [0] * g.n
    for b in blocks:
        for v in block_vertices(g, b):
            count[v] += 1
    assert {v for v in range(g.n) if count[v] >= 2} == cuts
