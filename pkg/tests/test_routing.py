import itertools

import pytest

from edgeinsert.embedding import insertion_walk, test_and_embed as embed
from edgeinsert.generators import gen_construction_II, gen_random_planar
from edgeinsert.mei import solve
from edgeinsert.multigraph import build
from edgeinsert.oracle import _dual_dist
from edgeinsert.routing import draw_edges, insert_edges_fixed, perturbed_weights, planarize

from conftest import k_n, nx_planar, small_instances


def k5_minus_edge():
    return build(5, [e for e in itertools.combinations(range(5), 2) if e != (0, 1)])


def test_weights_put_hops_first():
    w, big = perturbed_weights(50, 30)
    assert len(w) == 50
    assert all(big <= x < 2 * big for x in w)
    # a path of 30 hops always beats one of 31
    assert 30 * max(w) < 31 * min(w)


def test_empty_pairs():
    walks, (cg, ff) = insert_edges_fixed(embed(k_n(4)), [])
    assert walks == [] and cg == ff == 0


def test_adjacent_on_a_face_costs_nothing():
    walks, (cg, ff) = insert_edges_fixed(embed(k_n(4)), [(0, 1), (2, 3)])
    assert cg == 0


def test_single_walk_matches_dual_distance():
    g = k5_minus_edge()
    emb = embed(g)
    (w,), (cg, ff) = insert_edges_fixed(emb, [(0, 1)])
    assert cg == w.length == _dual_dist(emb, 0, 1) == 1
    assert ff == 0
    assert w.source == 0 and w.target == 1


@pytest.mark.parametrize("l, total", [(2, 1), (3, 3), (4, 6)])
def test_antipodal_pairs_cross_pairwise(l, total):
    inst = gen_construction_II(l)
    st = solve(inst.graph, inst.pairs)
    _, (cg, ff) = insert_edges_fixed(st.embedding, inst.pairs)
    assert (cg, ff) == (0, total)


@pytest.mark.parametrize("seed", range(4))
def test_walks_are_shortest_and_pairs_cross_once(seed):
    for inst in small_instances(25, seed, nmax=30, mmax=80, kmax=6):
        emb = embed(inst.graph)
        walks, drawing = draw_edges(emb, inst.pairs)
        for w, (u, v) in zip(walks, inst.pairs):
            assert w.length == _dual_dist(emb, u, v)
        assert all(len(fs) == 1 for fs in drawing.crossings().values())


@pytest.mark.parametrize("seed", range(3))
def test_mirror_keeps_the_tally(seed):
    for inst in small_instances(20, seed, nmax=25, mmax=60, kmax=5):
        emb = embed(inst.graph)
        a = insert_edges_fixed(emb, inst.pairs)[1]
        b = insert_edges_fixed(emb.mirror(), inst.pairs)[1]
        assert a == b


def test_planarize_single_crossing():
    g = k5_minus_edge()
    h, dummies = planarize(embed(g), [(0, 1)])
    assert dummies == 1
    assert h.n == 6
    assert h.m == g.m + 1 + 2
    assert nx_planar(h)
    assert sorted(h.degree(v) for v in range(h.n))[-1] == 4


def test_planarize_accepts_walks():
    g = k5_minus_edge()
    emb = embed(g)
    walks, _ = insert_edges_fixed(emb, [(0, 1)])
    h1, _ = planarize(emb, walks)
    h2, _ = planarize(emb, [(0, 1)])
    assert (h1.eu, h1.ev) == (h2.eu, h2.ev)


def test_planarize_no_crossing_adds_plain_edges():
    g = k_n(4)
    h, dummies = planarize(embed(g), [(0, 1)])
    assert dummies == 0
    assert (h.n, h.m) == (4, 7)


@pytest.mark.parametrize("seed", range(3))
def test_planarized_graph_is_planar(seed):
    for i in range(15):
        inst = gen_random_planar(12 + 4 * i, 2 + i % 6, seed * 100 + i)
        g = inst.graph
        emb = embed(g)
        _, (cg, ff) = insert_edges_fixed(emb, inst.pairs)
        h, dummies = planarize(emb, inst.pairs)
        assert dummies == cg + ff
        assert h.n == g.n + dummies
        assert h.m == g.m + len(inst.pairs) + 2 * dummies
        assert nx_planar(h)
        assert all(h.degree(v) == 4 for v in range(g.n, h.n))


def test_planarize_repeated_pairs():
    g = build(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    pairs = [(4, 2), (1, 3), (4, 2), (1, 3)]
    emb = embed(g)
    _, (cg, ff) = insert_edges_fixed(emb, pairs)
    h, dummies = planarize(emb, pairs)
    assert dummies == cg + ff
    assert nx_planar(h)


def test_angle_choice_follows_the_mirror():
    # a star: one face, every leaf pair shares it
    g = build(7, [(0, i) for i in range(1, 7)])
    pairs = [(1, 4), (2, 5), (3, 6), (1, 2)]
    emb = embed(g)
    a = insert_edges_fixed(emb, pairs)[1]
    assert a == insert_edges_fixed(emb.mirror(), pairs)[1]
    assert a[0] == 0
