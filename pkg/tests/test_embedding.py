import random

import networkx as nx
import pytest

from edgeinsert.embedding import (
    MalformedRotation,
    PlaneEmbedding,
    compute_faces,
    dual_distance_all,
    dual_graph,
    insertion_walk,
    test_and_embed as embed,
)
from edgeinsert.generators import _brick_wall, gen_construction_I
from edgeinsert.multigraph import Disconnected, GraphError, NotPlanar, build

from conftest import cube, k_n, small_instances


def test_k4_has_four_faces():
    e = embed(k_n(4))
    assert e.face_count == 4 and e.euler_ok()


def test_cube_has_six_faces():
    assert embed(cube()).face_count == 6


def test_k5_not_planar():
    with pytest.raises(NotPlanar):
        embed(k_n(5))


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        embed(build(4, [(0, 1), (2, 3)]))


def test_face_counts_small():
    assert len(compute_faces(embed(k_n(3)))) == 2
    assert len(compute_faces(embed(build(2, [(0, 1), (0, 1)])))) == 2
    assert len(compute_faces(embed(build(3, [(0, 1), (1, 2)])))) == 1


def test_faces_partition_darts():
    e = embed(cube())
    darts = sorted(d for w in e.face_walks() for d in w)
    assert darts == list(range(2 * e.graph.m))


def test_default_embedding_is_deterministic():
    g = small_instances(1, 3, nmax=10)[0].graph
    assert embed(g).rotation == embed(g).rotation


def test_mirror_keeps_face_count():
    e = embed(cube())
    assert e.mirror().face_count == e.face_count


def test_bad_rotation_rejected():
    g = k_n(3)
    with pytest.raises(MalformedRotation):
        PlaneEmbedding(g, [[0], [1], [2]])
    with pytest.raises(MalformedRotation):
        PlaneEmbedding(g, [[0, 0], [1, 4], [3, 5]])


def test_dual_of_k4_is_k4():
    d = dual_graph(embed(k_n(4)))
    h = nx.MultiGraph()
    for f in range(d.nfaces):
        for e, g in d.neighbors(f):
            if f < g:
                h.add_edge(f, g)
    assert nx.is_isomorphic(nx.Graph(h), nx.complete_graph(4)) and h.number_of_edges() == 6


def test_dual_of_triangle():
    d = dual_graph(embed(k_n(3)))
    assert d.nfaces == 2
    assert sorted(e for e, _ in d.neighbors(0)) == [0, 1, 2]


def test_dual_of_tree_has_no_edges():
    d = dual_graph(embed(build(4, [(0, 1), (1, 2), (1, 3)])))
    assert d.nfaces == 1 and list(d.neighbors(0)) == []


def test_walk_on_common_face():
    w = insertion_walk(embed(k_n(4)), 0, 1)
    assert w.length == 0 and w.start_face == w.end_face


def test_walk_rejects_equal_endpoints():
    with pytest.raises(GraphError):
        insertion_walk(embed(k_n(4)), 2, 2)


def test_hex_neighbours_need_one_crossing():
    rows, cols = 6, 10
    edges = _brick_wall(rows, cols)
    g = build(rows * cols, edges)
    e = embed(g)
    fo = e.face_of
    faces = lambda x: {fo[2 * x], fo[2 * x + 1]}
    inner = [x for x in range(g.m) if 2 <= edges[x][0] // cols <= 3]
    adj = {}
    for x in range(g.m):
        a, b = fo[2 * x], fo[2 * x + 1]
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    found = None
    for x in inner:
        for y in inner:
            fx, fy = faces(x), faces(y)
            if not fx & fy and any(adj[a] & fy for a in fx):
                found = (x, y)
                break
        if found:
            break
    x, y = found
    a, b = g.n, g.n + 1
    out = []
    for i, (u, v) in enumerate(edges):
        if i == x:
            out += [(u, a), (a, v)]
        elif i == y:
            out += [(u, b), (b, v)]
        else:
            out.append((u, v))
    assert insertion_walk(embed(build(g.n + 2, out)), a, b).length == 1


@pytest.mark.parametrize("r", [1, 2, 3])
def test_far_points_in_hex_grid(r):
    g, pairs = gen_construction_I(r)
    assert insertion_walk(embed(g), *pairs[0]).length >= r


def _nx_dual_distance(e, u, v):
    h = nx.MultiGraph()
    h.add_nodes_from(range(e.face_count))
    fo = e.face_of
    for x in range(e.graph.m):
        h.add_edge(fo[2 * x], fo[2 * x + 1])
    h.add_edges_from(("s", f) for f in e.faces_at(u))
    h.add_edges_from((f, "t") for f in e.faces_at(v))
    return nx.shortest_path_length(h, "s", "t") - 2


def test_walk_length_is_dual_distance():
    rng = random.Random(5)
    for inst in small_instances(60, 11, nmax=14, mmax=30):
        e = embed(inst.graph)
        u, v = rng.sample(range(inst.graph.n), 2)
        w = insertion_walk(e, u, v)
        assert w.length == _nx_dual_distance(e, u, v)
        assert w.start_face in e.faces_at(u) and w.end_face in e.faces_at(v)
        # the crossed edges form a walk in the dual
        f = w.start_face
        fo = e.face_of
        for x in w.crossed_edges:
            a, b = fo[2 * x], fo[2 * x + 1]
            assert f in (a, b)
            f = b if f == a else a
        assert f == w.end_face


def test_dual_distances_mirror_invariant():
    for inst in small_instances(30, 12, nmax=12, mmax=25, kmax=3):
        e = embed(inst.graph)
        pairs = list(inst.pairs)
        assert dual_distance_all(e, pairs) == dual_distance_all(e.mirror(), pairs)
