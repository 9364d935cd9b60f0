import itertools

import pytest

from edgeinsert.decompose.assemble import Skeletons
from edgeinsert.decompose.contree import ConPath, ConTree, con_path
from edgeinsert.embedding import test_and_embed as embed, insertion_walk
from edgeinsert.generators import gen_construction_I
from edgeinsert.insertion import (
    SWITCHING,
    InsertionContext,
    NotHonored,
    NotSubpath,
    derive_spins,
    honors,
    make_pref,
    optimal_single_insertion,
    restrict_preference,
    specify,
)
from edgeinsert.multigraph import build
from edgeinsert.oracle import Enumerator, exact_ins_single

from conftest import k_n, small_instances

TWO_K4 = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)]


def context(g):
    ct = ConTree(g)
    sk = Skeletons(ct)
    return ct, sk, InsertionContext(ct, sk)


def r_nodes(ct):
    return [n.id for n in ct.nodes if n.kind == "R"]


def test_make_pref_sorts_peers_and_faces():
    p = make_pref(7, 9, 3, SWITCHING, faces=[(9, 2), (3, 5)])
    assert p.peers == (3, 9)
    assert p.faces == ((3, 5), (9, 2))
    assert p.dump() == "7: peers=(3,9) label=SWITCHING faces=[3:5,9:2]"
    assert make_pref(1, 0, 2).dump() == "1: peers=(0,2) label=- faces=[]"


def test_default_embedding_is_unflipped_and_mirror_flips_all():
    g = build(6, TWO_K4)
    ct, sk, _ = context(g)
    emb = embed(g)
    spec, mirror = specify(emb, ct, sk), specify(emb.mirror(), ct, sk)
    rs = r_nodes(ct)
    assert len(rs) == 2
    assert not any(spec.r_flipped(r) for r in rs)
    assert all(mirror.r_flipped(r) for r in rs)


def test_cycle_has_empty_specification():
    g = build(5, [(i, (i + 1) % 5) for i in range(5)])
    ct, sk, _ = context(g)
    full = specify(embed(g), ct, sk).full()
    assert all(not v for v in full.values())


def test_honors_empty_set():
    g = k_n(4)
    ct, sk, _ = context(g)
    assert honors(specify(embed(g), ct, sk), []) == (0, set())


def test_p_preference_needs_adjacent_peers():
    # four length-two paths between 0 and 1: one P node with four S children
    g = build(6, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1)])
    ct, sk, _ = context(g)
    spec = specify(embed(g), ct, sk)
    (p,) = [n.id for n in ct.nodes if n.kind == "P"]
    cyc = spec.p_cycle(p)
    assert len(cyc) == 4

    def peer(e):
        return next(o for o in ct.vnodes[~e] if o != p)

    peers = [peer(e) for e in cyc]
    far = make_pref(p, peers[0], peers[2])
    assert honors(spec, [far])[0] == 1
    near = make_pref(p, peers[0], peers[1])
    assert honors(spec, [near])[0] == 0


def test_single_insertion_examples():
    tree = build(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert optimal_single_insertion(context(tree)[2], 0, 4)[0] == 0

    k5e = build(5, [e for e in itertools.combinations(range(5), 2) if e != (0, 1)])
    assert optimal_single_insertion(context(k5e)[2], 0, 1)[0] == 1

    inst = gen_construction_I(2)
    (a, b), = inst.pairs
    assert optimal_single_insertion(context(inst.graph)[2], a, b)[0] == 2


def test_single_insertion_rejects_equal_endpoints(k4):
    with pytest.raises(ValueError, match="SameVertex"):
        optimal_single_insertion(context(k4)[2], 1, 1)


def test_glued_k4s_need_a_flip():
    g = build(6, TWO_K4)
    ct, sk, ctx = context(g)
    ins, chain = optimal_single_insertion(ctx, 2, 4)
    assert ins == 0
    assert [ct.nodes[n].kind for n in chain.path.nodes] == ["R", "S", "R"]
    (s,) = chain.prefs
    assert chain.prefs[s].label == SWITCHING

    spec = specify(embed(g), ct, sk)
    assert honors(spec, chain.prefs.values())[0] == 1
    with pytest.raises(NotHonored):
        derive_spins(spec, chain)

    honored = 0
    for emb in Enumerator(g, 100).embeddings():
        sp = specify(emb, ct, sk)
        ok = honors(sp, chain.prefs.values())[0] == 0
        assert ok == (insertion_walk(emb, 2, 4).length == 0)
        if ok:
            honored += 1
            derive_spins(sp, chain)
    assert honored > 0


def test_restrict_to_prefix_and_suffix():
    g = build(6, TWO_K4)
    ct, _, ctx = context(g)
    _, chain = optimal_single_insertion(ctx, 2, 4)
    nodes = chain.path.nodes
    pre = ConPath(2, 0, nodes[:2], ())
    suf = ConPath(0, 4, nodes[1:], ())
    assert restrict_preference(chain, pre).prefs == {}
    assert restrict_preference(chain, suf).prefs == {}
    assert restrict_preference(chain, chain.path).prefs == chain.prefs
    with pytest.raises(NotSubpath):
        restrict_preference(chain, ConPath(2, 4, (nodes[1],) * 2, ()))
    with pytest.raises(NotSubpath):
        restrict_preference(chain, ConPath(2, 4, (), ()))


def test_chain_dump_follows_path_order():
    g = build(6, TWO_K4)
    _, _, ctx = context(g)
    _, chain = optimal_single_insertion(ctx, 2, 4)
    (s,) = chain.prefs
    assert chain.dump() == chain.prefs[s].dump()


@pytest.mark.parametrize("seed", range(4))
def test_single_insertion_matches_oracle(seed):
    for inst in small_instances(30, seed):
        g = inst.graph
        (a, b), = inst.pairs
        ct, sk, ctx = context(g)
        got, chain = optimal_single_insertion(ctx, a, b)
        assert got == exact_ins_single(g, a, b)
        assert chain.path == con_path(ct, a, b)
