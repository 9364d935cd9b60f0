import itertools

import pytest

from edgeinsert.embedding import test_and_embed as embed
from edgeinsert.generators import (
    BadInstance,
    BadParams,
    gen_construction_I,
    gen_construction_II,
    gen_construction_III,
    gen_grid,
    gen_random_planar,
    gen_ziegler,
)
from edgeinsert.io import dumps_instance
from edgeinsert.mei import run_mei
from edgeinsert.multigraph import is_connected, max_degree
from edgeinsert.oracle import exact_ins_each, exact_ins_prime

from conftest import nx_planar


def interleave(p, q):
    (a, b), (c, d) = sorted(p), sorted(q)
    return a < c < b < d or c < a < d < b


def two_sided_optimum(chords):
    """Fewest interleaving pairs on a common side, over all side assignments."""
    best = None
    for sides in itertools.product((0, 1), repeat=len(chords)):
        cost = sum(
            1
            for i, j in itertools.combinations(range(len(chords)), 2)
            if sides[i] == sides[j] and interleave(chords[i], chords[j])
        )
        best = cost if best is None else min(best, cost)
    return best


@pytest.mark.parametrize(
    "inst",
    [
        gen_construction_I(1),
        gen_construction_II(3),
        gen_construction_III(2, 4),
        gen_ziegler([(0, 2), (1, 3)], 5, 1),
        gen_random_planar(40, 5, seed=3),
        gen_grid(4, 5, 3, seed=1),
    ],
    ids=["I", "II", "III", "ziegler", "random", "grid"],
)
def test_outputs_are_connected_and_planar(inst):
    g = inst.graph
    assert is_connected(g)
    assert nx_planar(g)
    assert embed(g).euler_ok()
    for u, v in inst.pairs:
        assert 0 <= u < g.n and 0 <= v < g.n and u != v


def test_bad_parameters():
    with pytest.raises(BadParams):
        gen_construction_I(0)
    with pytest.raises(BadParams):
        gen_construction_II(1)
    with pytest.raises(BadParams):
        gen_construction_III(2, 6)
    with pytest.raises(BadParams):
        gen_construction_III(3, 4)
    with pytest.raises(BadParams):
        gen_random_planar(2, 1, 0)
    with pytest.raises(BadInstance):
        gen_ziegler([(0, 2)], 2, 0)
    with pytest.raises(BadInstance):
        gen_ziegler([(1, 2)], 4, 0)
    with pytest.raises(BadInstance):
        gen_ziegler([(0, 9)], 4, 0)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_construction_I_single_pair_needs_r_crossings(r):
    inst = gen_construction_I(r)
    g = inst.graph
    assert inst.lb == r
    assert max_degree(g) == 3
    (a, b), = inst.pairs
    assert g.degree(a) == g.degree(b) == 2
    assert exact_ins_prime(g, inst.pairs) == r
    assert run_mei(g, inst.pairs).total == r


@pytest.mark.parametrize("l, total", [(2, 1), (3, 3), (4, 6)])
def test_construction_II_pairs_free_alone_but_cross(l, total):
    inst = gen_construction_II(l)
    assert inst.lb == l * (l - 1) // 2 == total
    assert len(inst.pairs) == l
    assert max_degree(inst.graph) == 4
    assert exact_ins_each(inst.graph, inst.pairs) == [0] * l
    assert run_mei(inst.graph, inst.pairs).total == total


def test_construction_III_small():
    inst = gen_construction_III(2, 4)
    g = inst.graph
    assert inst.lb == 4
    assert len(inst.pairs) == 2
    assert max_degree(g) == 4
    assert exact_ins_each(g, inst.pairs) == [0, 0]
    assert exact_ins_prime(g, inst.pairs) == 4
    assert run_mei(g, inst.pairs).total >= 4


def test_construction_III_scales_lower_bound():
    inst = gen_construction_III(4, 8)
    assert inst.lb == 8 * 4 * 2 // 2
    assert max_degree(inst.graph) == 8
    assert len(inst.pairs) == 4


def test_ziegler_bunch_arithmetic():
    inst = gen_ziegler([(0, 2), (0, 2)], 3, 7)
    # n - 1 path edges plus five edges at w_a, w_b, each with |E|^2 copies
    assert inst.graph.m == (2 + 5) * 4 == 28
    assert inst.budget == 7 and inst.lb is None
    assert inst.graph.n == 5


@pytest.mark.parametrize(
    "chords",
    [
        [(0, 2), (3, 5)],
        [(0, 2), (1, 3)],
        [(0, 3), (1, 4), (2, 5)],
        [(0, 4), (1, 5), (2, 6), (3, 7)],
    ],
)
def test_ziegler_side_assignment_is_a_lower_bound(chords):
    n = max(max(c) for c in chords) + 1
    inst = gen_ziegler(chords, n, 0)
    opt = two_sided_optimum(chords)
    rep = run_mei(inst.graph, inst.pairs)
    assert rep.ins_values == [0] * len(chords)
    # chords never pay a bunch; only chords sharing a side can meet
    assert rep.crossings_with_G == 0
    assert rep.total >= opt


def test_two_sided_optimum_values():
    assert two_sided_optimum([(0, 2), (1, 3)]) == 0
    assert two_sided_optimum([(0, 3), (1, 4), (2, 5)]) == 1


def test_random_planar_deterministic_and_prefers_non_edges():
    a = gen_random_planar(60, 6, seed=11)
    b = gen_random_planar(60, 6, seed=11)
    assert dumps_instance(a) == dumps_instance(b)
    assert dumps_instance(a) != dumps_instance(gen_random_planar(60, 6, seed=12))
    present = {frozenset(e) for e in zip(a.graph.eu, a.graph.ev)}
    assert all(frozenset(p) not in present for p in a.pairs)


def test_random_planar_density_extremes():
    sparse = gen_random_planar(30, 0, seed=1, density=0.0)
    assert sparse.graph.m >= 29 and sparse.graph.m <= 29 * 1.2 + 2
    dense = gen_random_planar(30, 0, seed=1, density=1.0)
    assert dense.graph.m >= 3 * 30 - 6


def test_grid_shape():
    inst = gen_grid(3, 4, 2, seed=5)
    assert inst.graph.n == 12
    assert inst.graph.m == 3 * 3 + 2 * 4
    assert inst.pairs == gen_grid(3, 4, 2, seed=5).pairs
