import itertools
import random

import networkx as nx
import pytest

from edgeinsert.generators import gen_random_planar
from edgeinsert.multigraph import build


def small_instances(count, seed, nmax=12, mmax=20, kmax=1):
    """Deterministic random connected planar multigraphs with few edges."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, nmax)
        inst = gen_random_planar(n, rng.randint(1, kmax), rng.randrange(10**9), density=rng.uniform(0.0, 0.7))
        if inst.graph.m <= mmax:
            out.append(inst)
    return out


def nx_planar(g):
    return nx.check_planarity(nx.MultiGraph(list(zip(g.eu, g.ev))))[0]


def k_n(n):
    return build(n, list(itertools.combinations(range(n), 2)))


def theta():
    """u=0, v=1 joined by three paths of length two through 2, 3, 4."""
    return build(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])


def cube():
    edges = []
    for v in range(8):
        for b in (1, 2, 4):
            if v < v ^ b:
                edges.append((v, v ^ b))
    return build(8, edges)


@pytest.fixture
def k4():
    return k_n(4)
