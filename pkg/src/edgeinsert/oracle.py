"""Exhaustive oracle over all plane embeddings of small graphs.

Embeddings are produced from choice vectors (rigid flips, cyclic orders of
parallel components, block placements at cut vertices), assembled, and
deduplicated by their face structure.  Two reductions keep the space small
without changing any dual distance: real edges inside one parallel bundle
are interchangeable, and blocks sharing one angle at a cut vertex are not
reordered among themselves.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator

from . import kernels
from .decompose.assemble import EmbeddingChoice, Glue, Skeletons, assemble
from .decompose.contree import ConTree, edge_key
from .embedding import PlaneEmbedding
from .multigraph import Multigraph

DEFAULT_CAP = 100_000


class TooManyEmbeddings(RuntimeError):
    def __init__(self, cap: int, count: int):
        super().__init__(f"embedding space {count} exceeds cap {cap}")
        self.cap = cap
        self.count = count


def _p_count(edges: list[int]) -> int:
    nv = sum(1 for s in edges if s < 0)
    return math.perm(len(edges) - 1, nv - 1) if nv else 1


def _p_orders(edges: list[int]) -> list[list[int]]:
    virt = sorted((s for s in edges if s < 0), key=edge_key)
    real = sorted(s for s in edges if s >= 0)
    if not virt:
        return [real]
    first, rest = virt[0], virt[1:]
    slots = len(edges) - 1
    seqs = []
    for pos in itertools.permutations(range(slots), len(rest)):
        seq = [None] * slots
        for x, i in zip(rest, pos):
            seq[i] = x
        seqs.append(seq)
    seqs.sort(key=lambda p: [(-1 if x is None else ~x) for x in p])
    out = []
    for seq in seqs:
        it = iter(real)
        out.append([first] + [next(it) if x is None else x for x in seq])
    return out


def _hosting_forests(blocks: list[int], root: int, angles: dict[int, int]) -> list[dict[int, int]]:
    """Parent maps making every non-root block hang below ``root``.

    Blocks with a single angle never host anyone except through the root.
    """
    others = [b for b in blocks if b != root]
    hosts = [b for b in blocks if b == root or angles[b] > 1]
    out = []
    for combo in itertools.product(hosts, repeat=len(others)):
        par = dict(zip(others, combo))
        if any(par[b] == b for b in others):
            continue
        ok = True
        for b in others:
            seen = set()
            x = b
            while x != root:
                if x in seen:
                    ok = False
                    break
                seen.add(x)
                x = par[x]
            if not ok:
                break
        if ok:
            out.append(par)
    return out


def _count_cut(blocks, root, angles) -> int:
    total = 0
    for par in _hosting_forests(blocks, root, angles):
        p = 1
        for b, h in par.items():
            p *= angles[h] * angles[b]
        total += p
    return total


class Enumerator:
    def __init__(self, g: Multigraph, cap: int = DEFAULT_CAP):
        self.g = g
        self.cap = cap
        self.ct = ConTree(g)
        self.sk = Skeletons(self.ct)
        self._shared: dict = {}
        ct = self.ct
        self.rnodes = [nd.id for nd in ct.nodes if nd.kind == "R"]
        self.pnodes = [nd.id for nd in ct.nodes if nd.kind == "P"]
        self.cuts = list(ct.bc.cuts)
        self.angles = {}
        for c in self.cuts:
            self.angles[c] = {b: sum(1 for e in ct.bc.blocks[b] if c in (g.eu[e], g.ev[e])) for b in ct.bc.vertex_blocks[c]}
        count = 2 ** len(self.rnodes)
        for p in self.pnodes:
            count *= _p_count(ct.nodes[p].edges)
        if count > cap:
            raise TooManyEmbeddings(cap, count)
        self.porders = {p: _p_orders(ct.nodes[p].edges) for p in self.pnodes}
        for c in self.cuts:
            bl = ct.bc.vertex_blocks[c]
            if len(bl) > 7:
                raise TooManyEmbeddings(cap, cap + 1)
            count *= _count_cut(bl, ct.bc.cut_parent[c], self.angles[c])
            if count > cap:
                raise TooManyEmbeddings(cap, count)
        self.count = count

    def choices(self) -> Iterator[EmbeddingChoice]:
        ct = self.ct
        for flips in itertools.product((False, True), repeat=len(self.rnodes)):
            for orders in itertools.product(*(self.porders[p] for p in self.pnodes)):
                base = EmbeddingChoice(dict(zip(self.rnodes, flips)), dict(zip(self.pnodes, orders)), {})
                glue = Glue(self.sk, base, self._shared)
                per_cut = []
                for c in self.cuts:
                    bl = ct.bc.vertex_blocks[c]
                    root = ct.bc.cut_parent[c]
                    rots = {b: glue.block_rotation(b, c) for b in bl}
                    per_cut.append(list(self._placements(c, bl, root, rots)))
                for pl in itertools.product(*per_cut):
                    yield EmbeddingChoice(base.r_flip, base.p_order, dict(zip(self.cuts, pl)))

    def _placements(self, c, blocks, root, rots):
        for par in _hosting_forests(blocks, root, self.angles[c]):
            # order so hosts come first
            order = []
            placed = {root}
            pending = sorted(par)
            while pending:
                nxt = [b for b in pending if par[b] in placed]
                for b in nxt:
                    order.append(b)
                    placed.add(b)
                pending = [b for b in pending if b not in placed]
            opts = [[(b, par[b], ha, oa) for ha in rots[par[b]] for oa in rots[b]] for b in order]
            for combo in itertools.product(*opts):
                yield list(combo)

    def embeddings(self, dedupe: bool = True) -> Iterator[PlaneEmbedding]:
        """Every embedding once; ``dedupe=False`` skips the face-set check and
        may repeat some, which is harmless when only minima are wanted."""
        seen = set()
        for ch in self.choices():
            emb = assemble(self.ct, self.sk, ch, self._shared)
            if not dedupe:
                yield emb
                continue
            fp = emb.fingerprint()
            if fp in seen:
                continue
            seen.add(fp)
            yield emb


def enumerate_embeddings(g: Multigraph, cap: int = DEFAULT_CAP, dedupe: bool = True) -> Iterator[PlaneEmbedding]:
    if g.m == 0:
        yield PlaneEmbedding(g, [[] for _ in range(g.n)])
        return
    yield from Enumerator(g, cap).embeddings(dedupe)


def _dual_dist(emb: PlaneEmbedding, v1: int, v2: int) -> int:
    if v1 == v2:
        return 0
    indptr, af, ae = emb.csr()
    res = kernels.bfs_path(indptr, af, ae, emb.face_count, emb.faces_at(v1), emb.faces_at(v2))
    return res[0]


def exact_ins_single(g: Multigraph, v1: int, v2: int, cap: int = DEFAULT_CAP) -> int:
    return exact_ins_prime(g, [(v1, v2)], cap)


def exact_ins_prime(g: Multigraph, pairs: Iterable[tuple[int, int]], cap: int = DEFAULT_CAP) -> int:
    pairs = [tuple(p) for p in pairs]
    if not pairs:
        return 0
    best = None
    for emb in enumerate_embeddings(g, cap, dedupe=False):
        s = 0
        for v1, v2 in pairs:
            s += _dual_dist(emb, v1, v2)
            if best is not None and s >= best:
                break
        if best is None or s < best:
            best = s
            if best == 0:
                break
    return best


def exact_ins_each(g: Multigraph, pairs, cap: int = DEFAULT_CAP) -> list[int]:
    """Per-pair optimum, each over all embeddings independently."""
    pairs = [tuple(p) for p in pairs]
    best = [None] * len(pairs)
    for emb in enumerate_embeddings(g, cap, dedupe=False):
        for i, (v1, v2) in enumerate(pairs):
            d = _dual_dist(emb, v1, v2)
            if best[i] is None or d < best[i]:
                best[i] = d
    return best


def brute_rotation_embeddings(g: Multigraph, limit: int = 200_000) -> Iterator[PlaneEmbedding]:
    """Every plane rotation system, by trying all cyclic orders at every vertex.

    Independent of the decomposition; only usable on very small graphs.
    """
    from math import factorial

    total = 1
    for v in range(g.n):
        total *= factorial(max(g.degree(v) - 1, 0))
    if total > limit:
        raise TooManyEmbeddings(limit, total)
    darts = []
    for v in range(g.n):
        ds = [2 * e if g.eu[e] == v else 2 * e + 1 for e in g.incident(v)]
        darts.append(sorted(ds))
    per_vertex = []
    for ds in darts:
        if len(ds) <= 2:
            per_vertex.append([ds])
        else:
            per_vertex.append([[ds[0]] + list(p) for p in itertools.permutations(ds[1:])])
    for rot in itertools.product(*per_vertex):
        emb = PlaneEmbedding(g, [list(r) for r in rot], check=False)
        if emb.euler_ok():
            yield emb
