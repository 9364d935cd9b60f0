"""Multiple edge insertion with an additive guarantee.

Pipeline: con-tree, one optimal preference per pair, selection of which
preferences vote at each node, a semi-majority vote, an embedding that
honors the winners, and finally independent insertion into that embedding.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from math import comb

from .decompose.assemble import EmbeddingChoice, Glue, Skeletons, assemble
from .decompose.contree import ConPath, ConTree, con_path
from .embedding import PlaneEmbedding
from .insertion import (
    SWITCHING,
    ChainPreference,
    InsertionContext,
    NodePreference,
    link_vid,
    optimal_single_insertion,
    spin_var,
)
from .multigraph import InsertionSet, Multigraph, insertion_set, max_degree
from .routing import insert_edges_fixed

WEAK = "weak"
STRONG = "strong"


class MalformedPreference(ValueError):
    pass


def weak_guarantee(k: int, delta: int) -> int:
    return (2 * (delta // 2) + 1) * comb(k, 2)


def floor_log2(x: int) -> int:
    return x.bit_length() - 1 if x > 0 else 0


def strong_guarantee(k: int, delta: int) -> int:
    if k == 0:
        return 0
    return (delta // 2) * 2 * k * floor_log2(2 * k) + comb(k, 2)


def report_cr_bounds(k: int, delta: int) -> dict:
    """Coefficients ``a, b`` with crossing number bound ``a * cr(G+F) + b``."""
    h = delta // 2
    log_k = floor_log2(k) if k > 0 else 0
    return {
        "multiplicative": 2 * k * h,
        "additive": 2 * k * log_k * h + (k * k - k) // 2,
    }


# ---------------------------------------------------------------------------
# step 2: preferences


def compute_preferences(ctx: InsertionContext, pairs) -> list[tuple[int, ChainPreference]]:
    return [optimal_single_insertion(ctx, u, v) for u, v in pairs]


def coherent_at(ct: ConTree, p1: ConPath, p2: ConPath, nu: int) -> bool:
    s2 = set(p2.nodes)
    shared = [x for x in p1.nodes if x in s2]
    if nu not in shared:
        return False
    i = shared.index(nu)
    if i == 0 or i == len(shared) - 1:
        return False
    for j in (i - 1, i + 1):
        if ct.nodes[shared[j]].kind == "R" and (j == 0 or j == len(shared) - 1):
            return False
    return True


def _coherent_nodes(ct: ConTree, p1: ConPath, p2: ConPath) -> list[int]:
    s2 = set(p2.nodes)
    shared = [x for x in p1.nodes if x in s2]
    out = []
    last = len(shared) - 1
    for i in range(1, last):
        ok = True
        for j in (i - 1, i + 1):
            if ct.nodes[shared[j]].kind == "R" and (j == 0 or j == last):
                ok = False
        if ok:
            out.append(shared[i])
    return out


def reconcile(ct: ConTree, prefs: list[ChainPreference]) -> int:
    """At coherent nodes, later preferences adopt earlier ones; returns #changes."""
    changed = 0
    node_paths: dict[int, list[int]] = {}
    for i, cp in enumerate(prefs):
        for x in cp.path.nodes:
            node_paths.setdefault(x, []).append(i)
    pairs = set()
    for lst in node_paths.values():
        for a in range(len(lst)):
            for b in range(a + 1, len(lst)):
                pairs.add((lst[a], lst[b]))
    for i, j in sorted(pairs, key=lambda t: (t[1], t[0])):
        for nu in _coherent_nodes(ct, prefs[i].path, prefs[j].path):
            pi = prefs[i].prefs.get(nu)
            if pi is not None and prefs[j].prefs.get(nu) != pi:
                prefs[j].prefs[nu] = pi
                changed += 1
    return changed


# ---------------------------------------------------------------------------
# step 3: which preferences vote


def participation(paths: list[ConPath]) -> dict[int, list[int]]:
    p: dict[int, list[int]] = {}
    for i, path in enumerate(paths):
        for x in path.nodes[1:-1]:
            p.setdefault(x, []).append(i)
    return p


def select_weak(p: dict[int, list[int]]) -> dict[int, list[int]]:
    return {x: list(v) for x, v in p.items()}


def substitutes(ct: ConTree, path: ConPath, mu: int) -> set[int]:
    """C-nodes that may stand in for ``mu`` relative to ``path``."""
    nd = ct.nodes[mu]
    if nd.kind == "C":
        return set()
    i = path.index(mu)
    out = set()
    mine = set(nd.vertices)
    for j in (i - 1, i + 1):
        if not 0 <= j < len(path.nodes):
            continue
        nb = ct.nodes[path.nodes[j]]
        if nb.kind == "C":
            if nb.cut in mine:
                out.add(nb.id)
            continue
        for x in mine.intersection(nb.vertices):
            if x in ct.cut_node:
                out.add(ct.cut_node[x])
    return out


def _pivot_covers(ct: ConTree, paths, sets, j: int, mu: int, rest) -> bool:
    subs = substitutes(ct, paths[j], mu)
    for i in rest:
        if i == j or not (sets[i] & sets[j]):
            continue
        if mu in sets[i] or sets[i] & subs:
            continue
        return False
    return True


@dataclass
class SimplicialSequence:
    order: list[int] = field(default_factory=list)
    pivots: dict[int, int] = field(default_factory=dict)
    fallbacks: int = 0


def _spanning_tree(ct: ConTree):
    """Adjacency of a spanning tree of the decomposition graph.

    Every C-node keeps only its edge to the lowest-id non-P mate per block.
    """
    adj: dict[int, list[int]] = {}
    keep: dict[tuple[int, int], int] = {}
    for nd in ct.nodes:
        if nd.kind == "C":
            continue
        for _, mu in ct.tree_neighbors(nd.id):
            adj.setdefault(nd.id, []).append(mu)
        adj.setdefault(nd.id, [])
    for c, gid in ct.cut_node.items():
        best: dict[int, int] = {}
        for m in ct.vertex_nodes[c]:
            mn = ct.nodes[m]
            if mn.kind == "P":
                continue
            if mn.block not in best or m < best[mn.block]:
                best[mn.block] = m
        for b, m in best.items():
            keep[(gid, b)] = m
            adj.setdefault(gid, []).append(m)
            adj[m].append(gid)
    return adj, keep


def _reroute(ct: ConTree, path: ConPath, keep) -> list[int]:
    out: list[int] = []
    nodes = path.nodes
    for i, x in enumerate(nodes):
        nd = ct.nodes[x]
        if nd.kind != "C":
            out.append(x)
            continue
        prev = nodes[i - 1]
        k_prev = keep[(x, ct.nodes[prev].block)]
        if k_prev != prev:
            seg = ct.tree_path(prev, k_prev)[1:]
            out.extend(seg)
        out.append(x)
        nxt = nodes[i + 1]
        k_next = keep[(x, ct.nodes[nxt].block)]
        if k_next != nxt:
            seg = ct.tree_path(k_next, nxt)[:-1]
            out.extend(seg)
    return out


def good_simplicial_sequence(ct: ConTree, paths: list[ConPath]) -> SimplicialSequence:
    seq = SimplicialSequence()
    k = len(paths)
    if k == 0:
        return seq
    adj, keep = _spanning_tree(ct)
    routed = [_reroute(ct, p, keep) for p in paths]
    # BFS from a fixed root of the spanning tree (forest over components)
    dist: dict[int, int] = {}
    root = min(adj)
    q = deque([root])
    dist[root] = 0
    while q:
        x = q.popleft()
        for y in sorted(adj[x]):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    shore = []
    for i, r in enumerate(routed):
        d, u = min((dist[x], x) for x in r)
        shore.append((d, u))
    order = sorted(range(k), key=lambda i: (-shore[i][0], i))
    sets = [set(p.nodes) for p in paths]
    rest = set(range(k))
    for j in order:
        u = shore[j][1]
        mu = _map_back(ct, paths[j], routed[j], u)
        if not _pivot_covers(ct, paths, sets, j, mu, rest):
            seq.fallbacks += 1
            mu = _search_pivot(ct, paths, sets, j, rest)
            if mu is None:
                j, mu = _search_any(ct, paths, sets, rest)
        seq.order.append(j)
        seq.pivots[j] = mu
        rest.discard(j)
    return seq


def _map_back(ct: ConTree, path: ConPath, routed: list[int], u: int) -> int:
    if u in path.nodes:
        return u
    pos = routed.index(u)
    # walk towards the nearest C-node of the original path, then step off it
    members = set(path.nodes)
    for step in (1, -1):
        i = pos
        while 0 <= i < len(routed) and routed[i] not in members:
            i += step
        if 0 <= i < len(routed) and ct.nodes[routed[i]].kind != "C":
            return routed[i]
    return path.nodes[0]


def _search_pivot(ct, paths, sets, j, rest):
    for mu in paths[j].nodes:
        if _pivot_covers(ct, paths, sets, j, mu, rest):
            return mu
    return None


def _search_any(ct, paths, sets, rest):
    for j in sorted(rest):
        mu = _search_pivot(ct, paths, sets, j, rest)
        if mu is not None:
            return j, mu
    raise RuntimeError("no simplicial pivot exists")


def verify_sequence(ct: ConTree, paths: list[ConPath], seq: SimplicialSequence) -> bool:
    sets = [set(p.nodes) for p in paths]
    rest = set(range(len(paths)))
    for j in seq.order:
        if not _pivot_covers(ct, paths, sets, j, seq.pivots[j], rest):
            return False
        rest.discard(j)
    return not rest


def select_strong(ct: ConTree, paths: list[ConPath], p: dict[int, list[int]], seq: SimplicialSequence) -> dict[int, list[int]]:
    drop: dict[int, set[int]] = {}
    for i, mu in seq.pivots.items():
        path = paths[i]
        mnd = ct.nodes[mu]
        cuts_mu = set() if mnd.kind == "C" else {x for x in mnd.vertices if x in ct.cut_node}
        k = path.index(mu)
        near_c = {path.nodes[j] for j in (k - 1, k + 1) if 0 <= j < len(path.nodes) and ct.nodes[path.nodes[j]].kind == "C"}
        for nu in path.nodes[1:-1]:
            nn = ct.nodes[nu]
            hit = nu == mu or nu in near_c
            if not hit and nn.kind != "C" and cuts_mu:
                hit = bool(cuts_mu.intersection(nn.vertices))
            if hit:
                drop.setdefault(nu, set()).add(i)
    out = {}
    for x, lst in p.items():
        kept = [i for i in lst if i not in drop.get(x, ())]
        # every participant already tolerates any choice here, so keep them all
        out[x] = kept if kept else list(lst)
    return out


# ---------------------------------------------------------------------------
# step 4: vote and realize


def semi_majority(votes: list[tuple[int, NodePreference]]) -> NodePreference | None:
    """Most frequent preference; ties go to the one contributed by the lowest index."""
    if not votes:
        return None
    cnt = Counter(p for _, p in votes)
    first: dict[NodePreference, int] = {}
    for i, p in votes:
        first.setdefault(p, i)
    return min(cnt, key=lambda p: (-cnt[p], first[p]))


def merge_preferences(prefs: list[ChainPreference], chosen: dict[int, list[int]]) -> dict[int, NodePreference]:
    out = {}
    for nu in sorted(chosen):
        votes = [(i, prefs[i].prefs[nu]) for i in sorted(chosen[nu]) if nu in prefs[i].prefs]
        win = semi_majority(votes)
        if win is not None:
            out[nu] = win
    return out


def _check_peers(ct: ConTree, pref: NodePreference) -> None:
    nbrs = set(ct.d_neighbors(pref.node))
    if pref.peers[0] == pref.peers[1] or not set(pref.peers) <= nbrs:
        raise MalformedPreference(f"peers {pref.peers} are not neighbours of node {pref.node}")


def realize(ct: ConTree, sk: Skeletons, prefs: dict[int, NodePreference]):
    """An embedding honoring ``prefs``; returns (embedding, choice, spins)."""
    for p in prefs.values():
        _check_peers(ct, p)
    spins: dict = {}
    choice = EmbeddingChoice()
    for b, ids in enumerate(ct.block_nodes):
        order = [ids[0]]
        for nid in order:
            order.extend(ch for _, ch in ct.nodes[nid].children)
        for nid in order:
            _realize_node(ct, sk, nid, prefs.get(nid), spins, choice)
    glue = Glue(sk, choice)
    placements = _realize_cuts(ct, sk, glue, prefs, spins)
    choice.placements = placements
    emb = assemble(ct, sk, choice)
    return emb, choice, spins


def _own_vars(ct: ConTree, nid: int) -> list:
    nd = ct.nodes[nid]
    out = [("v", ~s) for s in nd.edges if s < 0]
    if nd.kind == "S":
        out.extend(("cs", x, nid) for x in nd.vertices if x in ct.cut_node)
    return out


def _realize_node(ct, sk, nid, pref, spins, choice) -> None:
    nd = ct.nodes[nid]
    parent_var = ("v", nd.parent_vid) if nd.parent >= 0 else None
    if nd.kind == "R":
        flip = parent_var is not None and spins.get(parent_var) is False
        choice.r_flip[nid] = flip
        for v in _own_vars(ct, nid):
            spins[v] = not flip
        return
    if nd.kind == "S" and pref is not None:
        v1 = spin_var(ct, nid, pref.peers[0])
        v2 = spin_var(ct, nid, pref.peers[1])
        want_diff = pref.label == SWITCHING
        if v2 in spins and v1 not in spins:
            v1, v2 = v2, v1
        spins.setdefault(v1, True)
        spins[v2] = spins[v1] != want_diff
    elif nd.kind == "P" and pref is not None:
        _realize_p(ct, sk, nid, pref, spins, choice)
    for v in _own_vars(ct, nid):
        spins.setdefault(v, True)


def _realize_p(ct, sk, nid, pref, spins, choice) -> None:
    a, b = pref.peers
    va, vb = ("v", link_vid(ct, nid, a)), ("v", link_vid(ct, nid, b))
    if vb in spins and va not in spins:
        a, b, va, vb = b, a, vb, va
    ea, eb = ~va[1], ~vb[1]
    p, q = ct.nodes[nid].vertices
    ta = sk.cycles[a].fwd_tail[ea]
    tb = sk.cycles[b].fwd_tail[eb]
    case1 = (ta == q, tb == p)
    if va in spins and spins[va] != case1[0]:
        # e_a directly after e_b
        spins[va] = not case1[0]
        spins[vb] = not case1[1]
        first, second = eb, ea
    else:
        spins[va] = case1[0]
        spins[vb] = case1[1]
        first, second = ea, eb
    order = [s for s in sk.p_default(nid) if s != second]
    i = order.index(first)
    order.insert(i + 1, second)
    choice.p_order[nid] = order


def _peer_angle(ct, sk, glue: Glue, nid: int, c: int, pref: NodePreference, spins) -> int:
    """Real edge of the peer's block after which the preferred face lies at ``c``."""
    nd = ct.nodes[nid]
    if nd.kind == "D":
        x, y = nd.vertices
        es = sorted(nd.edges)
        return es[-1] if c == x else es[0]
    if nd.kind == "S":
        cyc = sk.cycles[nid]
        s = cyc.out_edge(c) if spins.get(("cs", c, nid), True) else cyc.back_edge(c)
        return glue.run_last(nid, c, s)
    if nd.kind == "R":
        face = dict(pref.faces)[nid]
        table = sk.r_face_table(nid)
        flipped = glue.choice.r_flip.get(nid, False)
        for s in glue.rot(nid)[c]:
            if flipped:
                u, v = ct.skel_endpoints(s)
                f = table[(s, v if u == c else u)]
            else:
                f = table[(s, c)]
            if f == face:
                return glue.run_last(nid, c, s)
        raise MalformedPreference(f"face {face} of node {nid} does not touch vertex {c}")
    raise MalformedPreference(f"unexpected peer kind {nd.kind}")


def _realize_cuts(ct, sk, glue: Glue, prefs, spins) -> dict[int, list[tuple[int, int, int, int]]]:
    out = {}
    for c in ct.bc.cuts:
        host = ct.bc.cut_parent[c]
        hrot = glue.block_rotation(host, c)
        pref = prefs.get(ct.cut_node[c])
        placed = []
        special = {}
        if pref is not None:
            m1, m2 = pref.peers
            h1, h2 = ct.nodes[m1].block, ct.nodes[m2].block
            a1 = _peer_angle(ct, sk, glue, m1, c, pref, spins)
            a2 = _peer_angle(ct, sk, glue, m2, c, pref, spins)
            if h2 == host:
                h1, h2, a1, a2 = h2, h1, a2, a1
            if h1 == host:
                special[h2] = (h2, h1, a1, a2)
            else:
                special[h1] = (h1, host, hrot[0], a1)
                special[h2] = (h2, h1, a1, a2)
        for b in ct.bc.vertex_blocks[c]:
            if b == host:
                continue
            if b in special:
                continue
            own = glue.block_rotation(b, c)
            placed.append((b, host, hrot[0], own[0]))
        # hosts first: the non-host special block hangs off the host directly
        sp = sorted(special.values(), key=lambda t: t[1] != host)
        out[c] = sp + placed
    return out


# ---------------------------------------------------------------------------
# driver


@dataclass
class MeiReport:
    mode: str
    n: int
    m: int
    k: int
    delta: int
    ins_values: list[int]
    walk_lengths: list[int]
    crossings_with_G: int
    crossings_F_F: int
    total: int
    ins_sigma: int
    guarantee_weak: int
    guarantee_strong: int
    cr_bound: dict
    defects: list[int] | None = None
    pivots: list[int] | None = None
    embedding: PlaneEmbedding | None = None
    walks: list = field(default_factory=list)
    wall_time: float | None = None

    @property
    def guarantee(self) -> int:
        return self.guarantee_strong if self.mode == STRONG else self.guarantee_weak

    def to_dict(self, dump_embedding: bool = False) -> dict:
        d = {
            "mode": self.mode,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "delta": self.delta,
            "ins_values": self.ins_values,
            "ins_sigma": self.ins_sigma,
            "walk_lengths": self.walk_lengths,
            "crossings_with_G": self.crossings_with_G,
            "crossings_F_F": self.crossings_F_F,
            "total": self.total,
            "guarantee_weak": self.guarantee_weak,
            "guarantee_strong": self.guarantee_strong,
            "bound_weak": self.ins_sigma + self.guarantee_weak,
            "bound_strong": self.ins_sigma + self.guarantee_strong,
            "cr_bound": self.cr_bound,
        }
        if dump_embedding and self.embedding is not None:
            d["rotation"] = self.embedding.edge_rotation()
        if self.wall_time is not None:
            d["wall_time"] = self.wall_time
        return d


@dataclass
class MeiState:
    """Intermediate results, kept for inspection and tests."""

    ct: ConTree
    sk: Skeletons
    ctx: InsertionContext
    paths: list[ConPath]
    ins: list[int]
    prefs: list[ChainPreference]
    chosen: dict[int, list[int]]
    merged: dict[int, NodePreference]
    sequence: SimplicialSequence | None
    embedding: PlaneEmbedding


def solve(g: Multigraph, pairs, mode: str = STRONG, ct: ConTree | None = None) -> MeiState:
    if mode not in (WEAK, STRONG):
        raise ValueError(f"unknown mode {mode!r}")
    pairs = list(pairs.pairs if isinstance(pairs, InsertionSet) else pairs)
    insertion_set(pairs).validate(g)
    ct = ct if ct is not None else ConTree(g)
    sk = Skeletons(ct)
    ctx = InsertionContext(ct, sk)
    paths = [con_path(ct, u, v) for u, v in pairs]
    results = [optimal_single_insertion(ctx, u, v, path) for (u, v), path in zip(pairs, paths)]
    ins = [r[0] for r in results]
    prefs = [r[1] for r in results]
    reconcile(ct, prefs)
    p = participation(paths)
    seq = None
    if mode == WEAK:
        chosen = select_weak(p)
    else:
        seq = good_simplicial_sequence(ct, paths)
        chosen = select_strong(ct, paths, p, seq)
    merged = merge_preferences(prefs, chosen)
    emb, _, _ = realize(ct, sk, merged)
    return MeiState(ct, sk, ctx, paths, ins, prefs, chosen, merged, seq, emb)


def run_mei(g: Multigraph, pairs, mode: str = STRONG, with_defects: bool = False) -> MeiReport:
    pairs = list(pairs.pairs if isinstance(pairs, InsertionSet) else pairs)
    return report(g, pairs, solve(g, pairs, mode), mode, with_defects)


def report(g: Multigraph, pairs, st: MeiState, mode: str, with_defects: bool = False) -> MeiReport:
    """Insert all pairs into the realized embedding and tally the result."""
    pairs = list(pairs.pairs if isinstance(pairs, InsertionSet) else pairs)
    walks, (cg, cff) = insert_edges_fixed(st.embedding, pairs)
    k = len(pairs)
    delta = max_degree(g)
    defects = None
    if with_defects:
        from .insertion import honors, specify

        spec = specify(st.embedding, st.ct, st.sk)
        defects = [honors(spec, cp.prefs.values())[0] for cp in st.prefs]
    return MeiReport(
        mode=mode,
        n=g.n,
        m=g.m,
        k=k,
        delta=delta,
        ins_values=st.ins,
        walk_lengths=[w.length for w in walks],
        crossings_with_G=cg,
        crossings_F_F=cff,
        total=cg + cff,
        ins_sigma=sum(st.ins),
        guarantee_weak=weak_guarantee(k, delta),
        guarantee_strong=strong_guarantee(k, delta),
        cr_bound=report_cr_bounds(k, delta),
        defects=defects,
        pivots=[st.sequence.pivots[i] for i in range(k)] if st.sequence else None,
        embedding=st.embedding,
        walks=walks,
    )
