"""Optimal single-edge insertion over all embeddings, and node preferences.

A single insertion of ``v1 v2`` walks the con-path.  Only rigid nodes cost
anything: each contributes a weighted dual shortest path in its default
skeleton, where a real edge costs 1 and a virtual edge costs the cheapest
way across the graph hanging off it.  S, P, C and D nodes are free but
record what they need from the embedding in a :class:`NodePreference`.

Spins live on variables: ``("v", vid)`` for an S-node's virtual edge to an
R- or P-node, and ``("cs", c, s)`` for a cut vertex ``c`` inside S-node
``s``.  A positive spin means the neighbour side touches the S-skeleton's
default face (the face left of its fixed cycle traversal).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import kernels
from .decompose.assemble import Glue, Skeletons
from .decompose.contree import ConPath, ConTree, con_path
from .embedding import PlaneEmbedding

SWITCHING = "SWITCHING"
NONSWITCHING = "NONSWITCHING"


class NotHonored(ValueError):
    pass


class NotSubpath(ValueError):
    pass


@dataclass(frozen=True, order=True)
class NodePreference:
    node: int
    peers: tuple[int, int]
    label: str | None = None
    faces: tuple[tuple[int, int], ...] = ()

    def dump(self) -> str:
        faces = ",".join(f"{p}:{f}" for p, f in self.faces)
        return f"{self.node}: peers=({self.peers[0]},{self.peers[1]}) label={self.label or '-'} faces=[{faces}]"


def make_pref(node: int, p1: int, p2: int, label=None, faces=()) -> NodePreference:
    a, b = (p1, p2) if p1 <= p2 else (p2, p1)
    return NodePreference(node, (a, b), label, tuple(sorted(faces)))


@dataclass
class ChainPreference:
    path: ConPath
    prefs: dict[int, NodePreference] = field(default_factory=dict)

    def dump(self) -> str:
        return "\n".join(self.prefs[n].dump() for n in self.path.nodes if n in self.prefs)


@dataclass
class _RDual:
    index: dict[int, int]  # skeleton edge -> local index
    face_of: list[int]
    nfaces: int
    csr: tuple


class InsertionContext:
    """Shared caches for repeated single insertions on one graph."""

    def __init__(self, ct: ConTree, sk: Skeletons | None = None):
        self.ct = ct
        self.sk = sk if sk is not None else Skeletons(ct)
        self._cost: dict[tuple[int, int], int] = {}
        self._rdual: dict[int, _RDual] = {}
        self._rloc: dict[tuple, tuple[int, int, int]] = {}

    # duals of rigid skeletons
    def rdual(self, nid: int) -> _RDual:
        rd = self._rdual.get(nid)
        if rd is not None:
            return rd
        ct = self.ct
        nd = ct.nodes[nid]
        table = self.sk.r_face_table(nid)
        index = {s: i for i, s in enumerate(nd.edges)}
        face_of = [0] * (2 * len(nd.edges))
        for i, s in enumerate(nd.edges):
            a, b = ct.skel_endpoints(s)
            face_of[2 * i] = table[(s, a)]
            face_of[2 * i + 1] = table[(s, b)]
        nf = self.sk.rface_count[nid]
        rd = _RDual(index, face_of, nf, kernels.dual_csr(face_of, nf))
        self._rdual[nid] = rd
        return rd

    def faces_at_vertex(self, nid: int, x: int) -> list[int]:
        table = self.sk.r_face_table(nid)
        return sorted({table[(s, x)] for s in self.sk.rot[nid][x]})

    def faces_of_edge(self, nid: int, s: int) -> list[int]:
        table = self.sk.r_face_table(nid)
        a, b = self.ct.skel_endpoints(s)
        return sorted({table[(s, a)], table[(s, b)]})

    # crossing cost of expansions
    def cost(self, nid: int, vid: int) -> int:
        """Cheapest crossing of the graph hanging off ``vid`` on the far side of ``nid``."""
        key = (vid, nid)
        if key in self._cost:
            return self._cost[key]
        ct = self.ct
        stack = [(vid, nid, False)]
        while stack:
            v, frm, ready = stack.pop()
            if (v, frm) in self._cost:
                continue
            mu = ct.twin_node(v, frm)
            others = [s for s in ct.nodes[mu].edges if s != ~v]
            need = [(~s, mu) for s in others if s < 0 and (~s, mu) not in self._cost]
            if need and not ready:
                stack.append((v, frm, True))
                for w in need:
                    stack.append((w[0], w[1], False))
                continue
            self._cost[(v, frm)] = self._compute_cost(mu, v, others)
        return self._cost[key]

    def _edge_cost(self, nid: int, s: int) -> int:
        return 1 if s >= 0 else self._cost[(~s, nid)]

    def _compute_cost(self, mu: int, vid: int, others: list[int]) -> int:
        kind = self.ct.nodes[mu].kind
        if kind == "S":
            return min(self._edge_cost(mu, s) for s in others)
        if kind == "P":
            return sum(self._edge_cost(mu, s) for s in others)
        # rigid: dual path between the two faces flanking the twin, not crossing it
        rd = self.rdual(mu)
        f1, f2 = self.faces_of_edge(mu, ~vid)
        w = self._weights(mu, forbid={~vid})
        res = kernels.dijkstra_path(*rd.csr, rd.nfaces, w, [f1], [f2])
        return int(res[0])

    def _weights(self, nid: int, forbid: Iterable[int]) -> list[int]:
        nd = self.ct.nodes[nid]
        fb = set(forbid)
        for s in nd.edges:
            if s < 0 and s not in fb:
                self.cost(nid, ~s)
        out = []
        for s in nd.edges:
            if s in fb:
                out.append(-1)
            elif s >= 0:
                out.append(1)
            else:
                out.append(self._cost[(~s, nid)])
        return out

    # local path in a rigid skeleton
    def r_local(self, nid: int, src, tgt) -> tuple[int, int, int]:
        """Cheapest path between two attachments; returns (cost, start face, end face).

        An attachment is ``("x", vertex)`` or ``("v", vid)``.
        """
        if (src[0] == "v", src[1]) > (tgt[0] == "v", tgt[1]):
            # search from a canonical end so both directions agree
            c, fs, ft = self.r_local(nid, tgt, src)
            return c, ft, fs
        key = (nid, src, tgt)
        hit = self._rloc.get(key)
        if hit is not None:
            return hit
        rd = self.rdual(nid)
        forbid = [~a[1] for a in (src, tgt) if a[0] == "v"]
        w = self._weights(nid, forbid)

        def faces(a):
            if a[0] == "x":
                return self.faces_at_vertex(nid, a[1])
            return self.faces_of_edge(nid, ~a[1])

        res = kernels.dijkstra_path(*rd.csr, rd.nfaces, w, faces(src), faces(tgt))
        if res is None:  # pragma: no cover - skeletons are connected
            raise RuntimeError("rigid skeleton dual is disconnected")
        out = (int(res[0]), res[1], res[2])
        self._rloc[key] = out
        return out


def link_vid(ct: ConTree, a: int, b: int) -> int:
    na, nb = ct.nodes[a], ct.nodes[b]
    if na.parent == b:
        return na.parent_vid
    if nb.parent == a:
        return nb.parent_vid
    raise ValueError(f"nodes {a} and {b} are not tree neighbours")


def spin_var(ct: ConTree, s_node: int, nbr: int) -> tuple:
    nb = ct.nodes[nbr]
    if nb.kind == "C":
        return ("cs", nb.cut, s_node)
    return ("v", link_vid(ct, s_node, nbr))


def _attachment(ct: ConTree, path: ConPath, i: int, side: int):
    """How position ``i`` of the path is entered (side=-1) or left (side=+1)."""
    nodes = path.nodes
    j = i + side
    if 0 <= j < len(nodes) and ct.nodes[nodes[j]].kind != "C":
        return ("v", link_vid(ct, nodes[i], nodes[j]))
    # border vertex of the enclosing block segment
    b = ct.nodes[nodes[i]].block
    for blk, w1, w2 in path.borders:
        if blk == b:
            return ("x", w1 if side < 0 else w2)
    raise RuntimeError("block not on path")


def optimal_single_insertion(ctx: InsertionContext, v1: int, v2: int, path: ConPath | None = None):
    """Return ``(ins, ChainPreference)`` for inserting ``v1 v2``."""
    ct = ctx.ct
    if v1 == v2:
        raise ValueError("SameVertex")
    if path is None:
        path = con_path(ct, v1, v2)
    nodes = path.nodes
    total = 0
    rfaces: dict[int, tuple[int, int]] = {}
    for i, nid in enumerate(nodes):
        if ct.nodes[nid].kind == "R":
            c, fs, ft = ctx.r_local(nid, _attachment(ct, path, i, -1), _attachment(ct, path, i, +1))
            total += c
            rfaces[i] = (fs, ft)
    prefs: dict[int, NodePreference] = {}
    for i in range(1, len(nodes) - 1):
        nid = nodes[i]
        kind = ct.nodes[nid].kind
        prev, nxt = nodes[i - 1], nodes[i + 1]
        if kind == "P":
            prefs[nid] = make_pref(nid, prev, nxt)
        elif kind == "S":
            a_prev = _s_attach_flag(ctx, nid, prev, rfaces.get(i - 1, (None, None))[1])
            a_next = _s_attach_flag(ctx, nid, nxt, rfaces.get(i + 1, (None, None))[0])
            prefs[nid] = make_pref(nid, prev, nxt, SWITCHING if a_prev != a_next else NONSWITCHING)
        elif kind == "C":
            faces = []
            if ct.nodes[prev].kind == "R":
                faces.append((prev, rfaces[i - 1][1]))
            if ct.nodes[nxt].kind == "R":
                faces.append((nxt, rfaces[i + 1][0]))
            prefs[nid] = make_pref(nid, prev, nxt, None, faces)
    return total, ChainPreference(path, prefs)


def _s_attach_flag(ctx: InsertionContext, s_node: int, nbr: int, rface) -> bool:
    """True when the neighbour's exit face sits on the S default side at positive spin."""
    ct = ctx.ct
    if ct.nodes[nbr].kind != "R":
        return True
    vid = link_vid(ct, s_node, nbr)
    cyc = ctx.sk.cycles[s_node]
    x, y = ct.vend[vid]
    tail = cyc.fwd_tail[~vid]
    head = y if tail == x else x
    table = ctx.sk.r_face_table(nbr)
    return rface == table[(~vid, head)]


def restrict_preference(pref: ChainPreference, to_subpath: ConPath) -> ChainPreference:
    nodes = pref.path.nodes
    sub = to_subpath.nodes
    k = len(sub)
    if k == 0 or k > len(nodes):
        raise NotSubpath("empty or too long")
    if tuple(nodes[:k]) == tuple(sub):
        pass
    elif tuple(nodes[-k:]) == tuple(sub):
        pass
    else:
        raise NotSubpath("not a prefix or suffix")
    inner = set(sub[1:-1])
    return ChainPreference(to_subpath, {n: p for n, p in pref.prefs.items() if n in inner})


# ---------------------------------------------------------------------------
# embedding specifications


class Specification:
    """Embedding-derived data, computed lazily per node or cut vertex."""

    def __init__(self, emb: PlaneEmbedding, ct: ConTree, sk: Skeletons):
        self.emb = emb
        self.ct = ct
        self.sk = sk
        self._flip: dict[int, bool] = {}
        self._block_rot: dict[tuple[int, int], list[int]] = {}
        self._glue = None

    def block_rotation(self, b: int, x: int) -> list[int]:
        key = (b, x)
        r = self._block_rot.get(key)
        if r is None:
            bn = self.ct.real_node
            nodes = self.ct.nodes
            r = [d >> 1 for d in self.emb.rotation[x] if nodes[bn[d >> 1]].block == b]
            self._block_rot[key] = r
        return r

    def skeleton_cycle(self, nid: int, x: int) -> list[int]:
        """Induced cyclic order of ``nid``'s skeleton edges at ``x``."""
        nd = self.ct.nodes[nid]
        seq = [self.ct.skeleton_edge_of_real(nid, e) for e in self.block_rotation(nd.block, x)]
        out: list[int] = []
        for s in seq:
            if not out or out[-1] != s:
                out.append(s)
        while len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return out

    def r_flipped(self, nid: int) -> bool:
        if nid in self._flip:
            return self._flip[nid]
        rot = self.sk.rot[nid]
        x = next(v for v in sorted(rot) if len(rot[v]) >= 3)
        cur = self.skeleton_cycle(nid, x)
        default = rot[x]
        if _cyc_equal(cur, default):
            f = False
        elif _cyc_equal(cur, default[::-1]):
            f = True
        else:
            raise RuntimeError(f"rigid node {nid} is not embedded as a unit")
        self._flip[nid] = f
        return f

    def p_cycle(self, nid: int) -> tuple[int, ...]:
        p = self.ct.nodes[nid].vertices[0]
        cyc = self.skeleton_cycle(nid, p)
        k = min(range(len(cyc)), key=lambda i: (cyc[i] < 0, abs(cyc[i])))
        return tuple(cyc[k:] + cyc[:k])

    def c_face(self, c: int, h1: int, h2: int) -> int:
        """Real edge of block ``h1`` after which block ``h2`` sits at ``c``."""
        bn = self.ct.real_node
        nodes = self.ct.nodes
        last = None
        seq = [d >> 1 for d in self.emb.rotation[c]]
        for e in seq:
            b = nodes[bn[e]].block
            if b == h1:
                last = e
            elif b == h2 and last is not None:
                return last
        # h2 comes before every h1 edge: it sits after the last h1 edge cyclically
        h1_edges = [e for e in seq if nodes[bn[e]].block == h1]
        return h1_edges[-1]

    def full(self) -> dict:
        ct = self.ct
        out = {"R": {}, "P": {}, "C": {}}
        for nd in ct.nodes:
            if nd.kind == "R":
                out["R"][nd.id] = self.r_flipped(nd.id)
            elif nd.kind == "P":
                out["P"][nd.id] = self.p_cycle(nd.id)
        for c in ct.bc.cuts:
            bl = ct.bc.vertex_blocks[c]
            for h1 in bl:
                for h2 in bl:
                    if h1 != h2:
                        out["C"][(c, h1, h2)] = self.c_face(c, h1, h2)
        return out


def _cyc_equal(a: list[int], b: list[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = b.index(a[0])
    except ValueError:
        return False
    return a == b[i:] + b[:i]


def specify(emb: PlaneEmbedding, ct: ConTree, sk: Skeletons | None = None) -> Specification:
    return Specification(emb, ct, sk if sk is not None else Skeletons(ct))


# ---------------------------------------------------------------------------
# honoring


def _angle_class(spec: Specification, nid: int, c: int, a: int):
    """Classify the angle after real edge ``a`` at ``c`` relative to node ``nid``.

    Returns ``("S", spin)``, ``("R", face)``, ``("D", ok)`` or ``None`` when
    the angle lies inside a single skeleton edge's expansion.
    """
    ct = spec.ct
    nd = ct.nodes[nid]
    rot = spec.block_rotation(nd.block, c)
    i = rot.index(a)
    b = rot[(i + 1) % len(rot)]
    if nd.kind == "D":
        x, y = nd.vertices
        emax = max(nd.edges)
        if len(nd.edges) == 1:
            return ("D", True)
        if c == x:
            return ("D", a == emax)
        j = rot.index(emax)
        return ("D", a == rot[j - 1])
    sa = ct.skeleton_edge_of_real(nid, a)
    sb = ct.skeleton_edge_of_real(nid, b)
    if sa == sb:
        return None
    if nd.kind == "S":
        cyc = spec.sk.cycles[nid]
        if sa == cyc.out_edge(c):
            return ("S", True)
        return ("S", False)
    if nd.kind == "R":
        table = spec.sk.r_face_table(nid)
        if spec.r_flipped(nid):
            u, v = ct.skel_endpoints(sa)
            other = v if u == c else u
            return ("R", table[(sa, other)])
        return ("R", table[(sa, c)])
    raise RuntimeError(f"unexpected peer kind {nd.kind}")


@dataclass
class _Constraint:
    node: int
    vars: list
    check: object  # callable(values) -> bool, or None when structurally violated


def _pref_constraint(spec: Specification, pref: NodePreference, fixed: dict) -> _Constraint:
    ct = spec.ct
    nid = pref.node
    kind = ct.nodes[nid].kind
    if kind == "S":
        v1 = spin_var(ct, nid, pref.peers[0])
        v2 = spin_var(ct, nid, pref.peers[1])
        want_diff = pref.label == SWITCHING
        for v, peer in ((v1, pref.peers[0]), (v2, pref.peers[1])):
            if ct.nodes[peer].kind == "R":
                fixed[v] = not spec.r_flipped(peer)
        return _Constraint(nid, [v1, v2], lambda s1, s2: (s1 != s2) == want_diff)
    if kind == "P":
        pa, pb = pref.peers
        ea, eb = ~link_vid(ct, nid, pa), ~link_vid(ct, nid, pb)
        cyc = list(spec.p_cycle(nid))
        ia, ib = cyc.index(ea), cyc.index(eb)
        k = len(cyc)
        p, q = ct.nodes[nid].vertices
        va, vb = ("v", ~ea), ("v", ~eb)
        ta = spec.sk.cycles[pa].fwd_tail[ea]
        tb = spec.sk.cycles[pb].fwd_tail[eb]
        if cyc[(ia + 1) % k] == eb:
            want = (ta == q, tb == p)
        elif cyc[(ib + 1) % k] == ea:
            want = (ta != q, tb != p)
        else:
            return _Constraint(nid, [va, vb], None)
        return _Constraint(nid, [va, vb], lambda s1, s2: (s1, s2) == want)
    if kind == "C":
        c = ct.nodes[nid].cut
        faces = dict(pref.faces)
        mus = pref.peers
        blocks = [ct.nodes[m].block for m in mus]
        vars_ = []
        wants = []
        angles = [spec.c_face(c, blocks[j], blocks[1 - j]) for j in range(2)]
        # no third block may separate the two at c
        g = ct.graph
        fo = spec.emb.face_of
        if len({fo[2 * a if g.eu[a] == c else 2 * a + 1] for a in angles}) != 1:
            return _Constraint(nid, [], None)
        for j in range(2):
            mu = mus[j]
            a = angles[j]
            cls = _angle_class(spec, mu, c, a)
            mk = ct.nodes[mu].kind
            if cls is None:
                return _Constraint(nid, [], None)
            if mk == "S":
                vars_.append(("cs", c, mu))
                wants.append(cls[1])
            elif mk == "R":
                if cls[1] != faces.get(mu):
                    return _Constraint(nid, [], None)
            elif mk == "D":
                if not cls[1]:
                    return _Constraint(nid, [], None)
        return _Constraint(nid, vars_, lambda *vals: list(vals) == wants)
    return _Constraint(nid, [], lambda: True)


def _solve_min_violations(cons: list[_Constraint], fixed: dict) -> tuple[int, set, dict]:
    """Minimum number of violated constraints; each variable in at most two."""
    by_var: dict = {}
    for ci, c in enumerate(cons):
        for v in c.vars:
            if v not in fixed:
                by_var.setdefault(v, []).append(ci)
    for v, cs in by_var.items():
        if len(cs) > 2:
            raise RuntimeError(f"spin variable {v} shared by {len(cs)} preferences")
    seen = [False] * len(cons)
    violated: set = set()
    assign: dict = dict(fixed)
    total = 0
    for start in range(len(cons)):
        if seen[start]:
            continue
        # collect component
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            ci = stack.pop()
            comp.append(ci)
            for v in cons[ci].vars:
                for cj in by_var.get(v, ()):
                    if not seen[cj]:
                        seen[cj] = True
                        stack.append(cj)
        free = sorted({v for ci in comp for v in cons[ci].vars if v not in fixed}, key=repr)
        best = _solve_component([cons[ci] for ci in comp], free, fixed)
        cost, vals, viol = best
        total += cost
        violated.update(viol)
        assign.update(vals)
    return total, violated, assign


def _eval(c: _Constraint, vals: dict) -> bool:
    if c.check is None:
        return False
    return bool(c.check(*[vals[v] for v in c.vars]))


def _solve_component(cons: list[_Constraint], free: list, fixed: dict):
    if len(free) <= 12:
        best = None
        import itertools

        for bits in itertools.product((True, False), repeat=len(free)):
            vals = dict(fixed)
            vals.update(zip(free, bits))
            viol = [c.node for c in cons if not _eval(c, vals)]
            if best is None or len(viol) < best[0]:
                best = (len(viol), {v: vals[v] for v in free}, viol)
                if not viol:
                    break
        return best
    return _chain_dp(cons, free, fixed)


def _chain_dp(cons: list[_Constraint], free: list, fixed: dict):
    """Exact minimisation on a path/cycle of constraints linked by shared variables."""
    by_var: dict = {}
    for ci, c in enumerate(cons):
        for v in c.vars:
            if v not in fixed:
                by_var.setdefault(v, []).append(ci)
    links = {v: cs for v, cs in by_var.items() if len(cs) == 2}
    deg = [0] * len(cons)
    for cs in links.values():
        for ci in cs:
            deg[ci] += 1
    start = next((i for i, d in enumerate(deg) if d <= 1), 0)
    order = [start]
    used_links = []
    visited = {start}
    cur = start
    while True:
        nxt = None
        for v in cons[cur].vars:
            cs = links.get(v)
            if cs and v not in used_links:
                other = cs[0] if cs[1] == cur else cs[1]
                if other not in visited:
                    nxt = (v, other)
                    break
        if nxt is None:
            break
        used_links.append(nxt[0])
        visited.add(nxt[1])
        order.append(nxt[1])
        cur = nxt[1]
    closing = [v for v in links if v not in used_links]
    best = None
    import itertools

    for cl_bits in itertools.product((True, False), repeat=len(closing)):
        base = dict(fixed)
        base.update(zip(closing, cl_bits))
        # dp over order; state: value of the link variable into the next constraint
        states = {None: (0, {}, [])}
        for pos, ci in enumerate(order):
            c = cons[ci]
            in_var = used_links[pos - 1] if pos > 0 else None
            out_var = used_links[pos] if pos < len(used_links) else None
            local = [v for v in c.vars if v not in base and v != in_var and v != out_var]
            new_states: dict = {}
            for in_val, (cost, vals, viol) in states.items():
                outs = (True, False) if out_var is not None else (None,)
                for out_val in outs:
                    for bits in itertools.product((True, False), repeat=len(local)):
                        env = dict(base)
                        env.update(vals)
                        if in_var is not None:
                            env[in_var] = in_val
                        if out_var is not None:
                            env[out_var] = out_val
                        env.update(zip(local, bits))
                        ok = _eval(c, env)
                        nc = cost + (0 if ok else 1)
                        cur_best = new_states.get(out_val)
                        if cur_best is None or nc < cur_best[0]:
                            nv = dict(vals)
                            for v in c.vars:
                                if v not in fixed:
                                    nv[v] = env[v]
                            new_states[out_val] = (nc, nv, viol + ([] if ok else [c.node]))
            states = new_states
        cand = min(states.values(), key=lambda t: t[0])
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def honors(spec: Specification, prefs: Iterable[NodePreference]) -> tuple[int, set]:
    """Minimum defect of the embedding with respect to ``prefs`` and a witness set."""
    fixed: dict = {}
    cons = [_pref_constraint(spec, p, fixed) for p in prefs if p is not None]
    total, violated, _ = _solve_min_violations(cons, fixed)
    return total, violated


def derive_spins(spec: Specification, chain: ChainPreference) -> dict:
    """Spin values along an honored chain preference."""
    fixed: dict = {}
    cons = [_pref_constraint(spec, p, fixed) for p in chain.prefs.values()]
    total, _, assign = _solve_min_violations(cons, fixed)
    if total:
        raise NotHonored(f"{total} node preferences violated")
    return assign
