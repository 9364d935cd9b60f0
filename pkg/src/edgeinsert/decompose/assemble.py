"""Skeleton embeddings and the gluing of skeletons into plane embeddings.

Every skeleton gets a fixed default rotation.  An embedding of the whole
graph is then described by an :class:`EmbeddingChoice` (R flips, P orders,
block placements at cut vertices) and produced by :func:`assemble`.

Gluing two skeletons along twin virtual edges ``e`` / ``e'`` at a pole
``x`` replaces ``e`` by the rotation of the other skeleton at ``x`` read
from just after ``e'``.  The face holding dart ``e`` (x to y) thereby merges
with the face holding dart ``e'`` (y to x).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import planarity

from ..embedding import PlaneEmbedding
from ..multigraph import Multigraph, NotPlanar
from .contree import ConTree, edge_key


def _planar_rotation(nverts: int, pairs: list[tuple[int, int]]) -> list[list[int]] | None:
    """Rotation (neighbour lists) of a simple graph, or None if nonplanar."""
    g = planarity.Graph()
    g.gp_EnsureVertexCapacity(max(nverts, 1))
    g.gp_EnsureEdgeCapacity(max(len(pairs), 3 * nverts))
    lb = g.gp_LowerBoundVertices()
    for u, v in pairs:
        g.gp_AddEdge(u + lb, 0, v + lb, 0)
    if g.gp_Embed(planarity.EMBEDFLAGS_PLANAR) != planarity.OK:
        return None
    g.gp_SortVertices()
    rot = []
    for v in range(nverts):
        e = g.gp_GetFirstEdge(v + lb)
        lst = []
        while g.gp_IsEdge(e):
            lst.append(g.gp_GetNeighbor(e) - lb)
            e = g.gp_GetNextEdge(e)
        rot.append(lst)
    return rot


def kuratowski_witness(g: Multigraph) -> list[tuple[int, int]]:
    """Edges of a Kuratowski subgraph of the simple underlying graph."""
    pairs = sorted({(min(u, v), max(u, v)) for u, v in zip(g.eu, g.ev)})
    try:
        return [tuple(sorted(p)) for p in planarity.kuratowski_edges(pairs)]
    except Exception:  # pragma: no cover - witness is best effort
        return []


@dataclass
class SCycle:
    """Cyclic traversal of an S-skeleton: edge ``edges[i]`` runs verts[i] -> verts[i+1]."""

    verts: list[int]
    edges: list[int]
    pos: dict[int, int]  # vertex -> index
    fwd_tail: dict[int, int]  # skeleton edge -> tail of its forward traversal

    def out_edge(self, x: int) -> int:
        return self.edges[self.pos[x]]

    def back_edge(self, x: int) -> int:
        return self.edges[self.pos[x] - 1]


class Skeletons:
    """Default rotations of all skeletons of a con-tree."""

    def __init__(self, ct: ConTree):
        self.ct = ct
        self.rot: dict[int, dict[int, list[int]]] = {}
        self.cycles: dict[int, SCycle] = {}
        self.rfaces: dict[int, dict[tuple[int, int], int]] = {}
        self.rface_count: dict[int, int] = {}
        for nd in ct.nodes:
            if nd.kind == "R":
                self._embed_r(nd.id)
            elif nd.kind == "S":
                self._embed_s(nd.id)
            elif nd.kind == "P":
                self.rot[nd.id] = self.p_rotation(nd.id, self.p_default(nd.id))
            elif nd.kind == "D":
                x, y = nd.vertices
                es = sorted(nd.edges)
                self.rot[nd.id] = {x: es, y: es[::-1]}

    def _embed_r(self, nid: int) -> None:
        ct = self.ct
        nd = ct.nodes[nid]
        local = {x: i for i, x in enumerate(nd.vertices)}
        pairs = []
        by_pair = {}
        for s in nd.edges:
            a, b = ct.skel_endpoints(s)
            pairs.append((local[a], local[b]))
            by_pair[(local[a], local[b])] = s
            by_pair[(local[b], local[a])] = s
        rot = _planar_rotation(len(nd.vertices), pairs)
        if rot is None:
            raise NotPlanar("a rigid component is not planar")
        self.rot[nid] = {
            nd.vertices[i]: [by_pair[(i, j)] for j in nbrs] for i, nbrs in enumerate(rot)
        }

    def _embed_s(self, nid: int) -> None:
        ct = self.ct
        nd = ct.nodes[nid]
        inc: dict[int, list[int]] = {}
        for s in nd.edges:
            a, b = ct.skel_endpoints(s)
            inc.setdefault(a, []).append(s)
            inc.setdefault(b, []).append(s)
        start = nd.vertices[0]
        first = min(inc[start], key=edge_key)
        verts, edges = [start], []
        x, s = start, first
        while True:
            edges.append(s)
            a, b = ct.skel_endpoints(s)
            y = b if a == x else a
            if y == start:
                break
            verts.append(y)
            s = inc[y][0] if inc[y][1] == s else inc[y][1]
            x = y
        pos = {v: i for i, v in enumerate(verts)}
        fwd = {edges[i]: verts[i] for i in range(len(edges))}
        cyc = SCycle(verts, edges, pos, fwd)
        self.cycles[nid] = cyc
        self.rot[nid] = {v: [cyc.out_edge(v), cyc.back_edge(v)] for v in verts}

    # P-nodes: rotation at the lower pole is the chosen cyclic order
    def p_default(self, nid: int) -> list[int]:
        return sorted(self.ct.nodes[nid].edges, key=edge_key)

    def p_rotation(self, nid: int, order: list[int]) -> dict[int, list[int]]:
        p, q = self.ct.nodes[nid].vertices
        return {p: list(order), q: list(reversed(order))}

    # faces of rigid skeletons in their default embedding
    def r_face_table(self, nid: int) -> dict[tuple[int, int], int]:
        """Map (skeleton edge, tail vertex) -> default face id."""
        if nid in self.rfaces:
            return self.rfaces[nid]
        ct = self.ct
        rot = self.rot[nid]
        prev: dict[tuple[int, int], tuple[int, int]] = {}
        for x, lst in rot.items():
            k = len(lst)
            for i, s in enumerate(lst):
                prev[(s, x)] = (lst[i - 1], x)
        face: dict[tuple[int, int], int] = {}
        nf = 0
        for dart in sorted(prev, key=lambda d: (edge_key(d[0]), d[1])):
            if dart in face:
                continue
            d = dart
            while d not in face:
                face[d] = nf
                s, x = d
                a, b = ct.skel_endpoints(s)
                y = b if a == x else a
                d = prev[(s, y)]
            nf += 1
        self.rfaces[nid] = face
        self.rface_count[nid] = nf
        return face


@dataclass
class EmbeddingChoice:
    """Free parameters of an embedding relative to the default skeletons.

    ``placements[c]`` lists ``(block, host_block, host_after, own_after)``:
    the rotation of ``block`` at ``c`` is inserted into the angle following
    real edge ``host_after`` of ``host_block``, read from just after its own
    real edge ``own_after``.  Hosts must be placed before their guests.
    """

    r_flip: dict[int, bool] = field(default_factory=dict)
    p_order: dict[int, list[int]] = field(default_factory=dict)
    placements: dict[int, list[tuple[int, int, int, int]]] = field(default_factory=dict)


def current_rotation(sk: Skeletons, choice: EmbeddingChoice, nid: int) -> dict[int, list[int]]:
    nd = sk.ct.nodes[nid]
    if nd.kind == "R" and choice.r_flip.get(nid, False):
        return {x: lst[::-1] for x, lst in sk.rot[nid].items()}
    if nd.kind == "P" and nid in choice.p_order:
        return sk.p_rotation(nid, choice.p_order[nid])
    return sk.rot[nid]


def _after(lst: list[int], s: int) -> list[int]:
    i = lst.index(s)
    return lst[i + 1 :] + lst[:i]


class Glue:
    """Block-level rotations for one choice of skeleton orientations."""

    def __init__(self, sk: Skeletons, choice: EmbeddingChoice, shared: dict | None = None):
        self.sk = sk
        self.ct = sk.ct
        self.choice = choice
        self._rot_cache: dict[int, dict[int, list[int]]] = {}
        # block rotations reused across choices that agree on the block
        self._shared = shared
        self._bkey: dict[int, tuple] = {}

    def rot(self, nid: int) -> dict[int, list[int]]:
        r = self._rot_cache.get(nid)
        if r is None:
            r = current_rotation(self.sk, self.choice, nid)
            self._rot_cache[nid] = r
        return r

    def expand(self, nid: int, x: int, seq: list[int]) -> list[int]:
        """Real edges at ``x`` obtained by expanding skeleton edges ``seq`` of ``nid``."""
        ct = self.ct
        out: list[int] = []
        stack = [(nid, iter(seq))]
        while stack:
            cur, it = stack[-1]
            s = next(it, None)
            if s is None:
                stack.pop()
                continue
            if s >= 0:
                out.append(s)
            else:
                vid = ~s
                mu = ct.twin_node(vid, cur)
                stack.append((mu, iter(_after(self.rot(mu)[x], s))))
        return out

    def block_rotation(self, b: int, x: int) -> list[int]:
        if self._shared is None:
            return self._block_rotation(b, x)
        key = (b, x, self._block_key(b))
        r = self._shared.get(key)
        if r is None:
            r = self._shared[key] = self._block_rotation(b, x)
        return r

    def _block_rotation(self, b: int, x: int) -> list[int]:
        nid = self.ct.block_of_vertex_nodes(b, x)[0]
        return self.expand(nid, x, self.rot(nid)[x])

    def _block_key(self, b: int) -> tuple:
        k = self._bkey.get(b)
        if k is None:
            ch = self.choice
            parts = []
            for n in self.ct.block_nodes[b]:
                kind = self.ct.nodes[n].kind
                if kind == "R":
                    parts.append(ch.r_flip.get(n, False))
                elif kind == "P" and n in ch.p_order:
                    parts.append(tuple(ch.p_order[n]))
            k = self._bkey[b] = tuple(parts)
        return k

    def run_last(self, nid: int, x: int, s: int) -> int:
        """Last real edge, in rotation order at ``x``, of the expansion of ``s``."""
        ct = self.ct
        cur = nid
        while s < 0:
            mu = ct.twin_node(~s, cur)
            lst = self.rot(mu)[x]
            i = lst.index(s)
            s = lst[i - 1]
            cur = mu
        return s

    def run_first(self, nid: int, x: int, s: int) -> int:
        ct = self.ct
        cur = nid
        while s < 0:
            mu = ct.twin_node(~s, cur)
            lst = self.rot(mu)[x]
            i = lst.index(s)
            s = lst[(i + 1) % len(lst)]
            cur = mu
        return s


def default_placements(ct: ConTree, glue: Glue) -> dict[int, list[tuple[int, int, int, int]]]:
    out = {}
    for c in ct.bc.cuts:
        host = ct.bc.cut_parent[c]
        hrot = glue.block_rotation(host, c)
        lst = []
        for b in ct.bc.vertex_blocks[c]:
            if b == host:
                continue
            own = glue.block_rotation(b, c)
            lst.append((b, host, hrot[0], own[0]))
        out[c] = lst
    return out


def assemble(ct: ConTree, sk: Skeletons, choice: EmbeddingChoice, shared: dict | None = None) -> PlaneEmbedding:
    """Plane embedding for ``choice``; ``shared`` caches block rotations across calls."""
    g = ct.graph
    glue = Glue(sk, choice, shared)
    rot_edges: list[list[int]] = [[] for _ in range(g.n)]
    done = [False] * g.n
    for c in ct.bc.cuts:
        host0 = ct.bc.cut_parent[c]
        places = choice.placements.get(c)
        if places is None:
            places = default_placements_at(ct, glue, c)
        base = glue.block_rotation(host0, c)
        nxt = {}
        for i, e in enumerate(base):
            nxt[e] = base[(i + 1) % len(base)]
        placed = {host0}
        for b, host, host_after, own_after in places:
            if host not in placed or b in placed:
                raise ValueError(f"bad placement order at cut vertex {c}")
            own = glue.block_rotation(b, c)
            seq = _after(own, own_after) + [own_after]
            tail = nxt[host_after]
            prev = host_after
            for e in seq:
                nxt[prev] = e
                prev = e
            nxt[prev] = tail
            placed.add(b)
        if len(placed) != len(ct.bc.vertex_blocks[c]):
            raise ValueError(f"unplaced blocks at cut vertex {c}")
        start = base[0]
        lst = [start]
        e = nxt[start]
        while e != start:
            lst.append(e)
            e = nxt[e]
        rot_edges[c] = lst
        done[c] = True
    for b in range(len(ct.bc.blocks)):
        for x in ct.bc.block_vertices[b]:
            if not done[x]:
                rot_edges[x] = glue.block_rotation(b, x)
                done[x] = True
    eu = g.eu
    rot = [[2 * e if eu[e] == x else 2 * e + 1 for e in lst] for x, lst in enumerate(rot_edges)]
    return PlaneEmbedding(g, rot, check=False)


def default_placements_at(ct: ConTree, glue: Glue, c: int) -> list[tuple[int, int, int, int]]:
    host = ct.bc.cut_parent[c]
    hrot = glue.block_rotation(host, c)
    out = []
    for b in ct.bc.vertex_blocks[c]:
        if b != host:
            own = glue.block_rotation(b, c)
            out.append((b, host, hrot[0], own[0]))
    return out


def default_embedding(g: Multigraph) -> PlaneEmbedding:
    ct = ConTree(g)
    sk = Skeletons(ct)
    return assemble(ct, sk, EmbeddingChoice())
