"""Block/cut trees, serialized SPR trees and the combined con-tree.

Node kinds: ``S`` (cycle), ``P`` (bond), ``R`` (rigid), ``D`` (a trivial
block: one edge or a bunch of parallel edges) and ``C`` (a cut vertex).
Skeleton edges are encoded as ints: a real edge keeps its id ``e >= 0``, a
virtual edge with id ``vid`` is stored as ``~vid``.  Both twins of a
virtual pair share the same ``vid``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..multigraph import Disconnected, Multigraph, blocks_and_cuts, build, is_connected
from .triconnected import NotBiconnected, split_components


def is_virtual(x: int) -> bool:
    return x < 0


def edge_key(x: int) -> tuple[int, int]:
    """Order on skeleton edges: real ones first by id, then virtual by id."""
    return (0, x) if x >= 0 else (1, ~x)


@dataclass
class Node:
    id: int
    kind: str
    block: int
    vertices: list[int]
    edges: list[int]
    cut: int = -1
    parent: int = -1  # parent node in the block tree
    parent_vid: int = -1
    children: list[tuple[int, int]] = field(default_factory=list)  # (vid, child)
    depth: int = 0


@dataclass
class BcTree:
    blocks: list[list[int]]
    block_vertices: list[list[int]]
    cuts: list[int]
    vertex_blocks: list[list[int]]
    block_parent: list[int]  # parent cut vertex or -1
    cut_parent: dict[int, int]  # cut vertex -> parent block
    block_depth: list[int]

    def is_cut(self, v: int) -> bool:
        return len(self.vertex_blocks[v]) > 1

    def path(self, v1: int, v2: int) -> list[tuple[str, int]]:
        """Shortest B/C path between the representatives of ``v1`` and ``v2``."""

        def rep(v):
            return ("C", v) if self.is_cut(v) else ("B", self.vertex_blocks[v][0])

        def up(x):
            if x[0] == "B":
                p = self.block_parent[x[1]]
                return None if p == -1 else ("C", p)
            return ("B", self.cut_parent[x[1]])

        def depth(x):
            if x[0] == "B":
                return 2 * self.block_depth[x[1]]
            return 2 * self.block_depth[self.cut_parent[x[1]]] + 1

        a, b = rep(v1), rep(v2)
        left, right = [a], [b]
        while a != b:
            if depth(a) >= depth(b):
                a = up(a)
                left.append(a)
            else:
                b = up(b)
                right.append(b)
        right.pop()
        path = left + right[::-1]
        if path[0][0] == "C":
            path = path[1:]
        if path and path[-1][0] == "C":
            path = path[:-1]
        return path


def bc_tree(g: Multigraph) -> BcTree:
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    blocks, cutset = blocks_and_cuts(g)
    bverts = []
    vblocks: list[list[int]] = [[] for _ in range(g.n)]
    for b, es in enumerate(blocks):
        vs = sorted({x for e in es for x in (g.eu[e], g.ev[e])})
        bverts.append(vs)
        for x in vs:
            vblocks[x].append(b)
    block_parent = [-1] * len(blocks)
    cut_parent: dict[int, int] = {}
    depth = [0] * len(blocks)
    if blocks:
        seen = [False] * len(blocks)
        seen[0] = True
        order = [0]
        for b in order:
            for x in bverts[b]:
                if len(vblocks[x]) > 1 and x not in cut_parent and block_parent[b] != x:
                    cut_parent[x] = b
                    for b2 in vblocks[x]:
                        if not seen[b2]:
                            seen[b2] = True
                            block_parent[b2] = x
                            depth[b2] = depth[b] + 1
                            order.append(b2)
    return BcTree(blocks, bverts, sorted(cutset), vblocks, block_parent, cut_parent, depth)


class TooSmall(ValueError):
    pass


@dataclass
class SprTree:
    """Skeletons of a biconnected graph.

    Component edges are real edge ids (``>= 0``) or ``~vid`` for virtual
    edge ``vid`` joining ``vend[vid]``; each virtual edge lies in exactly
    two components.
    """

    n: int
    components: list[tuple[str, list[int]]]
    vend: list[tuple[int, int]]

    def owners(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for ci, (_, es) in enumerate(self.components):
            for x in es:
                if x < 0:
                    out.setdefault(~x, []).append(ci)
        return out

    def tree_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(v)) for v in self.owners().values())


def spr_tree(block: Multigraph, check: bool = True) -> SprTree:
    """S/P/R decomposition of a biconnected multigraph with at least 3 vertices."""
    if block.n < 3:
        raise TooSmall("blocks with fewer than 3 vertices have no SPR tree")
    if check:
        if not is_connected(block):
            raise NotBiconnected("graph is not connected")
        _, cuts = blocks_and_cuts(block)
        if cuts:
            raise NotBiconnected(f"cut vertices {sorted(cuts)}")
    res = split_components(block.n, list(zip(block.eu, block.ev)))
    m = res.m
    vmap: dict[int, int] = {}
    vend: list[tuple[int, int]] = []
    comps = []
    for kind, ces in res.components:
        out = []
        for le in ces:
            if le < m:
                out.append(le)
            else:
                if le not in vmap:
                    x, y = res.endpoints(le)
                    vmap[le] = len(vend)
                    vend.append((min(x, y), max(x, y)))
                out.append(~vmap[le])
        comps.append((kind, out))
    return SprTree(block.n, comps, vend)


def serialize_sspr(t: SprTree) -> SprTree:
    """Subdivide every tree edge without an S end by a two-edge S-node."""
    comps = [(k, list(es)) for k, es in t.components]
    vend = list(t.vend)
    extra = []
    owners = t.owners()
    for vid in sorted(owners):
        a, c = owners[vid]
        if comps[a][0] != "S" and comps[c][0] != "S":
            v2 = len(vend)
            vend.append(vend[vid])
            comps[c] = (comps[c][0], [~v2 if z == ~vid else z for z in comps[c][1]])
            extra.append(("S", [~vid, ~v2]))
    return SprTree(t.n, comps + extra, vend)


class ConTree:
    """BC-tree with a serialized SPR tree per nontrivial block and D-nodes."""

    def __init__(self, g: Multigraph):
        self.graph = g
        self.bc = bc_tree(g)
        self.nodes: list[Node] = []
        self.vend: list[tuple[int, int]] = []  # vid -> (x, y), x < y
        self.vnodes: list[list[int]] = []  # vid -> [node, node]
        self.real_node = [-1] * g.m
        self.block_nodes: list[list[int]] = []
        self.block_root: list[int] = []
        for b, es in enumerate(self.bc.blocks):
            self._build_block(b, es)
        self.vertex_nodes: list[list[int]] = [[] for _ in range(g.n)]
        for nd in self.nodes:
            for x in nd.vertices:
                self.vertex_nodes[x].append(nd.id)
        self.cut_node: dict[int, int] = {}
        for c in self.bc.cuts:
            nid = len(self.nodes)
            self.nodes.append(Node(nid, "C", -1, [c], [], cut=c))
            self.cut_node[c] = nid
        self._root_trees()

    # construction
    def _new_vid(self, x: int, y: int) -> int:
        self.vend.append((x, y) if x < y else (y, x))
        self.vnodes.append([])
        return len(self.vend) - 1

    def _add_node(self, kind: str, block: int, edges: list[int]) -> Node:
        g = self.graph
        vs = set()
        for x in edges:
            if x >= 0:
                vs.add(g.eu[x])
                vs.add(g.ev[x])
            else:
                vs.update(self.vend[~x])
        nd = Node(len(self.nodes), kind, block, sorted(vs), edges)
        self.nodes.append(nd)
        for x in edges:
            if x >= 0:
                self.real_node[x] = nd.id
            else:
                self.vnodes[~x].append(nd.id)
        return nd

    def _build_block(self, b: int, es: list[int]) -> None:
        g = self.graph
        verts = self.bc.block_vertices[b]
        ids: list[int] = []
        if len(verts) == 2:
            ids.append(self._add_node("D", b, sorted(es)).id)
        else:
            local = {x: i for i, x in enumerate(verts)}
            blk = build(len(verts), [(local[g.eu[e]], local[g.ev[e]]) for e in es])
            t = serialize_sspr(spr_tree(blk, check=False))
            vmap = [self._new_vid(verts[x], verts[y]) for x, y in t.vend]
            for kind, out in t.components:
                mapped = [es[x] if x >= 0 else ~vmap[~x] for x in out]
                ids.append(self._add_node(kind, b, sorted(mapped, key=edge_key)).id)
        self.block_nodes.append(ids)
        self.block_root.append(ids[0])

    def _root_trees(self) -> None:
        for b, ids in enumerate(self.block_nodes):
            root = ids[0]
            order = [root]
            self.nodes[root].parent = -1
            seen = {root}
            for nid in order:
                nd = self.nodes[nid]
                for x in nd.edges:
                    if x >= 0:
                        continue
                    vid = ~x
                    a, c = self.vnodes[vid]
                    other = c if a == nid else a
                    if other in seen:
                        continue
                    seen.add(other)
                    ch = self.nodes[other]
                    ch.parent = nid
                    ch.parent_vid = vid
                    ch.depth = nd.depth + 1
                    nd.children.append((vid, other))
                    order.append(other)
        # Euler intervals for subtree tests
        self.tin = [0] * len(self.nodes)
        self.tout = [0] * len(self.nodes)
        t = 0
        for b, ids in enumerate(self.block_nodes):
            stack = [(ids[0], 0)]
            while stack:
                nid, i = stack.pop()
                if i == 0:
                    self.tin[nid] = t
                    t += 1
                ch = self.nodes[nid].children
                if i < len(ch):
                    stack.append((nid, i + 1))
                    stack.append((ch[i][1], 0))
                else:
                    self.tout[nid] = t

    # queries
    def twin_node(self, vid: int, nid: int) -> int:
        a, c = self.vnodes[vid]
        return c if a == nid else a

    def tree_neighbors(self, nid: int) -> list[tuple[int, int]]:
        """``(vid, neighbour)`` pairs in the node's block tree."""
        nd = self.nodes[nid]
        if nd.kind == "C":
            return []
        return [(~x, self.twin_node(~x, nid)) for x in nd.edges if x < 0]

    def in_subtree(self, anc: int, nid: int) -> bool:
        return self.tin[anc] <= self.tin[nid] < self.tout[anc]

    def toward(self, nid: int, target: int) -> int:
        """Skeleton edge of ``nid`` whose expansion contains node ``target``."""
        if target == nid:
            raise ValueError("same node")
        nd = self.nodes[nid]
        if self.in_subtree(nid, target):
            for vid, ch in nd.children:
                if self.in_subtree(ch, target):
                    return ~vid
        return ~nd.parent_vid

    def skeleton_edge_of_real(self, nid: int, e: int) -> int:
        """Skeleton edge of ``nid`` that represents real edge ``e``."""
        host = self.real_node[e]
        return e if host == nid else self.toward(nid, host)

    def skel_endpoints(self, x: int) -> tuple[int, int]:
        if x >= 0:
            return self.graph.eu[x], self.graph.ev[x]
        return self.vend[~x]

    def mates(self, v: int) -> list[int]:
        return self.vertex_nodes[v]

    def d_neighbors(self, nid: int) -> list[int]:
        """Neighbours in the decomposition graph."""
        nd = self.nodes[nid]
        if nd.kind == "C":
            return [m for m in self.vertex_nodes[nd.cut] if self.nodes[m].kind != "P"]
        out = [mu for _, mu in self.tree_neighbors(nid)]
        if nd.kind != "P":
            for x in nd.vertices:
                if x in self.cut_node:
                    out.append(self.cut_node[x])
        return out

    def d_adjacent(self, a: int, b: int) -> bool:
        na, nb = self.nodes[a], self.nodes[b]
        if na.kind == "C" or nb.kind == "C":
            if na.kind == "C" and nb.kind == "C":
                return False
            c, o = (na, nb) if na.kind == "C" else (nb, na)
            return o.kind != "P" and c.cut in o.vertices
        if na.block != nb.block:
            return False
        return na.parent == b or nb.parent == a

    def tree_path(self, a: int, b: int) -> list[int]:
        left, right = [a], [b]
        nodes = self.nodes
        while a != b:
            if nodes[a].depth >= nodes[b].depth:
                a = nodes[a].parent
                left.append(a)
            else:
                b = nodes[b].parent
                right.append(b)
        right.pop()
        return left + right[::-1]

    def block_of_vertex_nodes(self, b: int, x: int) -> list[int]:
        return [nid for nid in self.vertex_nodes[x] if self.nodes[nid].block == b]

    def dump(self) -> str:
        lines = []
        for nd in self.nodes:
            if nd.kind == "C":
                lines.append(f"{nd.id} C [{nd.cut}] []")
                continue
            parts = []
            for x in nd.edges:
                if x >= 0:
                    parts.append(f"r{x}")
                else:
                    parts.append(f"v{~x}({self.twin_node(~x, nd.id)})")
            verts = " ".join(map(str, nd.vertices))
            lines.append(f"{nd.id} {nd.kind} [{verts}] [{' '.join(parts)}]")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ConPath:
    v1: int
    v2: int
    nodes: tuple[int, ...]
    borders: tuple[tuple[int, int, int], ...]  # (block, w1, w2) in path order

    def __len__(self) -> int:
        return len(self.nodes)

    def index(self, nid: int) -> int:
        return self.nodes.index(nid)


def con_tree(g: Multigraph) -> ConTree:
    return ConTree(g)


def con_path(ct: ConTree, v1: int, v2: int) -> ConPath:
    if v1 == v2:
        raise ValueError("con-path endpoints coincide")
    bpath = ct.bc.path(v1, v2)
    nodes: list[int] = []
    borders = []
    for i, (kind, b) in enumerate(bpath):
        if kind == "C":
            nodes.append(ct.cut_node[b])
            continue
        w1 = v1 if i == 0 else bpath[i - 1][1]
        w2 = v2 if i == len(bpath) - 1 else bpath[i + 1][1]
        borders.append((b, w1, w2))
        nodes.extend(_block_segment(ct, b, w1, w2))
    return ConPath(v1, v2, tuple(nodes), tuple(borders))


def _block_segment(ct: ConTree, b: int, w1: int, w2: int) -> list[int]:
    n1 = ct.block_of_vertex_nodes(b, w1)
    n2 = ct.block_of_vertex_nodes(b, w2)
    common = set(n1) & set(n2)
    if common:
        # degenerate case: first node in id order, parallel nodes last
        return [min(common, key=lambda x: (ct.nodes[x].kind == "P", x))]
    s1, s2 = set(n1), set(n2)
    path = ct.tree_path(min(n1), min(n2))
    i = max(k for k, x in enumerate(path) if x in s1)
    j = min(k for k, x in enumerate(path) if x in s2 and k >= i)
    return path[i : j + 1]


class NonContiguous(RuntimeError):
    pass


def con_path_intersection(p1: ConPath, p2: ConPath) -> tuple[int, ...]:
    s2 = set(p2.nodes)
    shared = [x for x in p1.nodes if x in s2]
    if not shared:
        return ()
    i = p1.nodes.index(shared[0])
    if tuple(p1.nodes[i : i + len(shared)]) != tuple(shared):
        raise NonContiguous("intersection not contiguous in first path")
    j2 = [p2.nodes.index(x) for x in shared]
    lo, hi = min(j2), max(j2)
    if hi - lo + 1 != len(shared):
        raise NonContiguous("intersection not contiguous in second path")
    return tuple(shared)
