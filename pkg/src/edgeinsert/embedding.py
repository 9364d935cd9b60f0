"""Combinatorial plane embeddings: rotation systems, faces, dual walks.

A dart is an oriented edge end: dart ``2e`` leaves ``eu[e]``, dart ``2e+1``
leaves ``ev[e]``.  ``rotation[v]`` is the counter-clockwise cyclic order of
darts leaving ``v``.  The angle from a dart to its rotation successor
belongs to the face that contains that dart.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .multigraph import GraphError, Multigraph


class MalformedRotation(GraphError):
    pass


def dart_tail(g: Multigraph, d: int) -> int:
    e = d >> 1
    return g.ev[e] if d & 1 else g.eu[e]


def dart_head(g: Multigraph, d: int) -> int:
    e = d >> 1
    return g.eu[e] if d & 1 else g.ev[e]


class PlaneEmbedding:
    """Rotation system of a connected multigraph, with lazily derived faces."""

    def __init__(self, graph: Multigraph, rotation: list[list[int]], check: bool = True):
        self.graph = graph
        self.rotation = rotation
        nd = 2 * graph.m
        rot_prev = [-1] * nd
        rot_next = [-1] * nd
        for v, darts in enumerate(rotation):
            k = len(darts)
            for i, d in enumerate(darts):
                if check:
                    if d < 0 or d >= nd or rot_prev[d] != -1:
                        raise MalformedRotation(f"dart {d} repeated or invalid at {v}")
                    if dart_tail(graph, d) != v:
                        raise MalformedRotation(f"dart {d} does not leave {v}")
                rot_prev[d] = darts[i - 1]
                rot_next[d] = darts[(i + 1) % k]
        if check and any(p == -1 for p in rot_prev):
            raise MalformedRotation("some darts missing from the rotation")
        self.rot_prev = rot_prev
        self.rot_next = rot_next
        self._faces = None
        self._csr = None

    @classmethod
    def from_neighbor_edges(cls, graph: Multigraph, order: list[list[int]]) -> "PlaneEmbedding":
        """Build from per-vertex cyclic lists of edge ids (no loops, so unambiguous)."""
        rot = []
        for v, edges in enumerate(order):
            rot.append([2 * e if graph.eu[e] == v else 2 * e + 1 for e in edges])
        return cls(graph, rot)

    # faces
    def _ensure_faces(self):
        if self._faces is None:
            if self.graph.m == 0:
                self._faces = ([], 1)
            else:
                self._faces = kernels.trace_faces(self.rot_prev)
        return self._faces

    @property
    def face_of(self) -> list[int]:
        return self._ensure_faces()[0]

    @property
    def face_count(self) -> int:
        return self._ensure_faces()[1]

    def face_walks(self) -> list[list[int]]:
        face_of, nf = self._ensure_faces()
        walks: list[list[int]] = [[] for _ in range(nf)]
        seen = [False] * len(face_of)
        for d0 in range(len(face_of)):
            if seen[d0]:
                continue
            d = d0
            w = walks[face_of[d0]]
            while not seen[d]:
                seen[d] = True
                w.append(d)
                d = self.rot_prev[d ^ 1]
        return walks

    def face_next(self, d: int) -> int:
        return self.rot_prev[d ^ 1]

    def faces_at(self, v: int) -> list[int]:
        """Faces incident to ``v``, sorted, without repetition."""
        if self.graph.m == 0:
            return [0]
        fo = self.face_of
        return sorted({fo[d] for d in self.rotation[v]})

    def euler_ok(self) -> bool:
        return self.graph.n - self.graph.m + self.face_count == 2

    def mirror(self) -> "PlaneEmbedding":
        return PlaneEmbedding(self.graph, [list(reversed(r)) for r in self.rotation], check=False)

    def csr(self):
        if self._csr is None:
            self._csr = kernels.dual_csr(self.face_of, self.face_count)
        return self._csr

    def edge_rotation(self) -> list[list[int]]:
        return [[d >> 1 for d in r] for r in self.rotation]

    def fingerprint(self, directed: bool = True) -> frozenset:
        """Face structure as a set of faces; ``directed=False`` ignores orientation."""
        out = []
        for w in self.face_walks():
            if directed:
                k = min(range(len(w)), key=lambda i: w[i]) if w else 0
                out.append(tuple(w[k:] + w[:k]))
            else:
                out.append(tuple(sorted(d >> 1 for d in w)))
        if directed:
            return frozenset(out)
        from collections import Counter

        return frozenset(Counter(out).items())


@dataclass(frozen=True)
class InsertionWalk:
    source: int
    target: int
    crossed_edges: tuple[int, ...]
    start_face: int
    end_face: int

    @property
    def length(self) -> int:
        return len(self.crossed_edges)


@dataclass(frozen=True)
class DualGraph:
    nfaces: int
    indptr: list
    adj_face: list
    adj_edge: list

    def neighbors(self, f: int):
        for i in range(self.indptr[f], self.indptr[f + 1]):
            yield self.adj_edge[i], self.adj_face[i]


def compute_faces(e: PlaneEmbedding) -> list[list[int]]:
    return e.face_walks()


def dual_graph(e: PlaneEmbedding) -> DualGraph:
    indptr, af, ae = e.csr()
    return DualGraph(e.face_count, indptr, af, ae)


def insertion_walk(e: PlaneEmbedding, v1: int, v2: int) -> InsertionWalk:
    if v1 == v2:
        raise GraphError("insertion endpoints coincide")
    src = e.faces_at(v1)
    tgt = e.faces_at(v2)
    indptr, af, ae = e.csr()
    res = kernels.bfs_path(indptr, af, ae, e.face_count, src, tgt)
    if res is None:
        raise GraphError("no dual path; embedding is not connected")
    _, start, end, edges = res
    return InsertionWalk(v1, v2, tuple(edges), start, end)


def dual_distance_all(e: PlaneEmbedding, pairs) -> list[int]:
    return [insertion_walk(e, u, v).length for u, v in pairs]


def test_and_embed(g: Multigraph) -> PlaneEmbedding:
    """Deterministic plane embedding of ``g``; raises NotPlanar or Disconnected."""
    from .decompose.assemble import default_embedding

    return default_embedding(g)


test_and_embed.__test__ = False  # keep pytest from collecting it
