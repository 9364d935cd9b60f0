"""Loopless multigraphs with dense, stable integer ids.

Vertices are ``0..n-1``; edges are numbered in insertion order.  Parallel
edges are distinct objects and keep their own ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for structural input errors."""


class LoopEdge(GraphError):
    def __init__(self, v: int):
        super().__init__(f"loop at vertex {v}")
        self.vertex = v


class VertexOutOfRange(GraphError):
    def __init__(self, v: int, n: int):
        super().__init__(f"vertex {v} outside 0..{n - 1}")
        self.vertex = v


class Disconnected(GraphError):
    pass


class NotPlanar(GraphError):
    def __init__(self, msg: str = "graph is not planar", witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class EdgeRecord:
    id: int
    u: int
    v: int

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class Multigraph:
    """Immutable loopless multigraph.

    ``eu[e]`` and ``ev[e]`` hold the endpoints of edge ``e`` in the order
    they were given.  ``incident(v)`` lists edge ids at ``v`` in ascending
    order (an edge appears once per endpoint).
    """

    __slots__ = ("n", "eu", "ev", "_inc")

    def __init__(self, n: int, eu: Sequence[int], ev: Sequence[int]):
        self.n = n
        self.eu = list(eu)
        self.ev = list(ev)
        self._inc: list[list[int]] | None = None

    @property
    def m(self) -> int:
        return len(self.eu)

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterable[EdgeRecord]:
        for e in range(len(self.eu)):
            yield EdgeRecord(e, self.eu[e], self.ev[e])

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.eu[e], self.ev[e]

    def other(self, e: int, x: int) -> int:
        u = self.eu[e]
        return self.ev[e] if x == u else u

    def incident(self, v: int) -> list[int]:
        if self._inc is None:
            inc: list[list[int]] = [[] for _ in range(self.n)]
            for e, (a, b) in enumerate(zip(self.eu, self.ev)):
                inc[a].append(e)
                inc[b].append(e)
            self._inc = inc
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def edge_list(self) -> list[tuple[int, int]]:
        return list(zip(self.eu, self.ev))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.eu == other.eu and self.ev == other.ev

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.eu), tuple(self.ev)))


def build(vertex_count: int, edge_list: Iterable[tuple[int, int]]) -> Multigraph:
    eu: list[int] = []
    ev: list[int] = []
    for u, v in edge_list:
        for x in (u, v):
            if x < 0 or x >= vertex_count:
                raise VertexOutOfRange(x, vertex_count)
        if u == v:
            raise LoopEdge(u)
        eu.append(u)
        ev.append(v)
    return Multigraph(vertex_count, eu, ev)


@dataclass(frozen=True)
class InsertionSet:
    """Multiset of vertex pairs to be inserted into a graph."""

    pairs: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __getitem__(self, i: int) -> tuple[int, int]:
        return self.pairs[i]

    def validate(self, g: Multigraph) -> None:
        for u, v in self.pairs:
            for x in (u, v):
                if x < 0 or x >= g.n:
                    raise VertexOutOfRange(x, g.n)
            if u == v:
                raise LoopEdge(u)


def insertion_set(pairs: Iterable[tuple[int, int]]) -> InsertionSet:
    return InsertionSet(tuple((int(u), int(v)) for u, v in pairs))


def max_degree(g: Multigraph) -> int:
    if g.n == 0:
        return 0
    deg = [0] * g.n
    for u, v in zip(g.eu, g.ev):
        deg[u] += 1
        deg[v] += 1
    return max(deg)


def is_connected(g: Multigraph) -> bool:
    if g.n <= 1:
        return True
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        x = stack.pop()
        for e in g.incident(x):
            y = g.other(e, x)
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == g.n


def blocks_and_cuts(g: Multigraph) -> tuple[list[list[int]], set[int]]:
    """Partition edges into blocks and return the cut vertices.

    Blocks come out in the order their DFS finishes, with edge ids sorted
    inside each block.  Iterative, so deep graphs are fine.
    """
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    n = g.n
    if g.m == 0:
        return [], set()
    disc = [-1] * n
    low = [0] * n
    blocks: list[list[int]] = []
    cuts: set[int] = set()
    estack: list[int] = []
    t = 0
    root = 0
    disc[root] = low[root] = t
    t += 1
    root_children = 0
    # frame: (vertex, edge used to enter, index into incidence list)
    stack = [[root, -1, 0]]
    inc = [g.incident(v) for v in range(n)]
    eu, ev = g.eu, g.ev
    while stack:
        fr = stack[-1]
        x, pe, i = fr
        lst = inc[x]
        if i < len(lst):
            fr[2] = i + 1
            e = lst[i]
            if e == pe:
                continue
            y = ev[e] if eu[e] == x else eu[e]
            if disc[y] == -1:
                disc[y] = low[y] = t
                t += 1
                estack.append(e)
                stack.append([y, e, 0])
            elif disc[y] < disc[x]:
                estack.append(e)
                if disc[y] < low[x]:
                    low[x] = disc[y]
        else:
            stack.pop()
            if not stack:
                break
            p = stack[-1][0]
            if low[x] < low[p]:
                low[p] = low[x]
            if low[x] >= disc[p]:
                comp = []
                while True:
                    f = estack.pop()
                    comp.append(f)
                    if f == pe:
                        break
                comp.sort()
                blocks.append(comp)
                if p == root:
                    root_children += 1
                else:
                    cuts.add(p)
    if root_children >= 2:
        cuts.add(root)
    return blocks, cuts


def block_vertices(g: Multigraph, block: Iterable[int]) -> list[int]:
    vs = set()
    for e in block:
        vs.add(g.eu[e])
        vs.add(g.ev[e])
    return sorted(vs)
