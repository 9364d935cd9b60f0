"""Instance generators: lower-bound constructions, hardness gadget, random graphs."""

from __future__ import annotations

import random
from collections import deque

from .embedding import test_and_embed
from .io import Instance
from .multigraph import GraphError, build, insertion_set


class BadParams(GraphError):
    pass


class BadInstance(GraphError):
    pass


# ---------------------------------------------------------------------------
# construction I: two far apart points in a hexagonal grid


def _brick_wall(rows: int, cols: int) -> list[tuple[int, int]]:
    """Hexagonal grid drawn as a brick wall on a rows x cols vertex grid."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows and (i + j) % 2 == 0:
                edges.append((v, v + cols))
    return edges


def _face_dist(emb, sources) -> list[int]:
    indptr, af, _ = emb.csr()
    dist = [-1] * emb.face_count
    q = deque()
    for s in sources:
        if dist[s] == -1:
            dist[s] = 0
            q.append(s)
    while q:
        f = q.popleft()
        for i in range(indptr[f], indptr[f + 1]):
            h = af[i]
            if dist[h] == -1:
                dist[h] = dist[f] + 1
                q.append(h)
    return dist


def gen_construction_I(r: int) -> Instance:
    """Hex grid with ``a, b`` subdividing two edges at dual distance >= r."""
    if r < 1:
        raise BadParams("r must be >= 1")
    rows, cols = 2 * r + 4, 6 * r + 10
    edges = _brick_wall(rows, cols)
    g = build(rows * cols, edges)
    emb = test_and_embed(g)
    fo = emb.face_of
    size = [0] * emb.face_count
    for f in fo:
        size[f] += 1
    outer = max(range(emb.face_count), key=lambda f: (size[f], -f))
    depth = _face_dist(emb, [outer])
    mid = rows // 2
    row = [e for e, (u, v) in enumerate(edges) if u // cols == mid and v == u + 1]
    faces = lambda e: (fo[2 * e], fo[2 * e + 1])
    inner = [e for e in row if min(depth[f] for f in faces(e)) >= r]
    e1 = inner[0]
    d1 = _face_dist(emb, faces(e1))
    e2 = next(e for e in inner if min(d1[f] for f in faces(e)) >= r)
    a, b = g.n, g.n + 1
    out = []
    for e, (u, v) in enumerate(edges):
        if e == e1:
            out += [(u, a), (a, v)]
        elif e == e2:
            out += [(u, b), (b, v)]
        else:
            out.append((u, v))
    return Instance(build(g.n + 2, out), insertion_set([(a, b)]), lb=r)


# ---------------------------------------------------------------------------
# construction II: antipodal pairs on one face


def gen_construction_II(l: int) -> Instance:
    """Concentric 2l-cycles with rungs; pairs join antipodal outer vertices."""
    if l < 2:
        raise BadParams("l must be >= 2")
    L = 2 * l
    layers = l + 1
    edges = []
    for c in range(layers):
        for i in range(L):
            edges.append((c * L + i, c * L + (i + 1) % L))
            if c + 1 < layers:
                edges.append((c * L + i, (c + 1) * L + i))
    pairs = [(i, i + l) for i in range(l)]
    return Instance(build(layers * L, edges), insertion_set(pairs), lb=l * (l - 1) // 2)


# ---------------------------------------------------------------------------
# construction III: recursive bolts


class _Builder:
    def __init__(self, bunch: int):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.bunch = bunch

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def line(self, u: int, v: int) -> None:
        self.edges.extend([(u, v)] * self.bunch)

    def gadget(self, q: int, m: int, marked: list[int | None]) -> list[int]:
        """Cylinder of 2m cycles with q marked vertices on the outside.

        ``marked[i]`` reuses an existing vertex for the i-th marked vertex.
        Returns the marked vertices in order around the outer face.
        """
        seg = 4 * m + 4
        length = q * seg
        rings = [[self.vertex() for _ in range(length)] for _ in range(2 * m)]
        for c, ring in enumerate(rings):
            for i in range(length):
                self.line(ring[i], ring[(i + 1) % length])
                if c + 1 < len(rings):
                    self.line(ring[i], rings[c + 1][i])
        out = []
        for j in range(q):
            v = marked[j] if marked[j] is not None else self.vertex()
            self.line(v, rings[0][j * seg])
            self.line(v, rings[0][j * seg + 2])
            out.append(v)
        return out

    def recursive(self, d: int, m: int, poles: tuple[int | None, int | None]) -> list[int]:
        """Attach a copy of the level-d piece to ``poles``; return its terminals."""
        x, y = poles
        if d == 1:
            x, s2, y, s1 = self.gadget(4, m, [x, None, y, None])
            return [s1, s2]
        x, x2, y2, y, y1, x1 = self.gadget(6, m, [x, None, None, y, None, None])
        return self.recursive(d - 1, m, (x1, y1)) + self.recursive(d - 1, m, (x2, y2))


def gen_construction_III(m: int, delta: int) -> Instance:
    """Recursive bolt construction with m pairs; lower bound delta*m*log2(m)/2."""
    if delta < 4 or delta % 4:
        raise BadParams("delta must be a positive multiple of 4")
    if m < 2 or m & (m - 1):
        raise BadParams("m must be a power of two >= 2")
    d = m.bit_length() - 1
    b = _Builder(delta // 4)
    x, xt, yt, y, ys, xs = b.gadget(6, m, [None] * 6)
    s = b.recursive(d, m, (xs, ys))
    t = b.recursive(d, m, (xt, yt))
    lb = delta * m * d // 2
    return Instance(build(b.n, b.edges), insertion_set(zip(s, t)), lb=lb)


# ---------------------------------------------------------------------------
# hardness gadget: vertices on a line, two sides


def gen_ziegler(h_edges, n: int, l: int) -> Instance:
    """Rigid two-sided frame on ``v_0..v_{n-1}, w_a, w_b``; pairs are ``h_edges``.

    Every frame edge becomes a bunch of |E|^2 parallel edges.  The budget
    is ``l``.
    """
    if n < 3:
        raise BadInstance("need at least three line vertices")
    h_edges = [tuple(e) for e in h_edges]
    for u, v in h_edges:
        if not (0 <= u < n and 0 <= v < n):
            raise BadInstance(f"pair ({u}, {v}) out of range")
        if abs(u - v) <= 1:
            raise BadInstance(f"pair ({u}, {v}) is a loop or joins line neighbours")
    wa, wb = n, n + 1
    frame = [(i, i + 1) for i in range(n - 1)] + [(0, wa), (n - 1, wa), (0, wb), (n - 1, wb), (wa, wb)]
    mult = max(1, len(h_edges) ** 2)
    edges = [e for e in frame for _ in range(mult)]
    return Instance(build(n + 2, edges), insertion_set(h_edges), budget=l)


# ---------------------------------------------------------------------------
# random and grid graphs


def gen_random_planar(n: int, extra_k: int, seed: int, density: float | None = None) -> Instance:
    """Connected planar multigraph from a thinned stacked triangulation."""
    if n < 3:
        raise BadParams("n must be >= 3")
    rng = random.Random(seed)
    faces = [(0, 1, 2), (0, 2, 1)]
    tri = [(0, 1), (1, 2), (0, 2)]
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        faces[i] = (a, b, v)
        faces += [(b, c, v), (c, a, v)]
        tri += [(a, v), (b, v), (c, v)]
    q = rng.uniform(0.15, 0.9) if density is None else density
    order = list(range(len(tri)))
    rng.shuffle(order)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    keep = []
    for i in order:
        u, v = tri[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            keep.append(i)
        elif rng.random() < q:
            keep.append(i)
    keep.sort()
    edges = [tri[i] for i in keep]
    for e in list(edges):
        if rng.random() < 0.05:
            edges.append(e)
    present = {frozenset(e) for e in edges}
    pairs = []
    for _ in range(extra_k):
        for _ in range(50):
            u, v = rng.sample(range(n), 2)
            if frozenset((u, v)) not in present:
                break
        pairs.append((u, v))
    return Instance(build(n, edges), insertion_set(pairs))


def gen_grid(rows: int, cols: int, k: int = 0, seed: int = 0) -> Instance:
    """Square grid with ``k`` random pairs."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    n = rows * cols
    rng = random.Random(seed)
    pairs = [tuple(rng.sample(range(n), 2)) for _ in range(k)]
    return Instance(build(n, edges), insertion_set(pairs))
