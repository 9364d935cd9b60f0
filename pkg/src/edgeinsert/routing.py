"""Insertion of several edges into one fixed embedding, and planarization.

Walks are shortest dual paths.  Hop count decides; a fixed per-edge
perturbation breaks ties so every shortest path is unique and two walks
share at most one contiguous run of faces.  Inside each face a walk is a
chord between two boundary ports; chords cross when their ends interleave.
Pairs crossing twice get their positions swapped along the shared run,
which removes both crossings and never adds others.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import kernels
from .embedding import InsertionWalk, PlaneEmbedding
from .multigraph import Multigraph, build

_MASK64 = (1 << 64) - 1


def _mix(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def perturbed_weights(m: int, nfaces: int) -> list[int]:
    hop_bits = max(1, (nfaces + 1).bit_length())
    bits = max(8, min(30, 62 - 2 * hop_bits))
    big = 1 << (bits + hop_bits)
    mask = (1 << bits) - 1
    return [big + (_mix(e) & mask) for e in range(m)], big


def route_walk(emb: PlaneEmbedding, u: int, v: int, weights=None, big: int = 1) -> InsertionWalk:
    fu = emb.faces_at(u)
    common = set(fu).intersection(emb.faces_at(v))
    if common:
        f = _pick_face(emb, u, common)
        return InsertionWalk(u, v, (), f, f)
    if weights is None:
        weights, big = perturbed_weights(emb.graph.m, emb.face_count)
    res = kernels.dijkstra_path(*emb.csr(), emb.face_count, weights, fu, emb.faces_at(v))
    _, start, end, edges = res
    return InsertionWalk(u, v, tuple(edges), start, end)


def _pick_face(emb: PlaneEmbedding, u: int, faces: set[int]) -> int:
    """Shared face chosen by its boundary edges, so a mirror picks the same one."""
    if len(faces) == 1:
        return next(iter(faces))
    fo = emb.face_of
    g = emb.graph
    keys = {}
    for e in g.incident(u):
        for d in (2 * e, 2 * e + 1):
            f = fo[d]
            if f in faces and f not in keys:
                edges = []
                x = d
                while True:
                    edges.append(x >> 1)
                    x = emb.face_next(x)
                    if x == d:
                        break
                keys[f] = (sorted(edges), f)
    return min(keys, key=keys.get)


@dataclass
class _Walk:
    src: int
    dst: int
    faces: list[int]
    darts: list[int]  # darts[t] crosses from faces[t] to faces[t+1], lies in faces[t]


@dataclass
class Drawing:
    """Walks plus the order of crossing points along every crossed edge."""

    emb: PlaneEmbedding
    walks: list[_Walk]
    order: dict[int, list[int]] = field(default_factory=dict)  # edge -> walks along dart 2e
    _pos: dict[int, int] = field(default_factory=dict)
    _vport: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    _frames: dict[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        for w, wk in enumerate(self.walks):
            for d in wk.darts:
                self.order.setdefault(d >> 1, []).append(w)
        self._fw = self.emb.face_walks()
        for f, walk in enumerate(self._fw):
            for i, d in enumerate(walk):
                self._pos[d] = i

    def _angles(self, face: int, v: int) -> list[int]:
        """Boundary positions of the darts leaving ``v`` inside ``face``."""
        key = (face, v)
        if key not in self._vport:
            fo = self.emb.face_of
            self._vport[key] = sorted(self._pos[d] for d in self.emb.rotation[v] if fo[d] == face)
        return self._vport[key]

    def _frame(self, f: int) -> tuple[int, int]:
        """(sign, origin) reading the face from its least edge sequence.

        A mirror reverses every face, so reading from the lexicographically
        least rotation of either direction gives both the same coordinates.
        """
        if f not in self._frames:
            seq = [d >> 1 for d in self._fw[f]]
            L = len(seq)
            i = _least_rotation(seq)
            j = _least_rotation(seq[::-1])
            fwd = seq[i:] + seq[:i]
            bwd = seq[::-1][j:] + seq[::-1][:j]
            if fwd <= bwd:
                self._frames[f] = (1, 2 * i)
            else:
                # reversed index j is dart L-1-j, whose midpoint is 2(L-1-j)
                self._frames[f] = (-1, 2 * (L - 1 - j))
        return self._frames[f]

    def _cross_key(self, d: int, w: int):
        lst = self.order[d >> 1]
        r = lst.index(w)
        if d & 1:
            r = len(lst) - 1 - r
        return (self._pos[d], 1, r)

    def chords(self) -> dict[int, list[tuple[tuple, tuple, int]]]:
        out: dict[int, list] = {}
        for w, wk in enumerate(self.walks):
            L = len(wk.darts)
            for t, f in enumerate(wk.faces):
                a = None if t == 0 else self._cross_key(wk.darts[t - 1] ^ 1, w)
                b = None if t == L else self._cross_key(wk.darts[t], w)
                a, b = self._place_ends(f, a, b, wk.src, wk.dst)
                out.setdefault(f, []).append((a, b, w))
        return out

    def _place_ends(self, f: int, a, b, src: int, dst: int):
        """Fill vertex ends with the angle nearest the other end.

        Coordinates count half-steps along the boundary: dart midpoints are
        even, angles odd.  Ties go to the smaller coordinate in the face's
        canonical reading, so mirrored drawings choose mirrored angles.
        """
        if a is not None and b is not None:
            return a, b
        size = 2 * len(self._fw[f])
        sign, origin = self._frame(f)

        def ends(key, v):
            if key is not None:
                return [(2 * key[0], key)]
            return [(2 * p - 1, (p, 0, 0)) for p in self._angles(f, v)]

        def canon(c):
            return (sign * (c - origin)) % size

        best = None
        for xa, ka in ends(a, src):
            for xb, kb in ends(b, dst):
                d = abs(xa - xb)
                rank = (min(d, size - d), canon(xa), canon(xb))
                if best is None or rank < best[0]:
                    best = (rank, ka, kb)
        return best[1], best[2]

    def crossings(self) -> dict[tuple[int, int], list[int]]:
        """Crossing faces per walk pair."""
        out: dict[tuple[int, int], list[int]] = {}
        for f, lst in sorted(self.chords().items()):
            norm = [(min(a, b), max(a, b), w) for a, b, w in lst]
            for x in range(len(norm)):
                a, b, w1 = norm[x]
                for y in range(x + 1, len(norm)):
                    c, d, w2 = norm[y]
                    if w1 == w2:
                        continue
                    if a < c < b < d or c < a < d < b:
                        key = (min(w1, w2), max(w1, w2))
                        out.setdefault(key, []).append(f)
        return out

    def uncross(self, max_rounds: int = 100000) -> int:
        """Swap positions along shared runs until no pair crosses twice."""
        swaps = 0
        for _ in range(max_rounds):
            cr = self.crossings()
            bad = sorted(p for p, fs in cr.items() if len(fs) >= 2)
            if not bad:
                return swaps
            progressed = False
            for i, j in bad:
                if self._exchange(i, j, cr[(i, j)]):
                    swaps += 1
                    progressed = True
                    break
            if not progressed:
                return swaps
        return swaps

    def _exchange(self, i: int, j: int, faces: list[int]) -> bool:
        wi = self.walks[i]
        idx = {f: t for t, f in enumerate(wi.faces)}
        ts = sorted(idx[f] for f in faces if f in idx)
        if len(ts) < 2:
            return False
        a, b = ts[0], ts[1]
        darts = wi.darts[a:b]
        jset = {d >> 1 for d in self.walks[j].darts}
        if any((d >> 1) not in jset for d in darts):
            return False
        for d in darts:
            lst = self.order[d >> 1]
            p, q = lst.index(i), lst.index(j)
            lst[p], lst[q] = j, i
        return True


def insert_edges_fixed(emb: PlaneEmbedding, pairs) -> tuple[list[InsertionWalk], tuple[int, int]]:
    walks, drawing = draw_edges(emb, pairs)
    ff = sum(len(v) for v in drawing.crossings().values())
    return walks, (sum(w.length for w in walks), ff)


def draw_edges(emb: PlaneEmbedding, pairs) -> tuple[list[InsertionWalk], Drawing]:
    pairs = [tuple(p) for p in pairs]
    if not pairs:
        return [], Drawing(emb, [])
    weights, big = perturbed_weights(emb.graph.m, emb.face_count)
    fo = emb.face_of
    walks = []
    inner = []
    for u, v in pairs:
        w = route_walk(emb, u, v, weights, big)
        walks.append(w)
        faces = [w.start_face]
        darts = []
        for e in w.crossed_edges:
            f = faces[-1]
            d = 2 * e if fo[2 * e] == f else 2 * e + 1
            darts.append(d)
            faces.append(fo[d ^ 1])
        inner.append(_Walk(u, v, faces, darts))
    drawing = Drawing(emb, inner)
    drawing.uncross()
    return walks, drawing


def planarize(emb: PlaneEmbedding, pairs, drawing: Drawing | None = None) -> tuple[Multigraph, int]:
    """Graph with every crossing replaced by a degree-4 dummy vertex.

    ``pairs`` may also be insertion walks; only their endpoints are used and
    the walks are recomputed.  Returns the graph and the number of dummies.
    Dummies on a G-edge follow that edge's crossing order; F-crossings get
    ids after those, by face and chord order.
    """
    pairs = [(p.source, p.target) if isinstance(p, InsertionWalk) else tuple(p) for p in pairs]
    if drawing is None:
        _, drawing = draw_edges(emb, pairs)
    g = emb.graph
    n = g.n
    # dummies on G edges
    gdummy: dict[tuple[int, int], int] = {}  # (edge, walk) -> vertex
    edges: list[tuple[int, int]] = []
    for e in range(g.m):
        lst = drawing.order.get(e, [])
        chain = [g.eu[e]]
        for w in lst:
            gdummy[(e, w)] = n
            chain.append(n)
            n += 1
        chain.append(g.ev[e])
        edges.extend(zip(chain, chain[1:]))
    # F x F crossings inside faces, with positions along each chord
    along: dict[tuple[int, int], list[tuple[float, int]]] = {}  # (walk, face index) -> [(t, dummy)]
    chords = drawing.chords()
    for f in sorted(chords):
        lst = chords[f]
        keys = sorted({k for a, b, _ in lst for k in (a, b)})
        # irregular spacing keeps three chords from meeting in one point
        rng = random.Random(f)
        gaps = [1.0 + rng.random() for _ in keys]
        tot = sum(gaps)
        ang, acc = {}, 0.0
        for k, gp in zip(keys, gaps):
            ang[k] = 2 * math.pi * acc / tot
            acc += gp
        ends = _fan_out(lst, ang, math.pi / (2 * tot))
        vis = _visit_index(drawing, f)
        for x in range(len(lst)):
            for y in range(x + 1, len(lst)):
                a, b, w1 = lst[x]
                c, d, w2 = lst[y]
                lo1, hi1 = min(a, b), max(a, b)
                lo2, hi2 = min(c, d), max(c, d)
                if w1 != w2 and (lo1 < lo2 < hi1 < hi2 or lo2 < lo1 < hi2 < hi1):
                    t1, t2 = _intersect(ends[x, 0], ends[x, 1], ends[y, 0], ends[y, 1])
                    along.setdefault((w1, vis[w1]), []).append((t1, n))
                    along.setdefault((w2, vis[w2]), []).append((t2, n))
                    n += 1
    # walk edges
    for w, wk in enumerate(drawing.walks):
        chain = [wk.src]
        for t, f in enumerate(wk.faces):
            for _, dv in sorted(along.get((w, t), [])):
                chain.append(dv)
            if t < len(wk.darts):
                chain.append(gdummy[(wk.darts[t] >> 1, w)])
        chain.append(wk.dst)
        edges.extend(zip(chain, chain[1:]))
    return build(n, edges), n - g.n


def _fan_out(lst, ang: dict, eps: float) -> dict:
    """Circle points per chord end; ends sharing a port are spread apart.

    Around a shared port, an end whose chord reaches further counterclockwise
    sits further clockwise, so chords from one port nest instead of crossing.
    Identical chords take opposite tie orders at their two ends.
    """
    at: dict = {}
    for x, (a, b, w) in enumerate(lst):
        at.setdefault(a, []).append((x, 0, b, w))
        at.setdefault(b, []).append((x, 1, a, w))
    out = {}
    for k, items in at.items():
        def order(it):
            _, _, other, w = it
            delta = (ang[other] - ang[k]) % (2 * math.pi)
            return (-delta, w if k < other else -w)

        items.sort(key=order)
        mid = (len(items) - 1) / 2
        for i, (x, side, _, _) in enumerate(items):
            t = ang[k] + eps * (i - mid) / max(1, len(items))
            out[x, side] = (math.cos(t), math.sin(t))
    return out


def _least_rotation(seq: list[int]) -> int:
    """Start index of the lexicographically least rotation (Booth)."""
    n = len(seq)
    s = seq + seq
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        i = f[j - k - 1]
        while i != -1 and s[j] != s[k + i + 1]:
            if s[j] < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and s[j] != s[k + i + 1]:
            if s[j] < s[k + i + 1]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def _visit_index(drawing: Drawing, f: int) -> dict[int, int]:
    out = {}
    for w, wk in enumerate(drawing.walks):
        for t, ff in enumerate(wk.faces):
            if ff == f:
                out[w] = t
    return out


def _intersect(p1, p2, p3, p4) -> tuple[float, float]:
    """Parameters along segments p1p2 and p3p4 of their intersection point."""
    x1, y1 = p1
    x2, y2 = p2
    x3, y3 = p3
    x4, y4 = p4
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    t = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den
    u = -((x1 - x2) * (y1 - y3) - (y1 - y2) * (x1 - x3)) / den
    return t, u
