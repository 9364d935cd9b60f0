"""Pure-Python versions of the hot loops.

Darts: dart ``2e`` runs from the first to the second endpoint of edge ``e``,
``2e+1`` is its reverse.  ``rot_prev[d]`` is the dart preceding ``d`` in the
rotation around the tail of ``d``.  The face successor of ``d`` is
``rot_prev[d ^ 1]``.
"""

from __future__ import annotations

import heapq
from collections import deque


def trace_faces(rot_prev):
    nd = len(rot_prev)
    face_of = [-1] * nd
    nf = 0
    for d0 in range(nd):
        if face_of[d0] != -1:
            continue
        d = d0
        while face_of[d] == -1:
            face_of[d] = nf
            d = rot_prev[d ^ 1]
        nf += 1
    return face_of, nf


def dual_csr(face_of, nfaces):
    """Face adjacency sorted by edge id; self-adjacent edges are skipped."""
    m = len(face_of) // 2
    deg = [0] * (nfaces + 1)
    for e in range(m):
        a = face_of[2 * e]
        b = face_of[2 * e + 1]
        if a != b:
            deg[a + 1] += 1
            deg[b + 1] += 1
    for i in range(nfaces):
        deg[i + 1] += deg[i]
    indptr = deg
    fill = indptr[:-1]
    fill = list(fill)
    adj_face = [0] * indptr[nfaces]
    adj_edge = [0] * indptr[nfaces]
    for e in range(m):
        a = face_of[2 * e]
        b = face_of[2 * e + 1]
        if a != b:
            i = fill[a]
            adj_face[i] = b
            adj_edge[i] = e
            fill[a] = i + 1
            i = fill[b]
            adj_face[i] = a
            adj_edge[i] = e
            fill[b] = i + 1
    return indptr, adj_face, adj_edge


def _path(parent_face, parent_edge, end):
    edges = []
    f = end
    while parent_face[f] != -1:
        edges.append(parent_edge[f])
        f = parent_face[f]
    edges.reverse()
    return f, edges


def bfs_path(indptr, adj_face, adj_edge, nfaces, sources, targets):
    """Unweighted multi-source shortest path between two face sets.

    Returns ``(length, start_face, end_face, crossed_edges)`` or ``None``
    when no target is reachable.  Sources are seeded in ascending order,
    neighbours scanned by ascending edge id, and among targets at minimum
    distance the smallest face id wins.
    """
    is_target = set(targets)
    dist = [-1] * nfaces
    parent_face = [-1] * nfaces
    parent_edge = [-1] * nfaces
    q = deque()
    for s in sorted(set(sources)):
        dist[s] = 0
        q.append(s)
    best = -1
    best_d = -1
    while q:
        f = q.popleft()
        df = dist[f]
        if best_d != -1 and df > best_d:
            break
        if f in is_target:
            if best == -1 or f < best:
                best = f
                best_d = df
            continue
        for i in range(indptr[f], indptr[f + 1]):
            g = adj_face[i]
            if dist[g] == -1:
                dist[g] = df + 1
                parent_face[g] = f
                parent_edge[g] = adj_edge[i]
                q.append(g)
    if best == -1:
        return None
    start, edges = _path(parent_face, parent_edge, best)
    return best_d, start, best, edges


def dijkstra_path(indptr, adj_face, adj_edge, nfaces, weight, sources, targets):
    """Weighted variant of :func:`bfs_path`; ``weight[e] < 0`` forbids ``e``."""
    is_target = set(targets)
    inf = float("inf")
    dist = [inf] * nfaces
    done = [False] * nfaces
    parent_face = [-1] * nfaces
    parent_edge = [-1] * nfaces
    heap = []
    for s in sorted(set(sources)):
        dist[s] = 0
        heap.append((0, s))
    heapq.heapify(heap)
    while heap:
        df, f = heapq.heappop(heap)
        if done[f]:
            continue
        done[f] = True
        if f in is_target:
            start, edges = _path(parent_face, parent_edge, f)
            return df, start, f, edges
        for i in range(indptr[f], indptr[f + 1]):
            e = adj_edge[i]
            w = weight[e]
            if w < 0:
                continue
            g = adj_face[i]
            nd = df + w
            if nd < dist[g]:
                dist[g] = nd
                parent_face[g] = f
                parent_edge[g] = e
                heapq.heappush(heap, (nd, g))
    return None
