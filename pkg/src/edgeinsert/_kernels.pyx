# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_kernels_py`` (same semantics)."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from *:
    """
    typedef struct { long long d; int f; } hitem;
    """
    ctypedef struct hitem:
        long long d
        int f


cdef int* _to_c(object seq, Py_ssize_t n) except NULL:
    cdef int* out = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef list _from_c(int* a, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = a[i]
    return out


def trace_faces(rot_prev):
    cdef Py_ssize_t nd = len(rot_prev), d0, d
    cdef int* rp = _to_c(rot_prev, nd)
    cdef int* face_of = <int*>malloc((nd if nd > 0 else 1) * sizeof(int))
    cdef int nf = 0
    for d0 in range(nd):
        face_of[d0] = -1
    for d0 in range(nd):
        if face_of[d0] != -1:
            continue
        d = d0
        while face_of[d] == -1:
            face_of[d] = nf
            d = rp[d ^ 1]
        nf += 1
    res = _from_c(face_of, nd)
    free(rp)
    free(face_of)
    return res, nf


def dual_csr(face_of, int nfaces):
    cdef Py_ssize_t nd = len(face_of)
    cdef Py_ssize_t m = nd // 2, e
    cdef int* fo = _to_c(face_of, nd)
    cdef int* deg = <int*>malloc((nfaces + 1) * sizeof(int))
    cdef int* fill = <int*>malloc((nfaces + 1) * sizeof(int))
    cdef int a, b, i, total
    memset(deg, 0, (nfaces + 1) * sizeof(int))
    for e in range(m):
        a = fo[2 * e]
        b = fo[2 * e + 1]
        if a != b:
            deg[a + 1] += 1
            deg[b + 1] += 1
    for i in range(nfaces):
        deg[i + 1] += deg[i]
    total = deg[nfaces]
    cdef int* af = <int*>malloc((total if total > 0 else 1) * sizeof(int))
    cdef int* ae = <int*>malloc((total if total > 0 else 1) * sizeof(int))
    for i in range(nfaces):
        fill[i] = deg[i]
    for e in range(m):
        a = fo[2 * e]
        b = fo[2 * e + 1]
        if a != b:
            i = fill[a]
            af[i] = b
            ae[i] = <int>e
            fill[a] = i + 1
            i = fill[b]
            af[i] = a
            ae[i] = <int>e
            fill[b] = i + 1
    indptr = _from_c(deg, nfaces + 1)
    adj_face = _from_c(af, total)
    adj_edge = _from_c(ae, total)
    free(fo)
    free(deg)
    free(fill)
    free(af)
    free(ae)
    return indptr, adj_face, adj_edge


cdef tuple _path(int* pf, int* pe, int end):
    cdef list edges = []
    cdef int f = end
    while pf[f] != -1:
        edges.append(pe[f])
        f = pf[f]
    edges.reverse()
    return f, edges


def bfs_path(indptr, adj_face, adj_edge, int nfaces, sources, targets):
    cdef Py_ssize_t tot = len(adj_face)
    cdef int* ip = _to_c(indptr, nfaces + 1)
    cdef int* af = _to_c(adj_face, tot)
    cdef int* ae = _to_c(adj_edge, tot)
    cdef int* dist = <int*>malloc(nfaces * sizeof(int))
    cdef int* pf = <int*>malloc(nfaces * sizeof(int))
    cdef int* pe = <int*>malloc(nfaces * sizeof(int))
    cdef int* queue = <int*>malloc(nfaces * sizeof(int))
    cdef char* tgt = <char*>malloc(nfaces)
    cdef int i, f, g, df, head = 0, tail = 0, best = -1, best_d = -1
    for i in range(nfaces):
        dist[i] = -1
        pf[i] = -1
        pe[i] = -1
        tgt[i] = 0
    for f in targets:
        tgt[f] = 1
    for f in sorted(set(sources)):
        dist[f] = 0
        queue[tail] = f
        tail += 1
    while head < tail:
        f = queue[head]
        head += 1
        df = dist[f]
        if best_d != -1 and df > best_d:
            break
        if tgt[f]:
            if best == -1 or f < best:
                best = f
                best_d = df
            continue
        for i in range(ip[f], ip[f + 1]):
            g = af[i]
            if dist[g] == -1:
                dist[g] = df + 1
                pf[g] = f
                pe[g] = ae[i]
                queue[tail] = g
                tail += 1
    result = None
    if best != -1:
        start, edges = _path(pf, pe, best)
        result = (best_d, start, best, edges)
    free(ip)
    free(af)
    free(ae)
    free(dist)
    free(pf)
    free(pe)
    free(queue)
    free(tgt)
    return result


cdef inline bint _less(hitem a, hitem b):
    return a.d < b.d or (a.d == b.d and a.f < b.f)


cdef void _push(hitem* h, int* n, hitem x):
    cdef int i = n[0], p
    n[0] += 1
    while i > 0:
        p = (i - 1) >> 1
        if _less(x, h[p]):
            h[i] = h[p]
            i = p
        else:
            break
    h[i] = x


cdef hitem _pop(hitem* h, int* n):
    cdef hitem top = h[0]
    cdef hitem last
    cdef int i = 0, c, sz
    n[0] -= 1
    sz = n[0]
    if sz > 0:
        last = h[sz]
        while True:
            c = 2 * i + 1
            if c >= sz:
                break
            if c + 1 < sz and _less(h[c + 1], h[c]):
                c += 1
            if _less(h[c], last):
                h[i] = h[c]
                i = c
            else:
                break
        h[i] = last
    return top


def dijkstra_path(indptr, adj_face, adj_edge, int nfaces, weight, sources, targets):
    cdef Py_ssize_t tot = len(adj_face)
    cdef Py_ssize_t m = len(weight)
    cdef int* ip = _to_c(indptr, nfaces + 1)
    cdef int* af = _to_c(adj_face, tot)
    cdef int* ae = _to_c(adj_edge, tot)
    cdef long long* w = <long long*>malloc((m if m > 0 else 1) * sizeof(long long))
    cdef long long* dist = <long long*>malloc(nfaces * sizeof(long long))
    cdef char* done = <char*>malloc(nfaces)
    cdef char* tgt = <char*>malloc(nfaces)
    cdef int* pf = <int*>malloc(nfaces * sizeof(int))
    cdef int* pe = <int*>malloc(nfaces * sizeof(int))
    cdef hitem* heap = <hitem*>malloc((tot + nfaces + 1) * sizeof(hitem))
    cdef int hn = 0, i, f, g, e
    cdef long long nd, df, INF = 1LL << 62
    cdef hitem it
    cdef Py_ssize_t k
    for k in range(m):
        w[k] = weight[k]
    for i in range(nfaces):
        dist[i] = INF
        done[i] = 0
        tgt[i] = 0
        pf[i] = -1
        pe[i] = -1
    for f in targets:
        tgt[f] = 1
    for f in sorted(set(sources)):
        dist[f] = 0
        it.d = 0
        it.f = f
        _push(heap, &hn, it)
    result = None
    while hn > 0:
        it = _pop(heap, &hn)
        f = it.f
        df = it.d
        if done[f]:
            continue
        done[f] = 1
        if tgt[f]:
            start, edges = _path(pf, pe, f)
            result = (df, start, f, edges)
            break
        for i in range(ip[f], ip[f + 1]):
            e = ae[i]
            if w[e] < 0:
                continue
            g = af[i]
            nd = df + w[e]
            if nd < dist[g]:
                dist[g] = nd
                pf[g] = f
                pe[g] = e
                it.d = nd
                it.f = g
                _push(heap, &hn, it)
    free(ip)
    free(af)
    free(ae)
    free(w)
    free(dist)
    free(done)
    free(tgt)
    free(pf)
    free(pe)
    free(heap)
    return result
