"""Triconnected components of a biconnected multigraph.

Linear-time path search on a palm tree with the usual corrections for the
classic split-pair search (type-1/type-2 pairs, multiple edges split off
first, bonds and polygons merged at the end).  Everything is iterative.

Input edges are ``(u, v)`` pairs over local vertices ``0..n-1``.  The
result lists components as ``(kind, edge ids)`` where kind is ``"S"``,
``"P"`` or ``"R"``; edge ids ``>= m`` are virtual and each one occurs in
exactly two components.
"""

from __future__ import annotations

from dataclasses import dataclass

_UNSEEN, _TREE, _FROND, _REMOVED = 0, 1, 2, 3
_BOND, _POLY, _TRIC = "P", "S", "R"


class NotBiconnected(ValueError):
    pass


@dataclass
class SplitResult:
    components: list[tuple[str, list[int]]]
    src: list[int]
    tgt: list[int]
    m: int

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.src[e], self.tgt[e]


class _Tric:
    def __init__(self, n: int, edges: list[tuple[int, int]]):
        self.n = n
        self.m = len(edges)
        self.src = [u for u, _ in edges]
        self.tgt = [v for _, v in edges]
        self.etype = [_UNSEEN] * self.m
        self.comps: list[list] = []  # [kind, edges]
        self.inc: list[list[int]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(edges):
            self.inc[u].append(e)
            self.inc[v].append(e)

    def new_edge(self, u: int, v: int) -> int:
        self.src.append(u)
        self.tgt.append(v)
        self.etype.append(_UNSEEN)
        self.in_high.append(-1)
        self.start.append(False)
        if hasattr(self, "slot"):
            self.slot.append(-1)
        return len(self.src) - 1

    # multiple edges
    def split_multi_edges(self):
        groups: dict[tuple[int, int], list[int]] = {}
        for e in range(self.m):
            u, v = self.src[e], self.tgt[e]
            key = (u, v) if u < v else (v, u)
            groups.setdefault(key, []).append(e)
        self.in_high = [-1] * self.m
        self.start = [False] * self.m
        for (u, v), es in sorted(groups.items(), key=lambda kv: kv[1][0]):
            if len(es) < 2:
                continue
            for e in es:
                self.etype[e] = _REMOVED
            ve = self.new_edge(u, v)
            self.comps.append([_BOND, es + [ve]])
            self.inc[u].append(ve)
            self.inc[v].append(ve)

    def dfs1(self, root: int):
        n = self.n
        number = [0] * n
        father = [-1] * n
        lowpt1 = [0] * n
        lowpt2 = [0] * n
        nd = [1] * n
        degree = [0] * n
        tree_arc = [-1] * n
        etype, src, tgt, inc = self.etype, self.src, self.tgt, self.inc
        for v in range(n):
            degree[v] = sum(1 for e in inc[v] if etype[e] != _REMOVED)
        cnt = 1
        number[root] = lowpt1[root] = lowpt2[root] = cnt
        stack = [(root, 0)]
        while stack:
            v, i = stack[-1]
            lst = inc[v]
            if i < len(lst):
                stack[-1] = (v, i + 1)
                e = lst[i]
                if etype[e] != _UNSEEN:
                    continue
                w = tgt[e] if src[e] == v else src[e]
                if number[w] == 0:
                    etype[e] = _TREE
                    tree_arc[w] = e
                    father[w] = v
                    cnt += 1
                    number[w] = lowpt1[w] = lowpt2[w] = cnt
                    stack.append((w, 0))
                else:
                    etype[e] = _FROND
                    nw = number[w]
                    if nw < lowpt1[v]:
                        lowpt2[v] = lowpt1[v]
                        lowpt1[v] = nw
                    elif nw > lowpt1[v]:
                        lowpt2[v] = min(lowpt2[v], nw)
            else:
                stack.pop()
                if not stack:
                    break
                w = v
                v = stack[-1][0]
                if lowpt1[w] < lowpt1[v]:
                    lowpt2[v] = min(lowpt1[v], lowpt2[w])
                    lowpt1[v] = lowpt1[w]
                elif lowpt1[w] == lowpt1[v]:
                    lowpt2[v] = min(lowpt2[v], lowpt2[w])
                else:
                    lowpt2[v] = min(lowpt2[v], lowpt1[w])
                nd[v] += nd[w]
        if cnt != n:
            raise NotBiconnected("graph is not connected")
        # orient: tree arcs downwards, fronds upwards
        for e in range(len(src)):
            t = etype[e]
            if t == _REMOVED or t == _UNSEEN:
                continue
            up = number[tgt[e]] > number[src[e]]
            if (up and t == _FROND) or (not up and t == _TREE):
                src[e], tgt[e] = tgt[e], src[e]
        self.number, self.father, self.lowpt1, self.lowpt2 = number, father, lowpt1, lowpt2
        self.nd, self.degree, self.tree_arc = nd, degree, tree_arc

    def build_adj(self):
        n = self.n
        number, lowpt1, lowpt2 = self.number, self.lowpt1, self.lowpt2
        buckets: list[list[int]] = [[] for _ in range(3 * n + 3)]
        for e in range(len(self.src)):
            t = self.etype[e]
            if t == _REMOVED or t == _UNSEEN:
                continue
            w = self.tgt[e]
            if t == _FROND:
                phi = 3 * number[w] + 1
            elif lowpt2[w] < number[self.src[e]]:
                phi = 3 * lowpt1[w]
            else:
                phi = 3 * lowpt1[w] + 2
            buckets[phi].append(e)
        adj: list[list[int]] = [[] for _ in range(n)]
        slot = [0] * len(self.src)
        for b in buckets:
            for e in b:
                s = self.src[e]
                slot[e] = len(adj[s])
                adj[s].append(e)
        self.adj = adj
        self.slot = slot

    def dfs2(self, root: int):
        n = self.n
        newnum = [0] * n
        # high lists: entry ids; values kept in hval, liveness in hlive
        self.hval: list[int] = []
        self.hlive: list[bool] = []
        highpt: list[list[int]] = [[] for _ in range(n)]
        count = n
        new_path = True
        adj, etype, tgt, nd = self.adj, self.etype, self.tgt, self.nd
        newnum[root] = count - nd[root] + 1
        stack = [(root, 0)]
        while stack:
            v, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, i + 1)
                e = adj[v][i]
                w = tgt[e]
                if new_path:
                    new_path = False
                    self.start[e] = True
                if etype[e] == _TREE:
                    newnum[w] = count - nd[w] + 1
                    stack.append((w, 0))
                else:
                    h = len(self.hval)
                    self.hval.append(newnum[v])
                    self.hlive.append(True)
                    highpt[w].append(h)
                    self.in_high[e] = h
                    new_path = True
            else:
                stack.pop()
                if stack:
                    count -= 1
        old2new = [0] * (n + 1)
        for v in range(n):
            old2new[self.number[v]] = newnum[v]
        nodeat = [0] * (n + 1)
        for v in range(n):
            nodeat[newnum[v]] = v
            self.lowpt1[v] = old2new[self.lowpt1[v]]
            self.lowpt2[v] = old2new[self.lowpt2[v]]
        for lst in highpt:
            lst.reverse()  # front of the list is its tail
        self.highpt = highpt
        self.newnum = newnum
        self.nodeat = nodeat

    def high(self, v: int) -> int:
        lst = self.highpt[v]
        while lst and not self.hlive[lst[-1]]:
            lst.pop()
        return self.hval[lst[-1]] if lst else 0

    def del_high(self, e: int):
        h = self.in_high[e]
        if h != -1:
            self.hlive[h] = False
            self.in_high[e] = -1

    def first_child(self, w: int) -> int:
        for e in self.adj[w]:
            if e != -1:
                return self.tgt[e]
        return -1

    def adj_del(self, e: int):
        s = self.src[e]
        k = self.slot[e]
        if 0 <= k < len(self.adj[s]) and self.adj[s][k] == e:
            self.adj[s][k] = -1

    def new_comp(self, kind, edges):
        c = [kind, edges]
        self.comps.append(c)
        return c

    def path_search(self, root: int):
        src, tgt, etype = self.src, self.tgt, self.etype
        newnum, nodeat, father = self.newnum, self.nodeat, self.father
        lowpt1, lowpt2, nd, degree = self.lowpt1, self.lowpt2, self.nd, self.degree
        adj, tree_arc = self.adj, self.tree_arc
        estack: list[int] = []
        th: list[int] = [0]
        ta: list[int] = [-1]  # a == -1 marks end-of-stack
        tb: list[int] = [0]
        start = self.start

        # frame: [v, slot index, child w or -1, original edge at slot]
        frames = [[root, 0, -1, -1]]
        while frames:
            fr = frames[-1]
            v, i, w_child, e0 = fr
            vnum = newnum[v]
            lst = adj[v]
            if w_child == -1:
                # advance to the next live slot
                while i < len(lst) and lst[i] == -1:
                    i += 1
                if i >= len(lst):
                    frames.pop()
                    if frames:
                        pass
                    continue
                e = lst[i]
                w = tgt[e]
                wnum = newnum[w]
                if etype[e] == _TREE:
                    if start[e]:
                        y = 0
                        if ta[-1] > lowpt1[w]:
                            b = 0
                            while ta[-1] > lowpt1[w]:
                                y = max(y, th[-1])
                                b = tb[-1]
                                th.pop()
                                ta.pop()
                                tb.pop()
                            th.append(y)
                            ta.append(lowpt1[w])
                            tb.append(b)
                        else:
                            th.append(wnum + nd[w] - 1)
                            ta.append(lowpt1[w])
                            tb.append(vnum)
                        th.append(0)
                        ta.append(-1)
                        tb.append(0)
                    fr[1] = i
                    fr[2] = w
                    fr[3] = e
                    frames.append([w, 0, -1, -1])
                    continue
                # frond
                if start[e]:
                    y = 0
                    if ta[-1] > wnum:
                        b = 0
                        while ta[-1] > wnum:
                            y = max(y, th[-1])
                            b = tb[-1]
                            th.pop()
                            ta.pop()
                            tb.pop()
                        th.append(y)
                        ta.append(wnum)
                        tb.append(b)
                    else:
                        th.append(vnum)
                        ta.append(wnum)
                        tb.append(vnum)
                if w == father[v]:
                    lst[i] = -1
                    eh = tree_arc[v]
                    ev = self.new_edge(w, v)
                    etype[e] = _REMOVED
                    self.del_high(e)
                    self.new_comp(_BOND, [e, eh, ev])
                    etype[ev] = _TREE
                    ps = self.slot[eh]
                    adj[w][ps] = ev
                    self.slot[ev] = ps
                    tree_arc[v] = ev
                    degree[v] -= 1
                    degree[w] -= 1
                else:
                    estack.append(e)
                fr[1] = i + 1
                continue

            # returned from child w_child via slot i
            w = w_child
            wnum = newnum[w]
            e = e0
            fr[2] = -1
            estack.append(tree_arc[w])

            while vnum != 1 and (ta[-1] == vnum or (degree[w] == 2 and newnum[self.first_child(w)] > wnum)):
                a = ta[-1]
                b = tb[-1]
                if a == vnum and father[nodeat[b]] == nodeat[a]:
                    th.pop()
                    ta.pop()
                    tb.pop()
                    continue
                e_ab = -1
                if degree[w] == 2 and newnum[self.first_child(w)] > wnum:
                    e1 = estack.pop()
                    e2 = estack.pop()
                    self.adj_del(e2)
                    x = tgt[e2]
                    ev = self.new_edge(v, x)
                    degree[x] -= 1
                    degree[v] -= 1
                    self.new_comp(_POLY, [e1, e2, ev])
                    if estack:
                        t = estack[-1]
                        if src[t] == x and tgt[t] == v:
                            e_ab = estack.pop()
                            self.adj_del(e_ab)
                            self.del_high(e_ab)
                else:
                    h = th.pop()
                    ta.pop()
                    tb.pop()
                    comp = []
                    while estack:
                        xy = estack[-1]
                        xs, xt = newnum[src[xy]], newnum[tgt[xy]]
                        if not (a <= xs <= h and a <= xt <= h):
                            break
                        if (xs == a and xt == b) or (xt == a and xs == b):
                            e_ab = estack.pop()
                            self.adj_del(e_ab)
                            self.del_high(e_ab)
                        else:
                            eh = estack.pop()
                            if eh != lst[i]:
                                self.adj_del(eh)
                                self.del_high(eh)
                            comp.append(eh)
                            degree[src[eh]] -= 1
                            degree[tgt[eh]] -= 1
                    ev = self.new_edge(nodeat[a], nodeat[b])
                    comp.append(ev)
                    self.new_comp(_TRIC if len(comp) >= 4 else _POLY, comp)
                    x = nodeat[b]
                if e_ab != -1:
                    ev2 = self.new_edge(v, x)
                    self.new_comp(_BOND, [e_ab, ev, ev2])
                    ev = ev2
                    degree[x] -= 1
                    degree[v] -= 1
                estack.append(ev)
                lst[i] = ev
                self.slot[ev] = i
                degree[x] += 1
                degree[v] += 1
                father[x] = v
                tree_arc[x] = ev
                etype[ev] = _TREE
                w = x
                wnum = newnum[w]

            # type-1 pairs
            if lowpt2[w] >= vnum and lowpt1[w] < vnum and (
                father[v] != root or self._has_later_tree_arc(v, i)
            ):
                comp = []
                hi = wnum + nd[w]
                while estack:
                    xy = estack[-1]
                    xs, xt = newnum[src[xy]], newnum[tgt[xy]]
                    if not (wnum <= xs < hi or wnum <= xt < hi):
                        break
                    estack.pop()
                    comp.append(xy)
                    self.del_high(xy)
                    degree[src[xy]] -= 1
                    degree[tgt[xy]] -= 1
                lw = nodeat[lowpt1[w]]
                ev = self.new_edge(v, lw)
                comp.append(ev)
                self.new_comp(_TRIC if len(comp) >= 4 else _POLY, comp)
                if estack:
                    t = estack[-1]
                    if (src[t] == v and tgt[t] == lw) or (src[t] == lw and tgt[t] == v):
                        eh = estack.pop()
                        if eh != lst[i]:
                            self.adj_del(eh)
                        ev2 = self.new_edge(v, lw)
                        self.new_comp(_BOND, [eh, ev, ev2])
                        self.in_high[ev2] = self.in_high[eh]
                        self.in_high[eh] = -1
                        ev = ev2
                        degree[v] -= 1
                        degree[lw] -= 1
                if lw != father[v]:
                    estack.append(ev)
                    lst[i] = ev
                    self.slot[ev] = i
                    etype[ev] = _FROND
                    if self.in_high[ev] == -1 and self.high(lw) < vnum:
                        h = len(self.hval)
                        self.hval.append(vnum)
                        self.hlive.append(True)
                        self.highpt[lw].append(h)
                        self.in_high[ev] = h
                    degree[v] += 1
                    degree[lw] += 1
                else:
                    lst[i] = -1
                    ev2 = self.new_edge(lw, v)
                    eh = tree_arc[v]
                    self.new_comp(_BOND, [ev, ev2, eh])
                    tree_arc[v] = ev2
                    etype[ev2] = _TREE
                    ps = self.slot[eh]
                    adj[lw][ps] = ev2
                    self.slot[ev2] = ps

            if start[e]:
                while ta[-1] != -1:
                    th.pop()
                    ta.pop()
                    tb.pop()
                th.pop()
                ta.pop()
                tb.pop()
            while ta[-1] != -1 and ta[-1] != vnum and tb[-1] != vnum and self.high(v) > th[-1]:
                th.pop()
                ta.pop()
                tb.pop()
            fr[1] = i + 1

        if estack:
            comp = list(reversed(estack))
            self.new_comp(_TRIC if len(comp) >= 4 else _POLY, comp)

    def _has_later_tree_arc(self, v: int, i: int) -> bool:
        lst = self.adj[v]
        for k in range(i + 1, len(lst)):
            e = lst[k]
            if e != -1 and self.etype[e] == _TREE:
                return True
        return False

    def assemble(self) -> list[tuple[str, list[int]]]:
        comps = self.comps
        owner: dict[int, list[int]] = {}
        for ci, (_, es) in enumerate(comps):
            for e in es:
                if e >= self.m:
                    owner.setdefault(e, []).append(ci)
        alive = [True] * len(comps)
        for ci in range(len(comps)):
            if not alive[ci]:
                continue
            kind, es = comps[ci]
            if kind == _TRIC:
                continue
            k = 0
            while k < len(es):
                e = es[k]
                if e >= self.m:
                    o = owner[e]
                    cj = o[0] if o[1] == ci else o[1]
                    if cj != ci and alive[cj] and comps[cj][0] == kind:
                        alive[cj] = False
                        es.pop(k)
                        for f in comps[cj][1]:
                            if f == e:
                                continue
                            es.append(f)
                            if f >= self.m:
                                oo = owner[f]
                                owner[f] = [ci if c == cj else c for c in oo]
                        continue
                k += 1
        return [(kind, es) for (kind, es), a in zip(comps, alive) if a]


def split_components(n: int, edges: list[tuple[int, int]]) -> SplitResult:
    """Triconnected components of a biconnected multigraph on ``n >= 2`` vertices."""
    if n < 2:
        raise NotBiconnected("too small")
    t = _Tric(n, edges)
    t.split_multi_edges()
    live = [e for e in range(len(t.src)) if t.etype[e] != _REMOVED]
    if n == 2:
        return SplitResult([(k, es) for k, es in t.comps], t.src, t.tgt, t.m)
    if not live:
        raise NotBiconnected("no edges")
    root = 0
    t.dfs1(root)
    t.build_adj()
    t.dfs2(root)
    t.path_search(root)
    return SplitResult(t.assemble(), t.src, t.tgt, t.m)
