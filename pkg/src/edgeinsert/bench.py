"""Timing harness: end-to-end scaling and compiled vs. Python kernels."""

from __future__ import annotations

import math
import statistics
import time

from . import kernels
from .embedding import PlaneEmbedding, test_and_embed
from .generators import gen_grid
from .mei import STRONG, run_mei


def _side(n: int) -> int:
    return max(2, round(math.sqrt(n)))


def scaling(sizes, k: int = 8, repeats: int = 3, mode: str = STRONG, seed: int = 0) -> list[dict]:
    """Median run time of the whole pipeline on square grids of about ``size`` vertices."""
    rows = []
    prev = None
    for size in sizes:
        s = _side(size)
        g, pairs = gen_grid(s, s, k, seed)
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            run_mei(g, pairs, mode)
            times.append(time.perf_counter() - t0)
        med = statistics.median(times)
        rows.append({"n": g.n, "k": k, "median_s": med, "ratio": (med / prev) if prev else None})
        prev = med
    return rows


def kernel_compare(sizes, repeats: int = 3, seed: int = 0) -> list[dict]:
    """Face tracing plus a dual BFS and Dijkstra on both kernel backends."""
    rows = []
    backends = ["python"]
    try:
        kernels.use("cython")
        backends.append("cython")
    except ImportError:
        pass
    before = kernels.BACKEND
    try:
        for size in sizes:
            s = _side(size)
            g, _ = gen_grid(s, s, 0, seed)
            rot = test_and_embed(g).rotation
            row = {"n": g.n}
            for b in backends:
                kernels.use(b)
                times = []
                for _ in range(repeats):
                    t0 = time.perf_counter()
                    emb = PlaneEmbedding(g, rot, check=False)
                    indptr, af, ae = emb.csr()
                    nf = emb.face_count
                    kernels.bfs_path(indptr, af, ae, nf, [0], [nf - 1])
                    kernels.dijkstra_path(indptr, af, ae, nf, [1] * g.m, [0], [nf - 1])
                    times.append(time.perf_counter() - t0)
                row[b] = statistics.median(times)
            if "cython" in row:
                row["speedup"] = row["python"] / row["cython"]
            rows.append(row)
    finally:
        kernels.use(before)
    return rows


def format_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    for r in rows:
        for c in r:
            if c not in cols:
                cols.append(c)

    def cell(v):
        if v is None:
            return "-"
        if isinstance(v, float):
            return f"{v:.4f}"
        return str(v)

    data = [[cell(r.get(c)) for c in cols] for r in rows]
    w = [max(len(c), *(len(d[i]) for d in data)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w[i]) for i, c in enumerate(cols))]
    lines += ["  ".join(d[i].rjust(w[i]) for i in range(len(cols))) for d in data]
    return "\n".join(lines)
