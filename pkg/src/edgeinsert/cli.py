"""Command line entry point: ``edgeinsert solve|oracle|gen|bench``."""

from __future__ import annotations

import argparse
import sys
import time

from . import bench as _bench
from .decompose.assemble import kuratowski_witness
from .generators import (
    BadInstance,
    BadParams,
    gen_construction_I,
    gen_construction_II,
    gen_construction_III,
    gen_grid,
    gen_random_planar,
    gen_ziegler,
)
from .io import Instance, ParseError, dumps_instance, dumps_report, read_instance, write_instance
from .mei import STRONG, WEAK, run_mei
from .multigraph import Disconnected, GraphError, NotPlanar, insertion_set
from .oracle import DEFAULT_CAP, TooManyEmbeddings, exact_ins_prime, exact_ins_single
from .routing import planarize

EXIT_OK = 0
EXIT_GRAPH = 2
EXIT_PARSE = 3
EXIT_CAP = 4


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load(path: str) -> Instance:
    if path == "-":
        from .io import loads_instance

        return loads_instance(sys.stdin.read())
    return read_instance(path)


def cmd_solve(a) -> int:
    inst = _load(a.input)
    try:
        t0 = time.perf_counter()
        report = run_mei(inst.graph, inst.pairs, a.mode)
        if a.timing:
            report.wall_time = time.perf_counter() - t0
    except NotPlanar:
        wit = kuratowski_witness(inst.graph)
        print(f"error: graph is not planar; Kuratowski subgraph edges: {wit}", file=sys.stderr)
        return EXIT_GRAPH
    _emit(dumps_report(report.to_dict(a.dump_embedding)), a.out)
    if a.planarize:
        h, _ = planarize(report.embedding, list(inst.pairs))
        write_instance(a.planarize, Instance(h, insertion_set([])))
    return EXIT_OK


def cmd_oracle(a) -> int:
    inst = _load(a.input)
    pairs = list(inst.pairs)
    try:
        per = [exact_ins_single(inst.graph, u, v, a.cap) for u, v in pairs]
        prime = exact_ins_prime(inst.graph, pairs, a.cap)
    except TooManyEmbeddings as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_CAP
    _emit(dumps_report({"ins_prime": prime, "ins_single": per, "k": len(pairs)}), a.out)
    return EXIT_OK


def _pairs_arg(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok:
            u, v = tok.split("-")
            out.append((int(u), int(v)))
    return out


def cmd_gen(a) -> int:
    fam = a.family
    try:
        if fam == "I":
            inst = gen_construction_I(a.r)
        elif fam == "II":
            inst = gen_construction_II(a.l)
        elif fam == "III":
            inst = gen_construction_III(a.m, a.delta)
        elif fam == "ziegler":
            inst = gen_ziegler(_pairs_arg(a.h_edges), a.n, a.l)
        elif fam == "random":
            inst = gen_random_planar(a.n, a.k, a.seed)
        else:
            inst = gen_grid(a.rows, a.cols or a.rows, a.k, a.seed)
    except (BadParams, BadInstance) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    _emit(dumps_instance(inst), a.out)
    return EXIT_OK


def cmd_bench(a) -> int:
    sizes = [int(x) for x in a.sizes.split(",") if x.strip()]
    if a.kernels:
        rows = _bench.kernel_compare(sizes, a.repeats, a.seed)
    else:
        rows = _bench.scaling(sizes, a.k, a.repeats, a.mode, a.seed)
    table = _bench.format_table(rows)
    _emit(table + "\n" if table else "", a.out)
    return EXIT_OK


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgeinsert", description="Insert several edges into a planar graph with few crossings.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="run the insertion algorithm on an instance file")
    s.add_argument("--input", required=True)
    s.add_argument("--mode", choices=[WEAK, STRONG], default=STRONG)
    s.add_argument("--out")
    s.add_argument("--dump-embedding", action="store_true")
    s.add_argument("--planarize", metavar="PATH")
    s.add_argument("--timing", action="store_true", help="include wall time in the report")
    s.set_defaults(fn=cmd_solve)

    o = sub.add_parser("oracle", help="exact values by embedding enumeration")
    o.add_argument("--input", required=True)
    o.add_argument("--cap", type=int, default=DEFAULT_CAP)
    o.add_argument("--out")
    o.set_defaults(fn=cmd_oracle)

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("--family", choices=["I", "II", "III", "ziegler", "random", "grid"], required=True)
    g.add_argument("--r", type=int, default=1)
    g.add_argument("--l", type=int, default=2)
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--delta", type=int, default=4)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--rows", type=int, default=10)
    g.add_argument("--cols", type=int)
    g.add_argument("--h-edges", default="", help="pairs as 'u-v,u-v' (ziegler)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(fn=cmd_gen)

    b = sub.add_parser("bench", help="timing tables")
    b.add_argument("--family", choices=["grid"], default="grid")
    b.add_argument("--sizes", default="25000,50000,100000,200000")
    b.add_argument("--k", type=int, default=8)
    b.add_argument("--repeats", type=int, default=3)
    b.add_argument("--mode", choices=[WEAK, STRONG], default=STRONG)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--kernels", action="store_true", help="compare compiled and Python kernels")
    b.add_argument("--out")
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv=None) -> int:
    a = parser().parse_args(argv)
    try:
        return a.fn(a)
    except ParseError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    except (NotPlanar, Disconnected) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_GRAPH
    except GraphError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
