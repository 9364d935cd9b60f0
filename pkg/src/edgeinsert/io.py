"""Instance and report files.

Instance format, one record per line::

    p <vertices> <edges> <pairs>
    e <u> <v>        one per graph edge, in id order
    f <u> <v>        one per pair to insert
    # lb <value>     optional certified lower bound
    # budget <value> optional decision budget

Other lines starting with ``#`` are comments and are dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .multigraph import InsertionSet, Multigraph, build, insertion_set


class ParseError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


@dataclass
class Instance:
    graph: Multigraph
    pairs: InsertionSet
    lb: int | None = None
    budget: int | None = None

    def __iter__(self):
        return iter((self.graph, self.pairs))


def dumps_instance(inst: Instance) -> str:
    g = inst.graph
    out = [f"p {g.n} {g.m} {len(inst.pairs)}"]
    if inst.lb is not None:
        out.append(f"# lb {inst.lb}")
    if inst.budget is not None:
        out.append(f"# budget {inst.budget}")
    out.extend(f"e {u} {v}" for u, v in zip(g.eu, g.ev))
    out.extend(f"f {u} {v}" for u, v in inst.pairs)
    return "\n".join(out) + "\n"


def loads_instance(text: str) -> Instance:
    header = None
    edges: list[tuple[int, int]] = []
    pairs: list[tuple[int, int]] = []
    meta: dict[str, int] = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] in ("lb", "budget"):
                meta[parts[0]] = _int(parts[1], no)
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if header is not None or len(parts) != 4:
                raise ParseError(no, "bad or repeated header")
            header = tuple(_int(x, no) for x in parts[1:])
        elif tag in ("e", "f"):
            if header is None:
                raise ParseError(no, "record before header")
            if len(parts) != 3:
                raise ParseError(no, f"expected '{tag} u v'")
            u, v = _int(parts[1], no), _int(parts[2], no)
            for x in (u, v):
                if not 0 <= x < header[0]:
                    raise ParseError(no, f"vertex {x} out of range")
            if u == v:
                raise ParseError(no, f"loop at {u}")
            (edges if tag == "e" else pairs).append((u, v))
        else:
            raise ParseError(no, f"unknown record {tag!r}")
    if header is None:
        raise ParseError(0, "missing header")
    n, m, k = header
    if len(edges) != m or len(pairs) != k:
        raise ParseError(0, f"header says {m} edges/{k} pairs, found {len(edges)}/{len(pairs)}")
    return Instance(build(n, edges), insertion_set(pairs), meta.get("lb"), meta.get("budget"))


def _int(s: str, no: int) -> int:
    try:
        return int(s)
    except ValueError:
        raise ParseError(no, f"not an integer: {s!r}") from None


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def write_instance(path: str, inst: Instance) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_instance(inst))


def dumps_report(d: dict) -> str:
    return json.dumps(d, indent=2, sort_keys=True) + "\n"
