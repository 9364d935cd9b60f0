import json
import subprocess
import sys

import pytest

from edgeinsert.cli import main
from edgeinsert.generators import gen_construction_III, gen_random_planar, gen_ziegler
from edgeinsert.io import Instance, ParseError, dumps_instance, loads_instance, read_instance, write_instance
from edgeinsert.multigraph import build, insertion_set

from conftest import k_n

K5 = "p 5 10 0\n" + "".join(f"e {u} {v}\n" for u in range(5) for v in range(u + 1, 5))


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_round_trip_keeps_metadata():
    inst = gen_construction_III(2, 4)
    text = dumps_instance(inst)
    back = loads_instance(text)
    assert back.lb == 4 and back.budget is None
    assert (back.graph.eu, back.graph.ev) == (inst.graph.eu, inst.graph.ev)
    assert list(back.pairs) == list(inst.pairs)
    assert dumps_instance(back) == text
    z = loads_instance(dumps_instance(gen_ziegler([(0, 2)], 3, 5)))
    assert z.budget == 5


def test_file_round_trip(tmp_path):
    inst = gen_random_planar(20, 3, seed=4)
    path = str(tmp_path / "a.txt")
    write_instance(path, inst)
    assert dumps_instance(read_instance(path)) == dumps_instance(inst)


def test_instance_unpacks():
    inst = Instance(build(2, [(0, 1)]), insertion_set([]))
    g, pairs = inst
    assert g.m == 1 and list(pairs) == []


def test_comments_and_blank_lines():
    inst = loads_instance("# hello\n\np 3 2 1\n#lb 2\ne 0 1\n  e 1 2\n#note\nf 0 2\n")
    assert inst.graph.m == 2 and inst.lb == 2 and list(inst.pairs) == [(0, 2)]


@pytest.mark.parametrize(
    "text, line",
    [
        ("e 0 1\n", 1),
        ("p 3 1 0\np 3 1 0\n", 2),
        ("p 3 1 0\ne 0 x\n", 2),
        ("p 3 1 0\ne 0 5\n", 2),
        ("p 3 1 0\ne 1 1\n", 2),
        ("p 3 1 0\ne 0 1 2\n", 2),
        ("p 3 1 0\nq 0 1\n", 2),
        ("p 3 2 0\ne 0 1\n", 0),
        ("", 0),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        loads_instance(text)
    assert err.value.line_no == line


def test_solve_writes_report(tmp_path, capsys):
    src = write(tmp_path, "k5e.txt", "p 5 9 1\n" + "".join(f"e {u} {v}\n" for u in range(5) for v in range(u + 1, 5) if (u, v) != (0, 1)) + "f 0 1\n")
    out = str(tmp_path / "r.json")
    assert main(["solve", "--input", src, "--out", out]) == 0
    rep = json.loads(open(out).read())
    assert rep["total"] == 1 and rep["ins_values"] == [1]
    assert "wall_time" not in rep or rep["wall_time"] is None
    assert main(["solve", "--input", src, "--timing"]) == 0
    assert json.loads(capsys.readouterr().out)["wall_time"] >= 0


def test_solve_planarize_and_embedding(tmp_path):
    src = write(tmp_path, "k5e.txt", "p 5 9 1\n" + "".join(f"e {u} {v}\n" for u in range(5) for v in range(u + 1, 5) if (u, v) != (0, 1)) + "f 0 1\n")
    pl = str(tmp_path / "pl.txt")
    out = str(tmp_path / "r.json")
    assert main(["solve", "--input", src, "--planarize", pl, "--dump-embedding", "--out", out]) == 0
    h = read_instance(pl)
    assert h.graph.n == 6 and h.graph.m == 12
    assert len(json.loads(open(out).read())["rotation"]) == 5


def test_non_planar_exit_code(tmp_path, capsys):
    src = write(tmp_path, "k5.txt", K5)
    assert main(["solve", "--input", src]) == 2
    assert "Kuratowski" in capsys.readouterr().err


def test_disconnected_exit_code(tmp_path):
    src = write(tmp_path, "d.txt", "p 4 2 1\ne 0 1\ne 2 3\nf 0 2\n")
    assert main(["solve", "--input", src]) == 2


def test_parse_and_io_exit_codes(tmp_path):
    assert main(["solve", "--input", write(tmp_path, "bad.txt", "p 3 x 0\n")]) == 3
    assert main(["solve", "--input", str(tmp_path / "missing.txt")]) == 3
    assert main(["gen", "--family", "II", "--l", "1"]) == 3


def test_oracle_and_cap(tmp_path, capsys):
    src = write(tmp_path, "k4.txt", dumps_instance(Instance(k_n(4), insertion_set([(0, 1)]))))
    assert main(["oracle", "--input", src]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep == {"ins_prime": 0, "ins_single": [0], "k": 1}
    chain = []
    for i in range(12):
        a, b, c, d = 2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3
        chain += [(a, b), (a, c), (a, d), (b, c), (b, d), (c, d)]
    big = write(tmp_path, "big.txt", dumps_instance(Instance(build(26, chain), insertion_set([(0, 25)]))))
    assert main(["oracle", "--input", big, "--cap", "100"]) == 4


def test_gen_is_deterministic(tmp_path, capsys):
    for args in (["--family", "random", "--n", "30", "--k", "3", "--seed", "7"], ["--family", "ziegler", "--n", "5", "--h-edges", "0-2,1-3"]):
        assert main(["gen", *args]) == 0
        first = capsys.readouterr().out
        assert main(["gen", *args]) == 0
        assert capsys.readouterr().out == first
    assert main(["gen", "--family", "grid", "--rows", "3", "--k", "1"]) == 0
    assert loads_instance(capsys.readouterr().out).graph.n == 9


def test_bench_table(capsys):
    assert main(["bench", "--sizes", "100,400", "--k", "2", "--repeats", "1"]) == 0
    out = capsys.readouterr().out
    assert "median_s" in out and len(out.strip().splitlines()) >= 3


def test_module_entry_point(tmp_path):
    src = write(tmp_path, "k4.txt", dumps_instance(Instance(k_n(4), insertion_set([(0, 1)]))))
    run = lambda: subprocess.run([sys.executable, "-m", "edgeinsert.cli", "solve", "--input", src], capture_output=True, check=True).stdout
    assert run() == run()
