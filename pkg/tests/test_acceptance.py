"""The nine acceptance criteria, one test each.

Every test prints a single PASS/FAIL line with the measured numbers.
"""

import random
import subprocess
import sys

import pytest

from edgeinsert.bench import scaling
from edgeinsert.generators import gen_construction_II, gen_construction_III, gen_random_planar
from edgeinsert.insertion import honors, specify
from edgeinsert.io import dumps_instance, dumps_report
from edgeinsert.mei import STRONG, WEAK, report, run_mei, solve, strong_guarantee, weak_guarantee
from edgeinsert.multigraph import max_degree
from edgeinsert.oracle import Enumerator, TooManyEmbeddings, exact_ins_each, exact_ins_prime, exact_ins_single

from conftest import small_instances

CAP = 100_000


def verdict(capsys, num, name, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'}  {name}: {detail}")


def make_corpus(seed=2024, size=500):
    rng = random.Random(seed)
    out = []
    for i in range(size):
        r = i % 10
        if r < 6:
            n = rng.randint(3, 14)
        elif r < 9:
            n = rng.randint(15, 200)
        else:
            n = rng.randint(201, 10_000)
        out.append(gen_random_planar(n, rng.randint(1, 16), rng.randrange(10**9)))
    return out


@pytest.fixture(scope="module")
def corpus_runs():
    """Both modes on every corpus instance, with embedding checks done on the way."""
    rows = []
    for inst in make_corpus():
        g, pairs = inst
        row = {"inst": inst}
        for mode in (WEAK, STRONG):
            st = solve(g, pairs, mode)
            rep = report(g, pairs, st, mode)
            row[mode] = rep
            row[mode + "_euler"] = st.embedding.euler_ok()
            row[mode + "_defect"] = honors(specify(st.embedding, st.ct, st.sk), st.merged.values())[0]
        rows.append(row)
    return rows


def test_1_single_insertion_exact(capsys):
    insts = small_instances(240, 7, nmax=12, mmax=20, kmax=1)
    bad = []
    for inst in insts:
        g, pairs = inst
        assert g.n <= 12 and g.m <= 20 and len(pairs) == 1
        got = run_mei(g, pairs).total
        want = exact_ins_single(g, *pairs[0], cap=CAP)
        if got != want:
            bad.append((dumps_instance(inst), got, want))
    ok = not bad and len(insts) >= 200
    verdict(capsys, 1, "k=1 total equals oracle", ok, f"{len(insts)} instances, {len(bad)} mismatches")
    assert ok, bad[:3]


def test_2_weak_bound(capsys, corpus_runs):
    viol = []
    for row in corpus_runs:
        rep = row[WEAK]
        bound = rep.ins_sigma + weak_guarantee(rep.k, max_degree(row["inst"].graph))
        if rep.total > bound:
            viol.append((rep.total, bound))
    ok = not viol and len(corpus_runs) >= 500
    verdict(capsys, 2, "weak total <= ins_sigma + (2*floor(D/2)+1)*C(k,2)", ok, f"{len(corpus_runs)} instances, {len(viol)} violations")
    assert ok, viol[:3]


def test_3_strong_bound(capsys, corpus_runs):
    viol = []
    for row in corpus_runs:
        rep = row[STRONG]
        bound = rep.ins_sigma + strong_guarantee(rep.k, max_degree(row["inst"].graph))
        if rep.total > bound:
            viol.append((rep.total, bound))
    ok = not viol and len(corpus_runs) >= 500
    verdict(capsys, 3, "strong total <= ins_sigma + floor(D/2)*2k*floor(log2 2k) + C(k,2)", ok, f"{len(corpus_runs)} instances, {len(viol)} violations")
    assert ok, viol[:3]


def test_4_gap_family(capsys):
    got = {}
    singles_zero = True
    for l in (2, 3, 4):
        inst = gen_construction_II(l)
        got[l] = run_mei(inst.graph, inst.pairs).total
        singles_zero &= exact_ins_each(inst.graph, inst.pairs, cap=CAP) == [0] * l
    ok = got == {2: 1, 3: 3, 4: 6} and singles_zero
    verdict(capsys, 4, "antipodal family totals 1/3/6, single values 0", ok, f"totals {got}, oracle singles zero: {singles_zero}")
    assert ok


def test_5_oracle_sandwich(capsys, corpus_runs):
    checked, viol = 0, []
    for row in corpus_runs:
        g, pairs = row["inst"]
        try:
            Enumerator(g, CAP)
        except TooManyEmbeddings:
            continue
        rep = row[STRONG]
        lo = exact_ins_prime(g, pairs, cap=CAP)
        hi = lo + strong_guarantee(rep.k, max_degree(g)) - rep.k * (rep.k - 1) // 2
        checked += 1
        if not lo <= rep.crossings_with_G <= hi:
            viol.append((lo, rep.crossings_with_G, hi))
    ok = not viol and checked > 0
    verdict(capsys, 5, "ins' <= crossings with G <= ins' + floor(D/2)*2k*floor(log2 2k)", ok, f"{checked} enumerable instances, {len(viol)} violations")
    assert ok, viol[:3]


def test_6_lower_bound_family(capsys):
    m, delta, d = 2, 4, 1
    inst = gen_construction_III(m, delta)
    total = run_mei(inst.graph, inst.pairs).total
    ok = total >= 4 and inst.lb == delta * m * d // 2 == 4
    verdict(capsys, 6, "bolt family (m=2, D=4, d=1) total >= 4", ok, f"total {total}, lb metadata {inst.lb}")
    assert ok


def test_7_embedding_validity(capsys, corpus_runs):
    runs = 0
    bad = []
    for i, row in enumerate(corpus_runs):
        for mode in (WEAK, STRONG):
            runs += 1
            if not row[mode + "_euler"] or row[mode + "_defect"] != 0:
                bad.append((i, mode, row[mode + "_euler"], row[mode + "_defect"]))
    families = [gen_construction_II(l) for l in (2, 3, 4)] + [gen_construction_III(2, 4)]
    for inst in families:
        st = solve(inst.graph, inst.pairs)
        runs += 1
        if not st.embedding.euler_ok() or honors(specify(st.embedding, st.ct, st.sk), st.merged.values())[0]:
            bad.append(("family", inst.graph.n))
    ok = not bad
    verdict(capsys, 7, "Euler holds and merged preferences are honored", ok, f"{runs} embeddings, {len(bad)} failures")
    assert ok, bad[:3]


def test_8_runtime_shape(capsys):
    rows = scaling([25_000, 50_000, 100_000, 200_000], k=8, repeats=3)
    ratios = [r["ratio"] for r in rows[1:]]
    last = rows[-1]["median_s"]
    ok = all(x <= 2.5 for x in ratios) and last <= 30.0
    detail = ", ".join(f"n={r['n']}: {r['median_s']:.2f}s" for r in rows)
    verdict(capsys, 8, "doubling ratio <= 2.5, 2e5 run <= 30 s", ok, f"{detail}; ratios {[round(x, 2) for x in ratios]}")
    assert ok


def test_9_determinism(capsys, tmp_path):
    insts = make_corpus(seed=99, size=30) + [gen_construction_III(2, 4)]
    same = 0
    for inst in insts:
        a = dumps_report(run_mei(*inst).to_dict(True))
        b = dumps_report(run_mei(*inst).to_dict(True))
        same += a == b
    path = tmp_path / "inst.txt"
    path.write_text(dumps_instance(insts[3]))
    cmd = [sys.executable, "-m", "edgeinsert.cli", "solve", "--input", str(path), "--dump-embedding"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    ok = same == len(insts) and outs[0] == outs[1] and len(outs[0]) > 0
    verdict(capsys, 9, "byte-identical reports", ok, f"{same}/{len(insts)} in-process, CLI identical: {outs[0] == outs[1]}")
    assert ok
