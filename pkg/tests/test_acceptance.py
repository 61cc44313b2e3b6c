"""Exit criteria.  Each test records one PASS/FAIL line shown in the pytest summary."""
import json
import random
import time

import pytest

from conftest import complete, record_acceptance, tripartite333
from listcolor.bench import differential_run, mixed_specs
from listcolor.cli import main
from listcolor.generate import GenSpec, generate, generate_flagged
from listcolor.instance import FULL, POPCOUNT, build_instance, check_hypothesis, disjoint_union, max_degree, min_degree, verify_assignment
from listcolor.lcol import parse_lcol, write_lcol
from listcolor.oracle import brute_force, brute_force_3color
from listcolor.solver import C, CASE4, Decision, SolverConfig, solve, three_colorability
from listcolor.twolist import solve_two_list, two_list_work_bound

EPS = 1e-9


def _hypothesis_corpus(count, seed):
    """Instances with 10..40 vertices that satisfy the degree/list hypothesis."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(10, 40)
        if rng.random() < 0.3:
            spec = GenSpec(n=n, edge_probability=round(rng.uniform(0.0, 0.15), 3), list_profile="all-three",
                           min_degree=6, seed=rng.getrandbits(63))
        else:
            spec = GenSpec(n=n, edge_probability=round(rng.uniform(0.03, 0.2), 3), list_profile="two-three-mix",
                           p2=round(rng.uniform(0.2, 0.7), 3), repair_hypothesis=True, min_degree=3,
                           seed=rng.getrandbits(63))
        inst, ok = generate_flagged(spec)
        if ok and not check_hypothesis(inst):
            out.append((spec, inst))
    return out


def test_c1_oracle_equivalence():
    t0 = time.perf_counter()
    report = differential_run(1000, (4, 12), seed=2024)
    elapsed = time.perf_counter() - t0
    s = report.summary()
    profiles = {r["spec"]["list_profile"] for r in report.records}
    repairs = {r["spec"]["repair_hypothesis"] for r in report.records}
    witnesses = [r["witness_ok"] for r in report.records if r["decision"] == "CHOOSABLE"]
    ok = (
        s["count"] == 1000
        and s["checked_against_oracle"] == 1000
        and s["mismatches"] == 0
        and all(witnesses)
        and len(profiles) >= 3
        and repairs == {True, False}
        and elapsed < 120
    )
    record_acceptance("C1 oracle equivalence", ok,
                      f"n=1000 mismatches={s['mismatches']} choosable={len(witnesses)} {elapsed:.1f}s")
    assert ok, s


def test_c2_two_list_solver():
    rng = random.Random(77)
    mismatches = 0
    for i in range(1000):
        profile = "one-two" if i % 2 else "two-three-mix"
        spec = GenSpec(n=rng.randint(4, 14), edge_probability=round(rng.uniform(0.1, 0.6), 3),
                       list_profile=profile, p2=1.0, seed=rng.getrandbits(63))
        inst = generate(spec)
        assert all(POPCOUNT[m] <= 2 for m in inst.lists.values())
        a = solve_two_list(inst)
        ref = brute_force(inst)
        if (a is None) != (ref is None) or (a is not None and not verify_assignment(inst, a)):
            mismatches += 1

    # doubling by disjoint union: work per copy stays within a 2x band
    band_ok = True
    worst = 1.0
    for seed in range(40):
        base = generate(GenSpec(n=12, edge_probability=0.3, list_profile="one-two", seed=seed))
        w1 = two_list_work_bound(base)
        cur, copies = base, 1
        for _ in range(3):
            cur, copies = disjoint_union(cur, cur), copies * 2
            ratio = two_list_work_bound(cur) / (copies * w1)
            worst = max(worst, ratio, 1 / ratio)
            band_ok &= 0.5 <= ratio <= 2.0

    # connected instances of growing size: work / (n + m) stays within a 2x band
    per = []
    for n in (100, 200, 400, 800):
        inst = generate(GenSpec(n=n, edge_probability=4.0 / n, list_profile="one-two", seed=n))
        per.append(two_list_work_bound(inst) / (n + inst.num_edges()))
    growth_ok = max(per) <= 2 * min(per)

    ok = mismatches == 0 and band_ok and growth_ok
    record_acceptance("C2 two-list solver", ok,
                      f"mismatches={mismatches} union-ratio-worst={worst:.3f} work/(n+m)={[round(p, 2) for p in per]}")
    assert ok


# (n3 offset, n2 offset) per child, copied from the printed running-time sums
RECURRENCES = {
    "case1": [(-7, 6)] * 3,
    "case2 w has 2": [(-6, 3), (-6, 4), (-6, 5)],
    "case2 u6 degree 1": [(-6, 4)] * 3,
    "case3.1 {1,2} u2 deg 1": [(-6, 3), (-6, 3), (-5, 3)],
    "case3.1 {1,2} u2 deg>=2": [(-6, 2), (-6, 3), (-5, 4)],
    "case3.1 {1,3}": [(-6, 3), (-6, 4), (-5, 3)],
    "case3.1 u1' ~ v, {1,2}": [(-5, 1), (-5, 1), (-5, 4)],
    "case3.1 u1' ~ v, {1,3}": [(-5, 2), (-5, 1), (-5, 3)],
    "case3.2": [(-5, 2)] * 3,
    "case3.3": [(-5, 1), (-5, 2), (-5, 3)],
    "case3.5": [(-5, 0), (-5, 1), (-5, 4)],
    "case3.7": [(-5, 1), (-5, 1), (-5, 3)],
    "case3.8": [(-5, 0), (-5, 0), (-5, 4)],
    "case3.9": [(-5, 1), (-5, 2), (-5, 3)],
    "case3.10 u2 deg 1": [(-5, 1), (-5, 1), (-5, 3)],
    "case3.10 u2 deg>1": [(-5, 1), (-5, 0), (-5, 4)],
    "case3.11": [(-5, 3), (-5, 1), (-5, 2)],
    "case3.12": [(-5, 2), (-5, 0), (-5, 3)],
}


def test_c3_recurrence_constants():
    sums = {name: sum(C ** (d3 + 0.5 * d2) for d3, d2 in kids) for name, kids in RECURRENCES.items()}
    bad = {name: round(s, 6) for name, s in sums.items() if s > 1 + EPS}
    case4_ok = C ** 2.5 >= 2 - EPS
    ok = not bad and case4_ok
    record_acceptance("C3 recurrence constants", ok,
                      f"{len(sums) - len(bad)}/{len(sums)} sums <= 1, c^2.5={C ** 2.5:.6f}; over 1: {bad}")
    assert case4_ok
    assert not bad, f"printed running-time sums exceeding 1: {bad}"


@pytest.fixture(scope="module")
def hypothesis_corpus():
    return _hypothesis_corpus(240, seed=4040)


def test_c4_bound_property(hypothesis_corpus):
    specs = [s for s, _ in hypothesis_corpus]
    worst = 0.0
    clean_total = 0
    ok = len(specs) >= 200
    for pruning in (True, False):
        report = differential_run(len(specs), (10, 40), seed=0, config=SolverConfig(case4_pruning=pruning),
                                  specs=specs, oracle=False)
        s = report.summary()
        clean = [r for r in report.records if r["recurrence_violations"] == 0 and r["hypothesis_fallbacks"] == 0]
        clean_total += len(clean)
        ok &= s["aborted"] == 0 and len(clean) > 0
        ok &= all(r["leaves"] <= r["bound_c_pow_mu"] * (1 + EPS) for r in clean)
        ok &= s["max_leaf_ratio"] <= 1.0
        worst = max(worst, s["max_leaf_ratio"])
    record_acceptance("C4 bound property", ok,
                      f"instances={len(specs)} violation-free runs={clean_total}/{2 * len(specs)} max leaves/c^mu={worst:.4f}")
    assert ok


def test_c5_partition_invariants(hypothesis_corpus):
    nodes = []

    def observer(inst, kind):
        if kind.kind == CASE4:
            nodes.append((inst, kind.partition))

    cfg = SolverConfig(observer=observer)
    for spec in mixed_specs(1000, (4, 12), seed=2024):
        solve(generate(spec), cfg)
    for _, inst in hypothesis_corpus:
        solve(inst, cfg)

    failures = 0
    for inst, p in nodes:
        y2 = set(p.Y2)
        # recount from raw adjacency
        x2_to_y2 = [sum(1 for u in inst.adj[a] if u in y2) for a in p.X2]
        lists_ok = all(POPCOUNT[inst.lists[a]] == 2 for a in p.X1 + p.X2) and all(inst.lists[b] == FULL for b in p.Y1 + p.Y2)
        good = (
            len(p.Y1) >= 2 * len(p.X1)
            and 3 * len(p.Y2) <= len(p.X2)
            and all(k <= 1 for k in x2_to_y2)
            and lists_ok
        )
        failures += not good
    ok = failures == 0 and len(nodes) >= 100
    record_acceptance("C5 partition invariants", ok, f"case-4 nodes={len(nodes)} failures={failures}")
    assert ok


def _near_tripartite(n, rng):
    """Dense 3-partite graph with minimum degree 6, plus 0-2 edges inside parts."""
    part = {v: rng.randrange(3) for v in range(n)}
    adj = {v: set() for v in range(n)}

    def link(u, v):
        adj[u].add(v)
        adj[v].add(u)

    for u in range(n):
        for v in range(u + 1, n):
            if part[u] != part[v] and rng.random() < 0.6:
                link(u, v)
    for v in range(n):
        pool = sorted(u for u in range(n) if part[u] != part[v] and u not in adj[v])
        while len(adj[v]) < 6 and pool:
            link(v, pool.pop(rng.randrange(len(pool))))
    for _ in range(rng.randint(0, 2)):
        u, v = rng.sample(range(n), 2)
        link(u, v)
    return build_instance(range(n), [(u, v) for u in adj for v in adj[u] if u < v])


def test_c6_three_colorability():
    k7 = three_colorability(complete(7)).decision is Decision.NOT_CHOOSABLE
    k333 = three_colorability(tripartite333()).decision is Decision.CHOOSABLE
    rng = random.Random(606)
    mismatches = bound_fail = clean = colorable = 0
    total = 220
    graphs = i = 0
    while graphs < total:
        i += 1
        n = rng.randint(7, 14)
        if i % 2:
            g = generate(GenSpec(n=n, edge_probability=round(rng.uniform(0.0, 0.35), 3), list_profile="all-three",
                                 min_degree=6, seed=rng.getrandbits(63)))
        else:
            g = _near_tripartite(rng.randint(10, 14), rng)
            n = len(g)
        if min_degree(g) < 6:
            continue
        graphs += 1
        res = three_colorability(g)
        ref = brute_force_3color(g)
        colorable += ref is not None
        if (res.decision is Decision.CHOOSABLE) != (ref is not None):
            mismatches += 1
        if res.witness is not None and not verify_assignment(g, res.witness):
            mismatches += 1
        if res.stats.violation_free:
            clean += 1
            delta = max_degree(g)
            if res.stats.leaves > 3 * C ** ((n - 1 - delta) + 0.5 * delta) * (1 + EPS):
                bound_fail += 1
    ok = k7 and k333 and mismatches == 0 and bound_fail == 0 and graphs >= 200
    record_acceptance("C6 corollary 3-colorability", ok,
                      f"K7={k7} K333={k333} graphs={graphs} colorable={colorable} mismatches={mismatches} "
                      f"violation-free={clean} bound-fail={bound_fail}")
    assert ok


def test_c7_cli_contract(tmp_path, capsys):
    roundtrip = all(
        parse_lcol(write_lcol(parse_lcol(write_lcol(inst)))) == parse_lcol(write_lcol(inst))
        for inst in (generate(s) for s in mixed_specs(300, (1, 40), seed=70))
    )

    k7 = tmp_path / "k7.lcol"
    k7.write_text(write_lcol(complete(7)))
    k333 = tmp_path / "k333.lcol"
    k333.write_text(write_lcol(tripartite333()))
    bad = tmp_path / "bad.lcol"
    bad.write_text("p lcol 1 0\nl 1 3 1\n")
    wit = tmp_path / "w.txt"
    codes = {
        "negative": main(["solve", str(k7)]),
        "positive": main(["solve", str(k333), "--witness", str(wit)]),
        "verify": main(["verify", str(k333), str(wit)]),
        "parse": main(["solve", str(bad)]),
        "abort": main(["solve", str(k7), "--node-cap", "0"]),
    }
    words = capsys.readouterr().out.split()
    exit_ok = codes == {"negative": 1, "positive": 0, "verify": 0, "parse": 2, "abort": 3}
    exit_ok &= words == ["NOT-CHOOSABLE", "CHOOSABLE", "VALID", "ABORTED"]

    docs = []
    for name in ("a", "b"):
        p = tmp_path / f"{name}.jsonl"
        main(["bench", "--count", "100", "--n", "10", "--seed", "7", "--stats", str(p)])
        docs.append((capsys.readouterr().out, p.read_bytes()))
    det_ok = docs[0] == docs[1] and len(docs[0][1].splitlines()) == 100
    json.loads(docs[0][0])

    ok = roundtrip and exit_ok and det_ok
    record_acceptance("C7 CLI contract", ok, f"roundtrip={roundtrip} exit-codes={codes} bench-identical={det_ok}")
    assert ok
