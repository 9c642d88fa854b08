"""Acceptance criteria 1-8, each at its stated scale.

Every test records one PASS/FAIL line, printed in the terminal summary,
before asserting zero violations.
"""

import random
import time
from math import factorial

from boxkit.boxrep import brute_force_boxicity, verify
from boxkit.gadgets import (block_exhaustion, build_gn, build_k2n, gn_box_representation, gn_labeling,
                            stab_analysis)
from boxkit.graph import Graph, bandwidth_of_labeling
from boxkit.interval import (enumerate_canonical_models, intersect_models, is_consistent, merge_consistent,
                             model_to_graph, normalize)
from boxkit.kernel import kernelize
from boxkit.pathdp import (ReconstructionFailed, approx_boxicity, dp_feasible, optimal_path_decomposition,
                           reconstruct, window_pd)
from oracles import atlas, box, connected_atlas, min_bandwidth_labeling, random_graph
from randmodels import consistent_pair, merge_postconditions, random_model

CASES = 10_000


def record(report_line, number, title, violations, cases, started, detail=""):
    verdict = "PASS" if not violations else "FAIL"
    extra = f"; {detail}" if detail else ""
    line = (f"[{verdict}] criterion {number}: {title}: {len(violations)} violations in {cases} cases"
            f"{extra} ({time.perf_counter() - started:.1f}s)")
    print(line)
    report_line(line)
    return line


def test_criterion_1_oracle_dp_sandwich(report_line):
    t0 = time.perf_counter()
    graphs = connected_atlas(6)
    bad = []
    for g in graphs:
        res = approx_boxicity(g, optimal_path_decomposition(g))
        if not res.d <= box(g) <= res.d + 1:
            bad.append((g, res.d, box(g)))
    line = record(report_line, 1, "d <= box <= d+1 on connected graphs up to 6 vertices", bad, len(graphs), t0)
    assert not bad, line


def test_criterion_2_reconstruction_soundness(report_line):
    t0 = time.perf_counter()
    rng = random.Random(20240601)
    bad, feasible = [], 0
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 7))
        bw, lab = min_bandwidth_labeling(g)
        pd = window_pd(g, lab, bw)
        if g.is_complete():
            continue
        for d in range(1, pd.width + 3):
            chain = dp_feasible(g, pd, d)
            if chain is None:
                continue
            feasible += 1
            try:
                rep = reconstruct(chain)
            except ReconstructionFailed as exc:
                bad.append((g, str(exc)))
                break
            if not verify(g, rep):
                bad.append((g, "verify"))
            break
    line = record(report_line, 2, "reconstructions that verify", bad, feasible, t0,
                  "500 random graphs, window decompositions from minimum-bandwidth labelings")
    assert not bad, line


def test_criterion_3_kernel_preserves_boxicity(report_line):
    t0 = time.perf_counter()
    graphs = atlas(6)
    bad = [g for g in graphs if box(kernelize(g)[0]) != box(g)]
    line = record(report_line, 3, "box(kernelize(g)) = box(g) on all graphs up to 6 vertices", bad,
                  len(graphs), t0)
    assert not bad, line


def test_criterion_4_width_bound(report_line):
    t0 = time.perf_counter()
    graphs = [g for g in atlas(6) if g.n]
    bad = []
    for g in graphs:
        pd = optimal_path_decomposition(g)
        if dp_feasible(g, pd, pd.width + 2) is None:
            bad.append(g)
    line = record(report_line, 4, "DP feasible at d = width + 2 on all graphs up to 6 vertices", bad,
                  len(graphs), t0)
    assert not bad, line


def test_criterion_5_gadget_suite(report_line):
    t0 = time.perf_counter()
    bad = []
    worst_bw, min_ratio = 0, float("inf")
    for n in range(1, 101):
        gadget = build_gn(n)
        rep = gn_box_representation(n)
        bw = bandwidth_of_labeling(gadget.graph, gn_labeling(n))
        _, _, count = stab_analysis(rep, gadget.named("v"))
        worst_bw = max(worst_bw, bw)
        min_ratio = min(min_ratio, count / n)
        if not verify(gadget.graph, rep) or bw > 16 or 4 * count < n:
            bad.append((n, bw, count))
    line = record(report_line, 5, "G^n verifies, bandwidth <= 16, v-stab >= n/4 for n = 1..100", bad, 100, t0,
                  f"max bandwidth {worst_bw}, min stab/n {min_ratio:.3f}")
    assert not bad, line


def test_criterion_6_block_exhaustion(report_line):
    t0 = time.perf_counter()
    found = block_exhaustion()
    line = record(report_line, 6, "uv in one model and w1..w6 a clique in the other", found.violations,
                  found.pairs, t0, "pairs of interval supergraphs of B meeting in B")
    assert found.ok, line


def test_criterion_7_interval_model_laws(report_line):
    t0 = time.perf_counter()
    rng = random.Random(77)
    bad = []
    for i in range(CASES):
        m = random_model(rng, rng.sample(range(40), rng.randint(0, 8)))
        nm = normalize(m)
        if normalize(nm) != nm or not is_consistent(nm, m) or model_to_graph(nm) != model_to_graph(m):
            bad.append(("normalize", i))
    for i in range(CASES):
        m1, m2 = consistent_pair(rng)
        try:
            merge_postconditions(m1, m2, merge_consistent(m1, m2))
        except AssertionError:
            bad.append(("merge", i))
    for i in range(CASES):
        k = rng.randint(0, 4)
        vs = rng.sample(range(50), k)
        if sum(1 for _ in enumerate_canonical_models(vs)) != factorial(2 * k) // 2 ** k:
            bad.append(("enumerate", i))
    line = record(report_line, 7, "normalize, merge and enumeration-count laws", bad, 3 * CASES, t0)
    assert not bad, line


def test_criterion_8_k2n_family(report_line):
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 21):
        g, m1, m2 = build_k2n(n)
        k2n = Graph(range(n + 2), [(a, v) for a in (0, 1) for v in range(2, n + 2)])
        if g != k2n or intersect_models([m1, m2]) != k2n:
            bad.append(n)
    c4 = build_k2n(2)[0]
    d, _ = brute_force_boxicity(c4)
    if d != 2:
        bad.append("box(K22)")
    line = record(report_line, 8, "K_{2,n} is the intersection for n <= 20 and box(K_{2,2}) = 2", bad, 21, t0)
    assert not bad, line
