"""Acceptance gate: every criterion checked exactly, one PASS/FAIL line each.

The lines are collected in ``RESULTS`` and printed in the terminal summary by
``conftest.pytest_terminal_summary``; each test also asserts, so a red
criterion fails the run.
"""
from __future__ import annotations

import json
import random
from fractions import Fraction as F

import pytest

from atlas import classic, gadgets, report
from atlas.corpus import complete_graph, random_connected_graph, random_max_degree_graph, standard_corpus
from atlas.graph import is_metric
from atlas.highway import anchored_hitting_set, enumerate_shortest_paths
from atlas.kcenter import exact_kcenter, hochbaum_shmoys
from atlas.skeleton import brute_force_skeleton_dimension, skeleton_dimension
from conftest import random_metric
from oracles import vertex_cover_oracle

RESULTS: dict[int, str] = {}
EPSILONS = (F(1, 4), F(1, 2), F(3, 4))


def record(num: int, title: str, failures: list, detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {num} {status}: {title}"
    if detail:
        line += f" ({detail})"
    if failures:
        line += f"; first failures: {failures[:3]}"
    RESULTS[num] = line
    assert not failures, line


def gadget_family() -> list[tuple[str, object]]:
    out = []
    for n in range(2, 11):
        out.append((f"star{n}", gadgets.star(n)[0]))
    for l in range(1, 7):
        out.append((f"substar{l}", gadgets.subdivided_star(l)[0]))
    for n in range(2, 7):
        out.append((f"kexp{n}", gadgets.complete_graph_exp_weights(n)[0]))
    for b in range(1, 9):
        for v in gadgets.CATERPILLAR_VARIANTS:
            out.append((f"cat{b}-{v}", gadgets.caterpillar(b, v)[0]))
    for d in (1, 2):
        out.append((f"bintree{d}", gadgets.binary_tree_geometric(d)[0]))
    for q in (2, 3, 4):
        out.append((f"grid{q}", gadgets.subdivided_grid(q)[0]))
    rng = random.Random(7)
    for i in range(6):
        base = random_connected_graph(rng, 4 + i, 0.4, "unit")
        out.append((f"tight{i}", gadgets.spanning_tree_tight_weights(base)[0]))
        out.append((f"plain{i}", gadgets.spanning_tree_tight_weights(base, metric=False)[0]))
    for i in range(4):
        out.append((f"vc{i}", gadgets.vc_reduction(random_max_degree_graph(rng, 4 + 2 * i))[0]))
    return [(name, g) for name, g in out if g.n <= 64]


def test_criterion_1_sweep_matches_brute_force():
    rng = random.Random(101)
    graphs = [(f"random{i}", random_connected_graph(rng, rng.randint(2, 10), rng.choice((0.2, 0.4, 0.7)),
                                                    ("rational", "small", "unit")[i % 3]))
              for i in range(60)]
    graphs += gadget_family()
    bad = []
    for name, g in graphs:
        sweep, brute = skeleton_dimension(g).kappa, brute_force_skeleton_dimension(g)
        if sweep != brute:
            bad.append((name, sweep, brute))
    record(1, "sweep kappa equals brute-force kappa", bad, f"{len(graphs)} graphs")


def _reference_values() -> list[tuple[str, bool]]:
    checks = []
    for n in range(2, 9):
        g = gadgets.star(n)[0]
        checks.append((f"star{n} kappa", skeleton_dimension(g).kappa == n - 1))
        checks.append((f"star{n} tw", classic.treewidth(g).value == 1))
    for b in range(1, 7):
        g = gadgets.caterpillar(b, "skel-3")[0]
        checks.append((f"caterpillar{b} skel-3 kappa", skeleton_dimension(g).kappa == 3))
    for n in range(3, 7):
        g = complete_graph(n)
        checks.append((f"K{n} bw", classic.bandwidth(g).value == n - 1))
        checks.append((f"K{n} ml", classic.max_leaf_number(g).value == n - 1))
    for n in range(2, 7):
        g = gadgets.complete_graph_exp_weights(n)[0]
        checks.append((f"kexp{n} hd1", report.compute_parameter(g, "hd1")["value"] == 1))
    for l in range(1, 7):
        g = gadgets.subdivided_star(l)[0]
        checks.append((f"substar{l} hd2", report.compute_parameter(g, "hd2")["value"] == l))
    for d in (1, 2):
        g = gadgets.binary_tree_geometric(d)[0]
        checks.append((f"bintree{d} kappa", skeleton_dimension(g).kappa <= 3))
        checks.append((f"bintree{d} pw", classic.pathwidth(g).value == d))
    g = gadgets.subdivided_grid(3)[0]
    checks.append(("grid3 metric", is_metric(g)[0]))
    checks.append(("grid3 kappa", skeleton_dimension(g).kappa <= 10))
    rep = report.run_gadget_claims("subdivided_grid", {"q": 3})
    checks.append(("grid3 hd2", next(r for r in rep["claims"] if r["param"] == "hd2")["pass"]))
    for b in range(1, 7):
        g = gadgets.caterpillar(b, "hd1-const")[0]
        checks.append((f"caterpillar{b} hd1-const hd1", report.compute_parameter(g, "hd1")["value"] <= 7))
    return checks


def test_criterion_2_reference_values():
    checks = _reference_values()
    record(2, "published gadget values reproduced", [name for name, ok in checks if not ok],
           f"{len(checks)} values")


def test_criterion_3_tight_weights():
    rng = random.Random(303)
    bad, count = [], 0
    for i in range(24):
        n = 3 + i % 10
        g = random_connected_graph(rng, n, rng.choice((0.2, 0.4, 0.6)), "unit")
        out, _ = gadgets.spanning_tree_tight_weights(g, metric=True)
        ml = classic.max_leaf_number(g).value
        kappa = skeleton_dimension(out).kappa
        count += 1
        if kappa != ml or not is_metric(out)[0]:
            bad.append((i, n, kappa, ml))
    record(3, "metric tight weighting has kappa = ml", bad, f"{count} graphs, n in 3..12")


def corpus_reports() -> list[dict]:
    return [r.to_dict() for r in report.verify_graphs(standard_corpus())]


@pytest.fixture(scope="module")
def corpus_run():
    return corpus_reports()


def test_criterion_4_hierarchy(corpus_run):
    bad = [(r["graph_id"], c["name"], c["lhs"], c["rhs"])
           for r in corpus_run for c in r["checks"] if not c["pass"]]
    errors = [r["graph_id"] for r in corpus_run if any(p["status"] == "error" for p in r["params"].values())]
    n_checks = sum(len(r["checks"]) for r in corpus_run)
    record(4, "parameter hierarchy holds on the corpus", bad + errors,
           f"{len(corpus_run)} graphs, {n_checks} checks")


def test_criterion_5_vc_identity():
    graphs = [(name, g) for name, g in standard_corpus()
              if g.n <= 10 and max(g.degree(v) for v in range(g.n)) <= 3]
    rng = random.Random(505)
    graphs += [(f"deg3-{i}", random_max_degree_graph(rng, 3 + i % 8)) for i in range(16)]
    bad = []
    for name, g in graphs:
        out, _ = gadgets.vc_reduction(g)
        w = anchored_hitting_set(enumerate_shortest_paths(out, cap=None), 2 * g.n, F(5, 2), "hd3")
        want = vertex_cover_oracle(g) + g.n + 1
        if w.value != want:
            bad.append((name, w.value, want))
    record(5, "anchored vc_reduction optimum is |C| + n + 1", bad, f"{len(graphs)} graphs")


def embedding_rows() -> list[dict]:
    rows = []
    for seed in range(12):
        x = random_metric(seed, 4 + seed % 9, clustered=seed % 3 != 2)
        for eps in EPSILONS:
            rep, _ = report.embedding_report(x, eps)
            rows.append({"seed": seed, **rep})
    return rows


def test_criterion_6_embedding():
    rows = embedding_rows()
    bad = []
    for r in rows:
        tag = (r["seed"], r["epsilon"])
        if not r["distortion_ok"]:
            bad.append(tag + ("stretch",))
        if r["hierarchy_violations"]:
            bad.append(tag + ("hierarchy",))
        if r["pruning_violations"]:
            bad.append(tag + ("pruning",))
        if r["long_edge_violations"]:
            bad.append(tag + ("long edge",))
        if r["kappa_bound_ok"] is False or r["doubling"] is None:
            bad.append(tag + ("kappa bound",))
    pruned = sum(r["unpruned_edges"] - r["edges"] for r in rows)
    record(6, "embedding stretch, pruning, long edges and kappa bound", bad,
           f"{len(rows) // 3} metrics x 3 epsilons, {pruned} pruned edges")


def kcenter_rows() -> list[dict]:
    rows = []
    for name, g in standard_corpus():
        if g.n > 14:
            continue
        for k in (1, 2, 3):
            if k <= g.n:
                rows.append({"graph": name, "k": k,
                             "greedy": report.to_json(hochbaum_shmoys(g, k).radius),
                             "exact": report.to_json(exact_kcenter(g, k).radius)})
    return rows


def test_criterion_7_kcenter():
    rows = kcenter_rows()
    bad = [r for r in rows if F(r["greedy"]) > 2 * F(r["exact"])]
    record(7, "greedy k-center within twice the optimum", bad, f"{len(rows)} instances")


def full_run(corpus: list[dict] | None = None) -> str:
    payload = {
        "corpus": corpus if corpus is not None else corpus_reports(),
        "embedding": embedding_rows(),
        "kcenter": kcenter_rows(),
        "gadgets": [report.run_gadget_claims(f, p) for f, p in (
            ("star", {"n": 6}), ("caterpillar", {"b": 4, "variant": "skel-bw"}),
            ("subdivided_grid", {"q": 2}), ("binary_tree_geometric", {"d": 1}))],
    }
    return json.dumps(payload, sort_keys=True)


def test_criterion_8_determinism(corpus_run):
    first = full_run(corpus_run)
    second = full_run()
    bad = [] if first == second else ["reports differ"]
    record(8, "two runs give identical sorted JSON", bad, f"{len(first)} bytes")
