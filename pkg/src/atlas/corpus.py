"""A fixed corpus of small connected graphs for relationship checks.

Everything is generated from fixed seeds, so the corpus (and any report
computed over it) is identical from run to run.
"""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from . import gadgets
from .graph import WeightedGraph, build_graph
from .io import write_graph


def path_graph(n: int, w=1) -> WeightedGraph:
    return build_graph([(i, i + 1, w) for i in range(n - 1)], n=n)


def cycle_graph(n: int, w=1) -> WeightedGraph:
    return build_graph([(i, i + 1, w) for i in range(n - 1)] + [(0, n - 1, w)], n=n)


def complete_graph(n: int, w=1) -> WeightedGraph:
    return build_graph([(i, j, w) for i in range(n) for j in range(i + 1, n)], n=n)


def grid_graph(rows: int, cols: int, w=1) -> WeightedGraph:
    edges = []
    for i in range(rows):
        for j in range(cols):
            u = i * cols + j
            if j + 1 < cols:
                edges.append((u, u + 1, w))
            if i + 1 < rows:
                edges.append((u, u + cols, w))
    return build_graph(edges, n=rows * cols)


def petersen_graph() -> WeightedGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph([(min(u, v), max(u, v), 1) for u, v in outer + spokes + inner], n=10)


def hypercube(d: int) -> WeightedGraph:
    n = 1 << d
    return build_graph([(u, u ^ (1 << b), 1) for u in range(n) for b in range(d) if u < u ^ (1 << b)], n=n)


def complete_bipartite(a: int, b: int) -> WeightedGraph:
    return build_graph([(i, a + j, 1) for i in range(a) for j in range(b)], n=a + b)


def wheel(spokes: int) -> WeightedGraph:
    rim = [(i, i % spokes + 1) for i in range(1, spokes + 1)]
    rim = [(min(u, v), max(u, v), 1) for u, v in rim]
    return build_graph(rim + [(0, i, 1) for i in range(1, spokes + 1)], n=spokes + 1)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.3,
                           weights: str = "rational") -> WeightedGraph:
    """Random spanning tree plus extra edges with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = set()
    for i in range(1, n):
        a, b = order[i], order[rng.randrange(i)]
        pairs.add((min(a, b), max(a, b)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                pairs.add((u, v))
    edges = []
    for u, v in sorted(pairs):
        if weights == "unit":
            w = Fraction(1)
        elif weights == "small":
            w = Fraction(rng.randint(1, 3))
        else:
            w = Fraction(rng.randint(1, 40), rng.randint(1, 4))
        edges.append((u, v, w))
    return build_graph(edges, n=n)


def random_max_degree_graph(rng: random.Random, n: int, max_deg: int = 3) -> WeightedGraph:
    """Random unit-weight graph with maximum degree ``max_deg`` (not necessarily connected)."""
    deg = [0] * n
    pairs = []
    cand = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(cand)
    for u, v in cand:
        if deg[u] < max_deg and deg[v] < max_deg and rng.random() < 0.5:
            pairs.append((u, v))
            deg[u] += 1
            deg[v] += 1
    if not pairs:
        pairs.append((0, 1))
    return build_graph([(u, v, 1) for u, v in sorted(pairs)], n=n)


def standard_corpus(seed: int = 20240601, random_graphs: int = 24) -> list[tuple[str, WeightedGraph]]:
    """Named classic graphs, small gadgets and seeded random graphs, all connected."""
    out: list[tuple[str, WeightedGraph]] = []
    for n in (3, 4, 5, 6):
        out.append((f"K{n}", complete_graph(n)))
    out += [
        ("P2", path_graph(2)),
        ("P5", path_graph(5)),
        ("C5", cycle_graph(5)),
        ("C6", cycle_graph(6)),
        ("grid3x3", grid_graph(3, 3)),
        ("grid2x4", grid_graph(2, 4)),
        ("petersen", petersen_graph()),
        ("Q3", hypercube(3)),
        ("K3_3", complete_bipartite(3, 3)),
        ("W6", wheel(6)),
    ]
    for n in (5, 6):
        out.append((f"star{n}", gadgets.star(n)[0]))
    for l in (3, 4):
        out.append((f"subdivided_star{l}", gadgets.subdivided_star(l)[0]))
    for n in (4, 5):
        out.append((f"kexp{n}", gadgets.complete_graph_exp_weights(n)[0]))
    for variant in gadgets.CATERPILLAR_VARIANTS:
        out.append((f"caterpillar3-{variant}", gadgets.caterpillar(3, variant)[0]))
    out.append(("bintree1", gadgets.binary_tree_geometric(1)[0]))
    rng = random.Random(seed)
    for i in range(random_graphs):
        n = 5 + i % 8
        kind = ("rational", "small", "unit")[i % 3]
        out.append((f"random{i:02d}-{kind}", random_connected_graph(rng, n, 0.35, kind)))
    for i in range(4):
        base = random_connected_graph(rng, 6 + i, 0.3, "unit")
        out.append((f"tight{i}", gadgets.spanning_tree_tight_weights(base, metric=True)[0]))
    return out


def write_corpus(directory: str | Path, corpus: list[tuple[str, WeightedGraph]] | None = None) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, g in corpus if corpus is not None else standard_corpus():
        p = directory / f"{name}.txt"
        write_graph(g, p, comment=name)
        paths.append(p)
    return paths
