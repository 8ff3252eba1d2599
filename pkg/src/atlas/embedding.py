"""Embedding a doubling metric into a graph of small skeleton dimension.

Points are organised in greedy nets ``Y_0 ⊇ Y_1 ⊇ ... ⊇ Y_L``; the pair
``{u, v}`` becomes an edge weighted by ``(1 + eps(1 - i/L)) d(u, v)`` where
``i`` is the highest level holding both points, and edges with
``d(u, v) > 2^(i+1)`` are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import GraphError, WeightedGraph, build_graph, distance_matrix

Matrix = Sequence[Sequence[Fraction]]


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMetric:
    dist: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.dist)

    @classmethod
    def from_matrix(cls, rows: Matrix) -> "FiniteMetric":
        dist = tuple(tuple(Fraction(x) for x in row) for row in rows)
        validate_metric(dist)
        return cls(dist)

    def min_distance(self) -> Fraction:
        return min(self.dist[u][v] for u in range(self.n) for v in range(u + 1, self.n))

    def max_distance(self) -> Fraction:
        return max(self.dist[u][v] for u in range(self.n) for v in range(u + 1, self.n))

    def scaled(self, factor: Fraction) -> "FiniteMetric":
        return FiniteMetric(tuple(tuple(x * factor for x in row) for row in self.dist))


def validate_metric(dist: Matrix) -> None:
    n = len(dist)
    if n < 2:
        raise MetricError("a metric needs at least 2 points")
    for u in range(n):
        if len(dist[u]) != n:
            raise MetricError(f"row {u} has {len(dist[u])} entries, expected {n}")
        if dist[u][u] != 0:
            raise MetricError(f"non-zero diagonal at {u}")
        for v in range(n):
            if u != v and dist[u][v] <= 0:
                raise MetricError(f"non-positive distance between {u} and {v}")
            if dist[u][v] != dist[v][u]:
                raise MetricError(f"asymmetric distance between {u} and {v}")
    for k in range(n):
        for u in range(n):
            for v in range(n):
                if dist[u][v] > dist[u][k] + dist[k][v]:
                    raise MetricError(f"triangle inequality fails for ({u}, {k}, {v})")


def aspect_ratio(x: FiniteMetric) -> Fraction:
    return x.max_distance() / x.min_distance()


def log2_ceil(q: Fraction) -> int:
    """Smallest ``L >= 0`` with ``2**L >= q``."""
    level = 0
    while Fraction(2) ** level < q:
        level += 1
    return level


def _check_eps(eps: Fraction) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise MetricError(f"epsilon must lie strictly between 0 and 1, got {eps}")
    return eps


@dataclass(frozen=True)
class HubHierarchy:
    levels: tuple[frozenset[int], ...]
    L: int
    eps: Fraction

    def covering_radius(self, i: int) -> Fraction:
        return self.eps * Fraction(2) ** (i - 2) / ((1 + self.eps) ** 2 * self.L)

    def top_level(self, u: int, v: int) -> int:
        return max(i for i, y in enumerate(self.levels) if u in y and v in y)


def build_hub_hierarchy(x: FiniteMetric, eps) -> HubHierarchy:
    """Greedy nets built from level ``L`` down, scanning points in id order."""
    eps = _check_eps(eps)
    L = log2_ceil(aspect_ratio(x))
    if L == 0:
        # a single scale: every pair already sits at the top level
        return HubHierarchy((frozenset(range(x.n)),), 0, eps)
    h = HubHierarchy((), L, eps)
    levels: list[frozenset[int]] = []
    chosen: list[int] = []
    for i in range(L, -1, -1):
        c = h.covering_radius(i)
        for p in range(x.n):
            if p not in chosen and all(x.dist[p][q] > c for q in chosen):
                chosen.append(p)
        levels.append(frozenset(chosen))
    return HubHierarchy(tuple(reversed(levels)), L, eps)


def verify_hierarchy(x: FiniteMetric, h: HubHierarchy) -> list[str]:
    """Nesting, ``Y_0 = X``, covering and separation; empty list means all hold."""
    bad = []
    if h.levels[0] != frozenset(range(x.n)):
        bad.append("Y_0 != X")
    for i in range(1, len(h.levels)):
        if not h.levels[i] <= h.levels[i - 1]:
            bad.append(f"Y_{i} not inside Y_{i - 1}")
    if h.L == 0:
        return bad
    for i, y in enumerate(h.levels):
        c = h.covering_radius(i)
        for p in range(x.n):
            if not any(x.dist[p][q] <= c for q in y):
                bad.append(f"point {p} uncovered at level {i}")
        for a in y:
            for b in y:
                if a < b and not x.dist[a][b] > c / 2:
                    bad.append(f"hubs {a}, {b} too close at level {i}")
    return bad


@dataclass(frozen=True)
class Embedding:
    metric: FiniteMetric  # rescaled so the minimum distance is 1
    scale: Fraction
    hierarchy: HubHierarchy
    graph: WeightedGraph
    unpruned: WeightedGraph
    edge_levels: dict[tuple[int, int], int]


def _level_factor(h: HubHierarchy, i: int) -> Fraction:
    if h.L == 0:
        return Fraction(1)
    return 1 + h.eps * (1 - Fraction(i, h.L))


def build_embedded_graph(x: FiniteMetric, eps) -> Embedding:
    eps = _check_eps(eps)
    scale = 1 / x.min_distance()
    xs = x.scaled(scale)
    h = build_hub_hierarchy(xs, eps)
    kept, full, levels = [], [], {}
    for u in range(xs.n):
        for v in range(u + 1, xs.n):
            i = h.top_level(u, v)
            w = _level_factor(h, i) * xs.dist[u][v]
            full.append((u, v, w))
            if xs.dist[u][v] <= Fraction(2) ** (i + 1):
                kept.append((u, v, w))
                levels[(u, v)] = i
    return Embedding(xs, scale, h, build_graph(kept, n=xs.n), build_graph(full, n=xs.n), levels)


@dataclass(frozen=True)
class DistortionReport:
    ok: bool
    min_stretch: Fraction
    max_stretch: Fraction
    violations: tuple[tuple[int, int], ...]


def verify_distortion(x: FiniteMetric, g: WeightedGraph, eps) -> DistortionReport:
    """Check ``d_X <= d_G <= (1 + eps) d_X`` on every pair, exactly."""
    eps = Fraction(eps)
    if g.n != x.n:
        raise GraphError("graph and metric differ in size")
    dg = distance_matrix(g)
    lo = hi = None
    bad = []
    for u in range(x.n):
        for v in range(u + 1, x.n):
            if dg[u][v] is None:
                bad.append((u, v))
                continue
            s = dg[u][v] / x.dist[u][v]
            lo = s if lo is None else min(lo, s)
            hi = s if hi is None else max(hi, s)
            if not 1 <= s <= 1 + eps:
                bad.append((u, v))
    return DistortionReport(not bad, lo or Fraction(0), hi or Fraction(0), tuple(bad))


def pruning_violations(emb: Embedding) -> list[tuple[int, int]]:
    """Pairs whose distance changes when long edges are pruned."""
    a, b = distance_matrix(emb.graph), distance_matrix(emb.unpruned)
    n = emb.graph.n
    return [(u, v) for u in range(n) for v in range(u + 1, n) if a[u][v] != b[u][v]]


def long_edge_violations(emb: Embedding) -> list[tuple[int, int, int]]:
    """``(u, v, i)`` for surviving edges heavier than ``2^i`` outside ``Y_{i-1}``."""
    h = emb.hierarchy
    bad = []
    for u, v, w in emb.graph.edges:
        for i in range(1, h.L + 2):
            if w > Fraction(2) ** i and not (u in h.levels[i - 1] and v in h.levels[i - 1]):
                bad.append((u, v, i))
    return bad


def kappa_bound(L: int, eps, ddim_ceil: int) -> Fraction | None:
    """``(2^12 L / eps)^ceil(ddim)``; ``None`` when ``L = 0`` makes it vacuous."""
    if L == 0:
        return None
    return (Fraction(2 ** 12 * L) / Fraction(eps)) ** ddim_ceil


def ceil_log2(d: int) -> int:
    return (d - 1).bit_length()


def metric_from_graph(g: WeightedGraph) -> FiniteMetric:
    return FiniteMetric.from_matrix(distance_matrix(g))
