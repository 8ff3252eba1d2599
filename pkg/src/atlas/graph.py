"""Exact weighted graphs, canonical shortest-path trees and balls.

All weights and distances are :class:`fractions.Fraction`.  Shortest paths are
made unique by a symbolic perturbation: edge ``e`` carries an extra
infinitesimal weight ``delta * 2**e``.  A path's perturbation is then the
bitmask of its edge ids, so two distinct paths with equal rational length are
ordered by comparing their edge-id bitmasks as integers.  Because the
perturbation is additive, canonical paths are symmetric and closed under
taking subpaths.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

INF = None  # distance marker for unreachable pairs


class GraphError(ValueError):
    """Raised for malformed graph input."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # floats are accepted only when they are exactly representable decimals
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable undirected simple graph with positive rational weights.

    ``edges[i] == (u, v, w)`` with ``u < v``; ``adj[u]`` lists
    ``(neighbor, edge_id)`` pairs sorted by neighbor.
    """

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]
    adj: tuple[tuple[tuple[int, int], ...], ...]
    labels: tuple[Hashable, ...] = field(default=())

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> Fraction | None:
        for x, e in self.adj[u]:
            if x == v:
                return self.edges[e][2]
        return None

    def edge_id(self, u: int, v: int) -> int | None:
        for x, e in self.adj[u]:
            if x == v:
                return e
        return None

    def neighbors(self, u: int) -> list[int]:
        return [x for x, _ in self.adj[u]]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def label(self, u: int) -> Hashable:
        return self.labels[u] if self.labels else u

    def edge_list(self) -> list[tuple[int, int, Fraction]]:
        return list(self.edges)

    def neighbor_masks(self) -> list[int]:
        masks = []
        for u in range(self.n):
            mask = 0
            for x, _ in self.adj[u]:
                mask |= 1 << x
            masks.append(mask)
        return masks


def build_graph(
    edge_list: Iterable[Sequence],
    n: int | None = None,
) -> WeightedGraph:
    """Build a graph from ``(u, v, weight)`` triples.

    With ``n`` given, endpoints must be integers in ``range(n)`` and are used
    as-is (isolated vertices allowed).  Without it, vertex ids are the union of
    the endpoints, densely re-indexed in sorted order; the original ids are kept
    in ``labels``.
    """
    triples = [(u, v, as_fraction(w)) for u, v, w in edge_list]
    if n is None:
        names = sorted({x for u, v, _ in triples for x in (u, v)}, key=_sort_key)
        index = {name: i for i, name in enumerate(names)}
        labels: tuple = tuple(names)
        n = len(names)
    else:
        index = None
        labels = ()
    seen: dict[tuple[int, int], Fraction] = {}
    norm = []
    for u, v, w in triples:
        if index is not None:
            u, v = index[u], index[v]
        elif not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in edge ({u}, {v})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if w <= 0:
            raise GraphError(f"non-positive weight {w} on edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"duplicate edge {key}")
        seen[key] = w
        norm.append((key[0], key[1], w))
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for eid, (u, v, _) in enumerate(norm):
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    return WeightedGraph(
        n=n,
        edges=tuple(norm),
        adj=tuple(tuple(sorted(a)) for a in adj),
        labels=labels,
    )


def _sort_key(x):
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


@dataclass(frozen=True)
class ShortestPathTree:
    source: int
    parent: tuple[tuple[int, int] | None, ...]  # (parent vertex, edge id)
    dist: tuple[Fraction | None, ...]
    reach: tuple[Fraction | None, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]  # settle order, parents before children
    had_ties: bool

    def path_to(self, v: int) -> list[int]:
        """Vertex sequence of the canonical path from the source to ``v``."""
        if self.dist[v] is None:
            raise GraphError(f"vertex {v} unreachable from {self.source}")
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]][0])
        path.reverse()
        return path

    def is_leaf(self, v: int) -> bool:
        return self.dist[v] is not None and not self.children[v]


def shortest_path_tree(g: WeightedGraph, s: int) -> ShortestPathTree:
    """Dijkstra over (distance, edge bitmask) keys from source ``s``."""
    if not 0 <= s < g.n:
        raise GraphError(f"source {s} is not a vertex")
    best: list[tuple[Fraction, int] | None] = [None] * g.n
    parent: list[tuple[int, int] | None] = [None] * g.n
    done = [False] * g.n
    best[s] = (Fraction(0), 0)
    heap = [(Fraction(0), 0, s)]
    order = []
    ties = False
    while heap:
        d, mask, u = heapq.heappop(heap)
        if done[u] or best[u] != (d, mask):
            continue
        done[u] = True
        order.append(u)
        for v, e in g.adj[u]:
            if done[v]:
                continue
            cand = (d + g.edges[e][2], mask | (1 << e))
            cur = best[v]
            if cur is not None and cur[0] == cand[0]:
                ties = True
            if cur is None or cand < cur:
                best[v] = cand
                parent[v] = (u, e)
                heapq.heappush(heap, (cand[0], cand[1], v))
    dist = [b[0] if b is not None else None for b in best]
    children: list[list[int]] = [[] for _ in range(g.n)]
    for v in order:
        if parent[v] is not None:
            children[parent[v][0]].append(v)
    reach: list[Fraction | None] = [None] * g.n
    for v in reversed(order):
        r = Fraction(0)
        for c in children[v]:
            r = max(r, g.edges[parent[c][1]][2] + reach[c])
        reach[v] = r
    return ShortestPathTree(
        source=s,
        parent=tuple(parent),
        dist=tuple(dist),
        reach=tuple(reach),
        children=tuple(tuple(sorted(c)) for c in children),
        order=tuple(order),
        had_ties=ties,
    )


def all_trees(g: WeightedGraph) -> list[ShortestPathTree]:
    return [shortest_path_tree(g, s) for s in range(g.n)]


def distance(g: WeightedGraph, u: int, v: int) -> Fraction | None:
    """Exact distance, or ``None`` when ``v`` is unreachable from ``u``."""
    return shortest_path_tree(g, u).dist[v]


def distance_matrix(g: WeightedGraph) -> list[list[Fraction | None]]:
    return [list(t.dist) for t in all_trees(g)]


def ball(g: WeightedGraph, u: int, r) -> set[int]:
    """Closed ball ``{v : dist(u, v) <= r}``."""
    r = as_fraction(r)
    dist = shortest_path_tree(g, u).dist
    return {v for v, d in enumerate(dist) if d is not None and d <= r}


def components(g: WeightedGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v, _ in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def induced_subgraph(g: WeightedGraph, vertices: Sequence[int]) -> WeightedGraph:
    """Subgraph on ``vertices`` re-indexed 0..k-1 in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    edges = [
        (index[u], index[v], w)
        for u, v, w in g.edges
        if u in index and v in index
    ]
    return build_graph(edges, n=len(vertices))


def has_ties(g: WeightedGraph) -> bool:
    return any(t.had_ties for t in all_trees(g))


def is_metric(g: WeightedGraph) -> tuple[bool, tuple[int, int] | None]:
    """Check that every edge is a shortest path between its endpoints.

    Returns ``(True, None)`` or ``(False, (u, v))`` for the first violating
    edge by id.
    """
    if not is_connected(g):
        raise GraphError("is_metric requires a connected graph")
    dist = distance_matrix(g)
    for u, v, w in g.edges:
        if dist[u][v] != w:
            return False, (u, v)
    return True, None


def unweighted(g: WeightedGraph) -> WeightedGraph:
    return build_graph([(u, v, 1) for u, v, _ in g.edges], n=g.n)
