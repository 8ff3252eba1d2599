"""Skeleton dimension by an exact sweep over shortest-path-tree edges.

A point ``p`` at source distance ``r`` on tree edge ``(u, v)`` has its farthest
descendant at distance ``F(v) - r`` where ``F(v) = dist(v) + reach(v)``, so it
lies in the skeleton iff ``r <= 2/3 * F(v)``.  Each tree edge therefore
contributes one closed interval of radii.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import GraphError, ShortestPathTree, WeightedGraph, shortest_path_tree

TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class SkeletonInterval:
    edge_id: int
    parent: int
    child: int
    lo: Fraction
    hi: Fraction
    child_dist: Fraction


@dataclass(frozen=True)
class CutProfile:
    source: int
    breakpoints: tuple[Fraction, ...]
    max_cut: int
    argmax_radius: Fraction | None


def skeleton_intervals(spt: ShortestPathTree) -> list[SkeletonInterval]:
    out = []
    for v in spt.order:
        if spt.parent[v] is None:
            continue
        u, e = spt.parent[v]
        lo = spt.dist[u]
        hi = min(spt.dist[v], TWO_THIRDS * (spt.dist[v] + spt.reach[v]))
        if lo <= hi:
            out.append(SkeletonInterval(e, u, v, lo, hi, spt.dist[v]))
    out.sort(key=lambda iv: iv.edge_id)
    return out


def _point_key(iv: SkeletonInterval, r: Fraction):
    if r == iv.lo:
        return ("v", iv.parent)
    if r == iv.child_dist:
        return ("v", iv.child)
    return ("e", iv.edge_id)


def cut_size(intervals: list[SkeletonInterval], r: Fraction) -> int:
    """Number of distinct skeleton points at source distance ``r``."""
    return len({_point_key(iv, r) for iv in intervals if iv.lo <= r <= iv.hi})


def max_cut(intervals: list[SkeletonInterval], source: int = -1) -> CutProfile:
    if not intervals:
        return CutProfile(source, (), 0, None)
    points = sorted({x for iv in intervals for x in (iv.lo, iv.hi)})
    radii = []
    for a, b in zip(points, points[1:]):
        radii.append(a)
        radii.append((a + b) / 2)
    radii.append(points[-1])
    best, arg = 0, None
    for r in radii:
        c = cut_size(intervals, r)
        if c > best:
            best, arg = c, r
    return CutProfile(source, tuple(points), best, arg)


@dataclass(frozen=True)
class SkeletonResult:
    kappa: int
    witness_source: int | None
    witness_radius: Fraction | None
    had_ties: bool


def skeleton_dimension(g: WeightedGraph) -> SkeletonResult:
    best = SkeletonResult(0, None, None, False)
    ties = False
    for s in range(g.n):
        spt = shortest_path_tree(g, s)
        ties = ties or spt.had_ties
        prof = max_cut(skeleton_intervals(spt), s)
        if prof.max_cut > best.kappa:
            best = SkeletonResult(prof.max_cut, s, prof.argmax_radius, False)
    return SkeletonResult(best.kappa, best.witness_source, best.witness_radius, ties)


def skeleton_leaves(spt: ShortestPathTree) -> int:
    """Degree-one points of the skeleton, viewed as a geometric tree."""
    degree: dict[tuple, int] = {}
    for iv in skeleton_intervals(spt):
        if iv.lo == iv.hi:
            continue
        tip = ("v", iv.child) if iv.hi == iv.child_dist else ("tip", iv.edge_id)
        for node in (("v", iv.parent), tip):
            degree[node] = degree.get(node, 0) + 1
    return sum(1 for d in degree.values() if d == 1)


def tree_leaves(spt: ShortestPathTree) -> int:
    degree: dict[int, int] = {}
    for v in spt.order:
        if spt.parent[v] is not None:
            u = spt.parent[v][0]
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
    return sum(1 for d in degree.values() if d == 1)


def brute_force_skeleton_dimension(g: WeightedGraph, cap: int = 64) -> int:
    """kappa straight from the definition, point by point.

    Candidate radii are every vertex distance and two thirds of it, plus the
    midpoints between consecutive candidates.  At each radius every tree edge
    is probed for a point at that distance, and the point's farthest
    descendant is found by walking the subtree below it.
    """
    if g.n > cap:
        raise GraphError(f"brute-force skeleton oracle capped at n={cap}")
    best = 0
    for s in range(g.n):
        spt = shortest_path_tree(g, s)
        reachable = [v for v in range(g.n) if spt.dist[v] is not None]
        base = sorted({x for v in reachable for x in (spt.dist[v], TWO_THIRDS * spt.dist[v])})
        radii = list(base) + [(a + b) / 2 for a, b in zip(base, base[1:])]
        deepest = {v: _deepest_below(spt, v) for v in reachable}
        for r in radii:
            pts = set()
            for v in reachable:
                if spt.parent[v] is None:
                    continue
                u, e = spt.parent[v]
                if not spt.dist[u] <= r <= spt.dist[v]:
                    continue
                far = deepest[v] - r
                if far >= r / 2:
                    if r == spt.dist[u]:
                        pts.add(("v", u))
                    elif r == spt.dist[v]:
                        pts.add(("v", v))
                    else:
                        pts.add(("e", e))
            best = max(best, len(pts))
    return best


def _deepest_below(spt: ShortestPathTree, v: int) -> Fraction:
    stack, deepest = [v], spt.dist[v]
    while stack:
        x = stack.pop()
        deepest = max(deepest, spt.dist[x])
        stack.extend(spt.children[x])
    return deepest
