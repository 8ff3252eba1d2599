"""Exact hd1, hd2 and hd3 on small graphs.

For a fixed anchor ``u`` each shortest path enters the family to be hit on a
union of half-open radius intervals ``[a, b)``:

* hd1: ``[maxdist(u, path) / 4, |path|)``
* hd2: ``[max(|path| / 2, mindist(u, path) / 2), |path|)``
* hd3: one interval ``[mindist(u, ext) / 2, |ext|)`` per r-witness ``ext``

so the family is piecewise constant in ``r`` and finitely many radii cover
every distinct instance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import WeightedGraph, all_trees
from .hitting import (
    CapExceeded,
    _bits,
    disjoint_lower_bound,
    greedy_hitting_set,
    min_hitting_set_masks,
    reduce_family,
    to_mask,
)

TAGS = ("hd1", "hd2", "hd3")
DEFAULT_CAPS = {"hd1": 24, "hd2": 24, "hd3": 16, "catalog": 40}


@dataclass(frozen=True)
class PathRecord:
    vertices: tuple[int, ...]
    length: Fraction

    @property
    def mask(self) -> int:
        return to_mask(self.vertices)


@dataclass
class ShortestPathCatalog:
    """All canonical shortest paths of a graph, with all-pairs distances.

    ``paths`` lists every unordered connected pair ``a < b`` followed by the
    single-vertex paths.  ``parent[s][v]`` is the tree parent of ``v`` in the
    canonical tree of ``s``.
    """

    g: WeightedGraph
    dist: list[list[Fraction | None]]
    parent: list[list[int | None]]
    paths: list[PathRecord]
    index: dict[tuple[int, int], int]
    had_ties: bool
    _witnesses: dict[int, list[PathRecord]] = field(default_factory=dict, repr=False)

    def path(self, a: int, b: int) -> PathRecord:
        if a <= b:
            return self.paths[self.index[(a, b)]]
        rec = self.paths[self.index[(b, a)]]
        return PathRecord(rec.vertices[::-1], rec.length)

    def is_canonical(self, seq: tuple[int, ...]) -> bool:
        """Whether ``seq`` is exactly the canonical path between its ends."""
        a, b = seq[0], seq[-1]
        if a == b:
            return len(seq) == 1
        if (min(a, b), max(a, b)) not in self.index:
            return False
        return self.path(a, b).vertices == seq

    def mindist(self, u: int, vertices: Iterable[int]) -> Fraction:
        return min(self.dist[u][w] for w in vertices if self.dist[u][w] is not None)

    def maxdist(self, u: int, vertices: Iterable[int]) -> Fraction | None:
        ds = [self.dist[u][w] for w in vertices]
        return None if any(d is None for d in ds) else max(ds)

    def extensions(self, pid: int) -> list[PathRecord]:
        """Every shortest path obtained by adding at most one vertex per end."""
        if pid in self._witnesses:
            return self._witnesses[pid]
        rec = self.paths[pid]
        seq = rec.vertices
        a, b = seq[0], seq[-1]
        g = self.g
        inside = set(seq)
        out = [rec] if len(seq) > 1 else []
        fronts = [(v0, w) for v0, w in _nbrs(g, a) if v0 not in inside]
        backs = [(v1, w) for v1, w in _nbrs(g, b) if v1 not in inside]
        if len(seq) == 1:
            # a single vertex: one neighbor makes an edge, two make a 2-path
            for v0, w in fronts:
                if self.is_canonical((v0, a)):
                    out.append(PathRecord((v0, a), w))
            for (v0, w0) in fronts:
                for (v1, w1) in fronts:
                    if v0 < v1 and self.is_canonical((v0, a, v1)):
                        out.append(PathRecord((v0, a, v1), w0 + w1))
        else:
            head_ok = [(v0, w) for v0, w in fronts if self.parent[b][v0] == a]
            tail_ok = [(v1, w) for v1, w in backs if self.parent[a][v1] == b]
            for v0, w in head_ok:
                out.append(PathRecord((v0,) + seq, rec.length + w))
            for v1, w in tail_ok:
                out.append(PathRecord(seq + (v1,), rec.length + w))
            for v0, w0 in head_ok:
                for v1, w1 in tail_ok:
                    if v0 != v1 and self.parent[v0][v1] == b:
                        out.append(PathRecord((v0,) + seq + (v1,), rec.length + w0 + w1))
        self._witnesses[pid] = out
        return out


def _nbrs(g: WeightedGraph, u: int):
    return [(x, g.edges[e][2]) for x, e in g.adj[u]]


def enumerate_shortest_paths(g: WeightedGraph, cap: int | None = DEFAULT_CAPS["catalog"]) -> ShortestPathCatalog:
    if cap is not None and g.n > cap:
        raise CapExceeded(f"path catalog capped at n={cap}, graph has {g.n}")
    trees = all_trees(g)
    dist = [list(t.dist) for t in trees]
    parent = [[p[0] if p is not None else None for p in t.parent] for t in trees]
    paths: list[PathRecord] = []
    index: dict[tuple[int, int], int] = {}
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if dist[a][b] is None:
                continue
            index[(a, b)] = len(paths)
            paths.append(PathRecord(tuple(trees[a].path_to(b)), dist[a][b]))
    for v in range(g.n):
        index[(v, v)] = len(paths)
        paths.append(PathRecord((v,), Fraction(0)))
    return ShortestPathCatalog(g, dist, parent, paths, index, any(t.had_ties for t in trees))


def r_significant(catalog: ShortestPathCatalog, path: PathRecord | tuple[int, ...], r) -> PathRecord | None:
    """An r-witness of ``path`` (the shortest qualifying one), or ``None``."""
    seq = path.vertices if isinstance(path, PathRecord) else tuple(path)
    pid = catalog.index[(min(seq[0], seq[-1]), max(seq[0], seq[-1]))]
    r = Fraction(r)
    found = [w for w in catalog.extensions(pid) if w.length > r]
    if not found:
        return None
    return min(found, key=lambda w: (w.length, w.vertices))


def inclusion_intervals(catalog: ShortestPathCatalog, u: int, tag: str) -> list[tuple[int, list[tuple[Fraction, Fraction]]]]:
    """Per path id, the radius intervals ``[a, b)`` on which it must be hit."""
    out = []
    for pid, rec in enumerate(catalog.paths):
        ivs = []
        if tag == "hd3":
            for ext in catalog.extensions(pid):
                if catalog.dist[u][ext.vertices[0]] is None:
                    continue
                a = catalog.mindist(u, ext.vertices) / 2
                if a < ext.length:
                    ivs.append((a, ext.length))
        elif len(rec.vertices) > 1:
            if tag == "hd1":
                mx = catalog.maxdist(u, rec.vertices)
                if mx is not None and mx / 4 < rec.length:
                    ivs.append((mx / 4, rec.length))
            elif tag == "hd2":
                if catalog.dist[u][rec.vertices[0]] is not None:
                    a = max(rec.length / 2, catalog.mindist(u, rec.vertices) / 2)
                    if a < rec.length:
                        ivs.append((a, rec.length))
            else:
                raise ValueError(f"unknown highway tag {tag!r}")
        if ivs:
            out.append((pid, ivs))
    return out


def critical_radii(catalog: ShortestPathCatalog, u: int, tag: str) -> list[Fraction]:
    pts = {x for _, ivs in inclusion_intervals(catalog, u, tag) for iv in ivs for x in iv}
    if tag == "hd1":
        pts |= {d / 4 for d in catalog.dist[u] if d is not None}
    return sorted(p for p in pts if p > 0)


def evaluation_radii(critical: list[Fraction]) -> list[Fraction]:
    if not critical:
        return []
    radii = [critical[0] / 2]
    for a, b in zip(critical, critical[1:]):
        radii.append(a)
        radii.append((a + b) / 2)
    radii.append(critical[-1])
    return radii


def _family_at(intervals, r: Fraction) -> list[int]:
    return [pid for pid, ivs in intervals if any(a <= r < b for a, b in ivs)]


def _candidates(catalog: ShortestPathCatalog, u: int, r: Fraction, tag: str) -> int | None:
    if tag != "hd1":
        return None
    return to_mask(v for v, d in enumerate(catalog.dist[u]) if d is not None and d <= 4 * r)


def paths_to_hit(catalog: ShortestPathCatalog, u: int, r, tag: str) -> list[frozenset[int]]:
    r = Fraction(r)
    fam = _family_at(inclusion_intervals(catalog, u, tag), r)
    return [frozenset(catalog.paths[pid].vertices) for pid in fam]


@dataclass(frozen=True)
class HighwayWitness:
    tag: str
    value: int
    anchor: int | None
    radius: Fraction | None
    hitting_set: frozenset[int]
    had_ties: bool = False


def anchored_hitting_set(catalog: ShortestPathCatalog, u: int, r, tag: str) -> HighwayWitness:
    """Minimum hitting set for one ``(anchor, radius)`` instance."""
    r = Fraction(r)
    fam = [catalog.paths[pid].mask for pid in _family_at(inclusion_intervals(catalog, u, tag), r)]
    hs = min_hitting_set_masks(fam, _candidates(catalog, u, r, tag)) if fam else 0
    return HighwayWitness(tag, hs.bit_count(), u, r, frozenset(_bits(hs)), catalog.had_ties)


def highway_dimension(
    g: WeightedGraph,
    tag: str,
    cap: int | None = None,
    catalog: ShortestPathCatalog | None = None,
    anchors: Iterable[int] | None = None,
) -> HighwayWitness:
    """Max over anchors and evaluation radii of the minimum hitting set size.

    Instances whose greedy upper bound cannot beat the running maximum are
    skipped without an exact solve.  ``anchors`` restricts the maximum to a
    subset of anchors, giving a lower bound.
    """
    if tag not in TAGS:
        raise ValueError(f"unknown highway tag {tag!r}")
    cap = DEFAULT_CAPS[tag] if cap is None else cap
    if cap is not None and g.n > cap:
        raise CapExceeded(f"{tag} capped at n={cap}, graph has {g.n}")
    if catalog is None:
        catalog = enumerate_shortest_paths(g, cap=None)
    best = HighwayWitness(tag, 0, None, None, frozenset(), catalog.had_ties)
    seen: set[tuple] = set()
    masks = [p.mask for p in catalog.paths]
    for u in (range(g.n) if anchors is None else anchors):
        intervals = inclusion_intervals(catalog, u, tag)
        pts = {x for _, ivs in intervals for iv in ivs for x in iv}
        radii = evaluation_radii(sorted(p for p in pts if p > 0))
        for r in radii:
            fam = reduce_family(masks[pid] for pid in _family_at(intervals, r))
            if not fam:
                continue
            cand = _candidates(catalog, u, r, tag)
            key = (tuple(fam), cand)
            if key in seen:
                continue
            seen.add(key)
            restricted = fam if cand is None else reduce_family(m & cand for m in fam)
            ub = greedy_hitting_set(restricted).bit_count()
            if ub <= best.value:
                continue
            if disjoint_lower_bound(restricted) >= ub:
                hs = greedy_hitting_set(restricted)
            else:
                hs = min_hitting_set_masks(restricted)
            if hs.bit_count() > best.value:
                best = HighwayWitness(tag, hs.bit_count(), u, r, frozenset(_bits(hs)), catalog.had_ties)
    return best


def min_vertex_cover(g: WeightedGraph, cap: int = 24) -> frozenset[int]:
    """Exact minimum vertex cover, branching on a maximum-degree vertex."""
    if g.n > cap:
        raise CapExceeded(f"vertex cover capped at n={cap}, graph has {g.n}")
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    best = [frozenset(range(g.n))]

    def solve(adj: dict[int, set[int]], chosen: frozenset[int]) -> None:
        if len(chosen) >= len(best[0]):
            return
        live = {v: s for v, s in adj.items() if s}
        if not live:
            best[0] = chosen
            return
        # every uncovered edge needs one more vertex: matching lower bound
        matched: set[int] = set()
        for v in sorted(live):
            if v in matched:
                continue
            for w in sorted(live[v]):
                if w not in matched:
                    matched |= {v, w}
                    break
        if len(chosen) + len(matched) // 2 >= len(best[0]):
            return
        v = max(sorted(live), key=lambda x: len(live[x]))
        solve(_drop(live, {v}), chosen | {v})
        if len(live[v]) > 0:
            solve(_drop(live, live[v] | set()), chosen | live[v])

    solve({v: set(s) for v, s in enumerate(nbrs)}, frozenset())
    return best[0]


def _drop(adj: dict[int, set[int]], gone: set[int]) -> dict[int, set[int]]:
    return {v: s - gone for v, s in adj.items() if v not in gone}
