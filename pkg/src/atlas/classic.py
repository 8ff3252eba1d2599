"""Exact classic graph parameters by exponential search.

Everything here ignores edge weights except :func:`doubling_dimension`.
Disconnected graphs are split into components; the combination rule is max,
except distance to linear forest which sums.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import WeightedGraph, components, distance_matrix
from .hitting import CapExceeded, _bits, greedy_hitting_set, min_hitting_set_masks, reduce_family

CAPS = {"ml": 20, "bw": 14, "pw": 18, "tw": 18, "dl": 20, "ddim": 16, "forest": 128}


@dataclass(frozen=True)
class Decomposition:
    kind: str  # "tree" or "path"
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class ParamResult:
    value: int
    witness: object


def _check_cap(g: WeightedGraph, key: str, cap: int | None) -> None:
    cap = CAPS[key] if cap is None else cap
    if g.n > cap:
        raise CapExceeded(f"{key} capped at n={cap}, graph has {g.n}")


def _is_forest(g: WeightedGraph) -> bool:
    return g.m == g.n - len(components(g))


def degree_stats(g: WeightedGraph) -> tuple[int, int]:
    if g.n == 0:
        return 0, 0
    degs = [g.degree(v) for v in range(g.n)]
    return min(degs), max(degs)


def h_index(g: WeightedGraph) -> int:
    degs = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    h = 0
    for i, d in enumerate(degs, 1):
        if d >= i:
            h = i
    return h


# -- max leaf number ---------------------------------------------------------

def max_leaf_number(g: WeightedGraph, cap: int | None = None) -> ParamResult:
    """Max leaves over spanning trees, as ``n - (min connected dominating set)``.

    The witness is a spanning forest as a sorted edge list.  Components with a
    single vertex contribute nothing.
    """
    _check_cap(g, "ml", cap)
    nbr = g.neighbor_masks()
    best, forest = 0, []
    for comp in components(g):
        if len(comp) == 1:
            continue
        if len(comp) == 2:
            leaves, edges = 2, [(comp[0], comp[1])]
        else:
            cds = _min_connected_dominating_set(nbr, comp)
            edges = _tree_from_cds(nbr, comp, cds)
            leaves = _count_leaves(edges)
        forest.extend(edges)
        best = max(best, leaves)
    return ParamResult(best, sorted(forest))


def _count_leaves(edges) -> int:
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return sum(1 for d in deg.values() if d == 1)


def _min_connected_dominating_set(nbr: list[int], comp: list[int]) -> int:
    full = 0
    for v in comp:
        full |= 1 << v
    closed = {v: nbr[v] | (1 << v) for v in comp}
    # BFS-tree internal vertices form a connected dominating set
    best = [_bfs_internal(nbr, comp[0], full)]

    def rec(d: int, dom: int, ext: int, excl: int) -> None:
        if dom == full:
            if d.bit_count() < best[0].bit_count():
                best[0] = d
            return
        if d.bit_count() + 1 >= best[0].bit_count():
            return
        while ext:
            w = (ext & -ext).bit_length() - 1
            ext &= ~(1 << w)
            new_ext = (ext | nbr[w]) & full & ~d & ~excl & ~(1 << w)
            rec(d | (1 << w), dom | closed[w], new_ext, excl)
            excl |= 1 << w
            ext &= ~excl

    excl = 0
    for v in comp:
        rec(1 << v, closed[v], nbr[v] & full & ~excl, excl | (1 << v))
        excl |= 1 << v
    return best[0]


def _bfs_internal(nbr: list[int], root: int, full: int) -> int:
    parent = {root: None}
    queue = [root]
    for u in queue:
        for w in _bits(nbr[u] & full):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    internal = 0
    for w, p in parent.items():
        if p is not None:
            internal |= 1 << p
    return internal or (1 << root)


def _tree_from_cds(nbr: list[int], comp: list[int], cds: int) -> list[tuple[int, int]]:
    inner = _bits(cds)
    edges = []
    seen = {inner[0]}
    queue = [inner[0]]
    for u in queue:
        for w in _bits(nbr[u] & cds):
            if w not in seen:
                seen.add(w)
                queue.append(w)
                edges.append((min(u, w), max(u, w)))
    for v in comp:
        if cds >> v & 1:
            continue
        hub = min(_bits(nbr[v] & cds))
        edges.append((min(v, hub), max(v, hub)))
    return edges


# -- bandwidth ---------------------------------------------------------------

def bandwidth(g: WeightedGraph, cap: int | None = None) -> ParamResult:
    """Exact bandwidth; the witness maps every vertex to a label in 1..n."""
    _check_cap(g, "bw", cap)
    nbr = g.neighbor_masks()
    labeling: dict[int, int] = {}
    best = 0
    offset = 0
    for comp in components(g):
        order = _component_bandwidth(nbr, comp)
        for i, v in enumerate(order):
            labeling[v] = offset + i + 1
        offset += len(comp)
        best = max(best, _labeling_width(g, labeling, comp))
    return ParamResult(best, dict(sorted(labeling.items())))


def _labeling_width(g: WeightedGraph, labeling: dict[int, int], comp) -> int:
    cs = set(comp)
    return max((abs(labeling[u] - labeling[v]) for u, v, _ in g.edges if u in cs), default=0)


def _component_bandwidth(nbr: list[int], comp: list[int]) -> list[int]:
    if len(comp) == 1:
        return list(comp)
    lb = _bandwidth_lower_bound(nbr, comp)
    for k in range(lb, len(comp)):
        order = _bandwidth_feasible(nbr, comp, k)
        if order is not None:
            return order
    raise AssertionError("bandwidth search exhausted")  # k = |comp| - 1 always works


def _bandwidth_lower_bound(nbr: list[int], comp: list[int]) -> int:
    full = 0
    for v in comp:
        full |= 1 << v
    lb = 1
    for v in comp:
        seen, frontier, d = 1 << v, 1 << v, 0
        while frontier:
            d += 1
            nxt = 0
            for x in _bits(frontier):
                nxt |= nbr[x]
            frontier = nxt & full & ~seen
            seen |= frontier
            if frontier:
                lb = max(lb, -(-(seen.bit_count() - 1) // (2 * d)))
        lb = max(lb, -(-(nbr[v].bit_count()) // 2))
    return lb


def _bandwidth_feasible(nbr: list[int], comp: list[int], k: int) -> list[int] | None:
    n = len(comp)
    failed: set[tuple[int, tuple[int, ...]]] = set()
    order: list[int] = []
    pos: dict[int, int] = {}

    def ok_window(placed: int) -> bool:
        # window vertex at position q must see its unplaced neighbours by q + k;
        # deadlines grow with q, so cumulative demand is checked in order
        p = len(order) - 1
        need = 0
        for q in range(max(0, p - k + 1), p + 1):
            need |= nbr[order[q]] & ~placed
            if need.bit_count() > q + k - p:
                return False
        return True

    def rec(placed: int) -> bool:
        p = len(order)
        if p == n:
            return True
        key = (placed, tuple(order[max(0, p - k):]))
        if key in failed:
            return False
        for v in comp:
            if placed >> v & 1:
                continue
            # placed neighbours must sit within distance k
            if any(pos[x] < p - k for x in _bits(nbr[v] & placed)):
                continue
            if p - k >= 0 and nbr[order[p - k]] & ~(placed | (1 << v)):
                continue
            order.append(v)
            pos[v] = p
            if ok_window(placed | (1 << v)) and rec(placed | (1 << v)):
                return True
            order.pop()
            del pos[v]
        failed.add(key)
        return False

    return list(order) if rec(0) else None


# -- pathwidth ---------------------------------------------------------------

def pathwidth(g: WeightedGraph, cap: int | None = None) -> ParamResult:
    """Exact pathwidth as vertex separation number; witness is a path decomposition.

    Forests are admitted up to the forest cap: their searches stay small.
    """
    _check_cap(g, "forest" if _is_forest(g) else "pw", cap)
    nbr = g.neighbor_masks()
    best, order = 0, []
    for comp in components(g):
        k, comp_order = _component_vertex_separation(nbr, comp)
        best = max(best, k)
        order.extend(comp_order)
    return ParamResult(best, path_decomposition(nbr, order))


def _boundary_after(nbr: list[int], s: int, bnd: int, v: int) -> int:
    s2 = s | (1 << v)
    out = 0
    for x in _bits(bnd | (1 << v)):
        if nbr[x] & ~s2:
            out |= 1 << x
    return out


def _component_vertex_separation(nbr: list[int], comp: list[int]) -> tuple[int, list[int]]:
    if len(comp) == 1:
        return 0, list(comp)
    full = 0
    for v in comp:
        full |= 1 << v
    # treewidth is a lower bound and much cheaper to search
    k = max(1, _component_treewidth(nbr, comp)[0])
    while True:
        order = _vs_feasible(nbr, comp, full, k)
        if order is not None:
            return k, order
        k += 1


def _vs_feasible(nbr, comp, full, k) -> list[int] | None:
    failed: set[int] = set()
    order: list[int] = []

    def rec(s: int, bnd: int) -> bool:
        if s == full:
            return True
        if s in failed:
            return False
        # vertices adjacent to the prefix first: they tend to close boundaries
        touching = [v for v in comp if not s >> v & 1]
        touching.sort(key=lambda v: (not (nbr[v] & s), v))
        for v in touching:
            b2 = _boundary_after(nbr, s, bnd, v)
            if b2.bit_count() > k:
                continue
            order.append(v)
            if rec(s | (1 << v), b2):
                return True
            order.pop()
        failed.add(s)
        return False

    return list(order) if rec(0, 0) else None


def path_decomposition(nbr: list[int], order: Sequence[int]) -> Decomposition:
    pos = {v: i for i, v in enumerate(order)}
    last = {v: max([pos[v]] + [pos[w] for w in _bits(nbr[v]) if w in pos]) for v in order}
    bags = []
    for i, v in enumerate(order):
        bag = {v} | {order[j] for j in range(i) if last[order[j]] >= i}
        bags.append(frozenset(bag))
    edges = tuple((i, i + 1) for i in range(len(bags) - 1))
    return Decomposition("path", tuple(bags), edges)


# -- treewidth ---------------------------------------------------------------

def treewidth(g: WeightedGraph, cap: int | None = None) -> ParamResult:
    """Exact treewidth by search over elimination orderings."""
    if _is_forest(g):
        _check_cap(g, "forest", cap)
    else:
        _check_cap(g, "tw", cap)
    nbr = g.neighbor_masks()
    best, order = 0, []
    for comp in components(g):
        k, comp_order = _component_treewidth(nbr, comp)
        best = max(best, k)
        order.extend(comp_order)
    return ParamResult(best, elimination_decomposition(nbr, order))


def _minor_min_width(nbr: list[int], comp: list[int]) -> int:
    adj = {v: set(_bits(nbr[v])) & set(comp) for v in comp}
    lb = 0
    while adj:
        d, u = min((len(adj[v]), v) for v in adj)
        lb = max(lb, d)
        if not adj[u]:
            del adj[u]
            continue
        _, w = min((len(adj[x] & adj[u]), x) for x in adj[u])
        # contract u into w
        for x in adj[u]:
            if x != w:
                adj[x].discard(u)
                adj[x].add(w)
                adj[w].add(x)
        adj[w].discard(u)
        del adj[u]
    return lb


def _eliminated_nbrs(nbr: list[int], s: int, v: int) -> int:
    """Vertices outside ``s + v`` reachable from ``v`` through ``s``."""
    seen = 1 << v
    frontier = 1 << v
    out = 0
    while frontier:
        nxt = 0
        for x in _bits(frontier):
            nxt |= nbr[x]
        nxt &= ~seen
        seen |= nxt
        out |= nxt & ~s
        frontier = nxt & s
    return out


def _min_fill_order(nbr: list[int], comp: list[int]) -> tuple[int, list[int]]:
    adj = {v: set(_bits(nbr[v])) & set(comp) for v in comp}
    order, width = [], 0
    while adj:
        def fill(v):
            ns = list(adj[v])
            return sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if b not in adj[a])
        v = min(adj, key=lambda x: (fill(x), len(adj[x]), x))
        width = max(width, len(adj[v]))
        for a in adj[v]:
            adj[a] |= adj[v] - {a}
            adj[a].discard(v)
        del adj[v]
        order.append(v)
    return width, order


def _component_treewidth(nbr: list[int], comp: list[int]) -> tuple[int, list[int]]:
    if len(comp) == 1:
        return 0, list(comp)
    full = 0
    for v in comp:
        full |= 1 << v
    ub, ub_order = _min_fill_order(nbr, comp)
    lb = _minor_min_width(nbr, comp)
    for k in range(lb, ub):
        order = _tw_feasible(nbr, comp, full, k)
        if order is not None:
            return k, order
    return ub, ub_order


def _tw_feasible(nbr, comp, full, k) -> list[int] | None:
    failed: set[int] = set()
    order: list[int] = []

    def is_clique(mask: int, s: int) -> bool:
        for x in _bits(mask):
            if (mask & ~(1 << x)) & ~_eliminated_nbrs(nbr, s, x):
                return False
        return True

    def rec(s: int) -> bool:
        if s == full:
            return True
        if s in failed:
            return False
        rest = [v for v in comp if not s >> v & 1]
        qs = {v: _eliminated_nbrs(nbr, s, v) for v in rest}
        for v in rest:
            # simplicial vertices of small degree can be eliminated greedily
            if qs[v].bit_count() <= k and is_clique(qs[v], s):
                order.append(v)
                if rec(s | (1 << v)):
                    return True
                order.pop()
                failed.add(s)
                return False
        for v in rest:
            if qs[v].bit_count() > k:
                continue
            order.append(v)
            if rec(s | (1 << v)):
                return True
            order.pop()
        failed.add(s)
        return False

    return list(order) if rec(0) else None


def elimination_decomposition(nbr: list[int], order: Sequence[int]) -> Decomposition:
    """Tree decomposition induced by an elimination ordering."""
    pos = {v: i for i, v in enumerate(order)}
    s = 0
    bags, higher = [], []
    for v in order:
        q = _eliminated_nbrs(nbr, s, v) & ~s
        q = sum(1 << w for w in _bits(q) if w in pos)
        bags.append(frozenset({v} | set(_bits(q))))
        higher.append(q)
        s |= 1 << v
    edges = []
    for i, v in enumerate(order):
        if higher[i]:
            j = min(pos[w] for w in _bits(higher[i]))
            edges.append((i, j))
    # join the per-component trees into one tree
    roots = [i for i in range(len(order)) if not higher[i]]
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return Decomposition("tree", tuple(bags), tuple(sorted(edges)))


def check_decomposition(g: WeightedGraph, dec: Decomposition) -> list[str]:
    """Names of violated tree-decomposition properties (empty if valid)."""
    problems = []
    covered = set().union(*dec.bags) if dec.bags else set()
    if covered != set(range(g.n)):
        problems.append("vertex-cover")
    for u, v, _ in g.edges:
        if not any(u in b and v in b for b in dec.bags):
            problems.append(f"edge ({u}, {v})")
    k = len(dec.bags)
    adj = {i: set() for i in range(k)}
    for a, b in dec.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    if k and (len(dec.tree_edges) != k - 1 or not _connected(adj, set(range(k)))):
        problems.append("not a tree")
    if dec.kind == "path" and any(len(s) > 2 for s in adj.values()):
        problems.append("not a path")
    for v in range(g.n):
        holding = {i for i, b in enumerate(dec.bags) if v in b}
        if holding and not _connected(adj, holding):
            problems.append(f"vertex {v} bags disconnected")
    return problems


def _connected(adj: dict[int, set[int]], nodes: set[int]) -> bool:
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == nodes


# -- distance to linear forest ----------------------------------------------

def distance_to_linear_forest(g: WeightedGraph, cap: int | None = None) -> ParamResult:
    """Smallest deletion set leaving disjoint paths; the witness is that set."""
    _check_cap(g, "dl", cap)
    nbr = g.neighbor_masks()
    deleted: list[int] = []
    for comp in components(g):
        full = sum(1 << v for v in comp)
        k = 0
        while True:
            sol = _dl_search(nbr, full, k)
            if sol is not None:
                deleted.extend(_bits(sol))
                break
            k += 1
    return ParamResult(len(deleted), sorted(deleted))


def _dl_search(nbr: list[int], alive: int, k: int) -> int | None:
    for v in _bits(alive):
        live = nbr[v] & alive
        if live.bit_count() >= 3:
            if k == 0:
                return None
            branch = [v] + _bits(live)[:3]
            for x in branch:
                sol = _dl_search(nbr, alive & ~(1 << x), k - 1)
                if sol is not None:
                    return sol | (1 << x)
            return None
    # max degree <= 2: break each cycle at its smallest vertex
    cut = 0
    seen = 0
    for v in _bits(alive):
        if seen >> v & 1:
            continue
        comp, stack = 0, [v]
        while stack:
            x = stack.pop()
            if comp >> x & 1:
                continue
            comp |= 1 << x
            stack.extend(_bits(nbr[x] & alive & ~comp))
        seen |= comp
        edges2 = sum((nbr[x] & comp).bit_count() for x in _bits(comp))
        if edges2 // 2 == comp.bit_count() and comp.bit_count() >= 3:
            cut |= comp & -comp
    return cut if cut.bit_count() <= k else None


# -- doubling dimension ------------------------------------------------------

@dataclass(frozen=True)
class DoublingResult:
    ddim: float
    d: int
    center: int | None
    radius: Fraction | None


def doubling_constant(dist: Sequence[Sequence[Fraction | None]], cap: int | None = None) -> DoublingResult:
    """Smallest ``d`` such that every ball is covered by ``d`` half-radius balls.

    Balls are centred at points; for a fixed centre the cover number can only
    grow when the ball gains a point, so radii range over the distances from
    that centre.
    """
    n = len(dist)
    if n > (CAPS["ddim"] if cap is None else cap):
        raise CapExceeded(f"doubling dimension capped at n={CAPS['ddim'] if cap is None else cap}")
    if n == 0:
        return DoublingResult(0.0, 1, None, None)
    best = DoublingResult(0.0, 1, 0, Fraction(0))
    seen: set[tuple] = set()
    for u in range(n):
        radii = sorted({d for d in dist[u] if d is not None and d > 0})
        for r in radii:
            ball = [e for e in range(n) if dist[u][e] is not None and dist[u][e] <= r]
            half = r / 2
            fam = []
            for e in ball:
                m = 0
                for c in range(n):
                    if dist[c][e] is not None and dist[c][e] <= half:
                        m |= 1 << c
                fam.append(m)
            fam = reduce_family(fam)
            key = tuple(fam)
            if key in seen:
                continue
            seen.add(key)
            if greedy_hitting_set(fam).bit_count() <= best.d:
                continue
            size = min_hitting_set_masks(fam).bit_count()
            if size > best.d:
                best = DoublingResult(math.log2(size), size, u, r)
    return best


def doubling_dimension(g: WeightedGraph, cap: int | None = None) -> DoublingResult:
    if g.n > (CAPS["ddim"] if cap is None else cap):
        raise CapExceeded(f"doubling dimension capped at n={CAPS['ddim'] if cap is None else cap}")
    return doubling_constant(distance_matrix(g), cap)
