"""Deterministic generators for the constructions behind the parameter bounds.

Each generator returns ``(graph, GadgetSpec)``; the spec lists the claims the
construction is meant to witness so the harness can re-check them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import GraphError, WeightedGraph, build_graph, components, shortest_path_tree


@dataclass(frozen=True)
class Claim:
    """``param relation value``; ``anchors``/``radius`` narrow a highway claim.

    With ``anchors`` the highway value is maximised over those anchors only,
    which is a lower bound and so only meaningful for ``>=`` claims or, with a
    fixed ``radius``, for a single anchored instance.
    """

    param: str
    relation: str
    value: object
    source: str = ""
    anchors: tuple[int, ...] | None = None
    radius: Fraction | None = None


@dataclass(frozen=True)
class GadgetSpec:
    family: str
    params: dict
    variant: str | None = None
    claims: tuple[Claim, ...] = field(default_factory=tuple)


def star(n: int) -> tuple[WeightedGraph, GadgetSpec]:
    """Star on ``n`` vertices: centre 0, leaves 1..n-1, unit weights."""
    if n < 2:
        raise GraphError("a star needs at least 2 vertices")
    g = build_graph([(0, i, 1) for i in range(1, n)], n=n)
    claims = [
        Claim("kappa", "=", n - 1, "star: skeleton dimension n-1"),
        Claim("tw", "=", 1, "star: treewidth 1"),
        Claim("bw", "=", n // 2, "star: bandwidth floor(n/2)"),
        Claim("hd1", "=", 1, "star: hd1 = 1"),
    ]
    if n >= 4:
        claims.append(Claim("dl", "=", 1, "star: distance to linear forest 1"))
    return g, GadgetSpec("star", {"n": n}, None, tuple(claims))


def subdivided_star(l: int) -> tuple[WeightedGraph, GadgetSpec]:
    """Star with ``l`` spokes, each split once: centre 0, middles 1..l, tips l+1..2l."""
    if l < 1:
        raise GraphError("subdivided star needs l >= 1")
    edges = [(0, i, 1) for i in range(1, l + 1)]
    edges += [(i, l + i, 1) for i in range(1, l + 1)]
    g = build_graph(edges, n=2 * l + 1)
    claims = [Claim("hd2", "=", l, "subdivided star: hd2 = l")]
    if l >= 3:
        claims.append(Claim("dl", "=", 1, "subdivided star: distance to linear forest 1"))
    return g, GadgetSpec("subdivided_star", {"l": l}, None, tuple(claims))


def complete_graph_exp_weights(n: int) -> tuple[WeightedGraph, GadgetSpec]:
    """K_n on labels 1..n (ids 0..n-1) with weight 4**max(i, j)."""
    if n < 2:
        raise GraphError("need n >= 2")
    edges = [(i - 1, j - 1, 4 ** max(i, j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    g = build_graph(edges, n=n)
    claims = (
        Claim("hd1", "=", 1, "exponential clique: hd1 = 1"),
        Claim("tw", "=", n - 1, "exponential clique: treewidth n-1"),
    )
    return g, GadgetSpec("complete_graph_exp_weights", {"n": n}, None, claims)


CATERPILLAR_VARIANTS = ("hd2-lb", "skel-bw", "skel-3", "hd1-const")


def caterpillar(b: int, variant: str = "skel-3") -> tuple[WeightedGraph, GadgetSpec]:
    """Caterpillar with ``b`` backbone vertices of degree 3.

    Backbone ``0..b-1`` is a path; backbone vertex ``i`` carries pendant leaf
    ``b + i``; the ends get extra leaves ``2b`` (at 0) and ``2b + 1`` (at b-1).
    So ``n = 2b + 2`` and there are ``b + 2`` leaves.
    """
    if b < 1:
        raise GraphError("caterpillar needs b >= 1")
    if variant not in CATERPILLAR_VARIANTS:
        raise GraphError(f"unknown caterpillar variant {variant!r}")
    n = 2 * b + 2
    spine = [(i, i + 1) for i in range(b - 1)]
    hangs = [(i, b + i) for i in range(b)] + [(0, 2 * b), (b - 1, 2 * b + 1)]
    if variant == "skel-bw":
        centre = (b - 1) // 2
        depth = (b - 1) + 2
        edges = [(u, v, 1) for u, v in spine]
        edges += [(u, v, depth - abs(u - centre)) for u, v in hangs]
    else:
        spine_w, leaf_w = {
            "hd2-lb": (Fraction(1, n), 1),
            "skel-3": (2, 1),
            "hd1-const": (5, 1),
        }[variant]
        edges = [(u, v, spine_w) for u, v in spine] + [(u, v, leaf_w) for u, v in hangs]
    g = build_graph(edges, n=n)
    claims = {
        "hd2-lb": [Claim("hd2", ">=", b, "caterpillar, backbone 1/n: hd2 >= b")],
        "skel-bw": [Claim("kappa", "=", b + 2, "caterpillar, equal leaf depths: kappa = #leaves")],
        "skel-3": [Claim("kappa", "=", 3, "caterpillar, backbone 2: kappa = 3")],
        "hd1-const": [Claim("hd1", "<=", 7, "caterpillar, backbone 5: hd1 <= 7")],
    }[variant]
    if variant == "skel-bw" and b >= 2:
        claims.append(Claim("bw", "=", 2, "caterpillar: bandwidth 2"))
    return g, GadgetSpec("caterpillar", {"b": b}, variant, tuple(claims))


def binary_tree_geometric(d: int) -> tuple[WeightedGraph, GadgetSpec]:
    """Complete binary tree with ``2d + 1`` levels; level j to j+1 edges weigh 3**-j.

    Depth counts levels (the root alone has depth 1), so the tree has
    ``2**(2d+1) - 1`` vertices.  Heap numbering: the children of ``i`` are
    ``2i + 1`` and ``2i + 2``.
    """
    if d < 1:
        raise GraphError("need d >= 1")
    n = 2 ** (2 * d + 1) - 1
    edges = []
    for i in range(n):
        level = (i + 1).bit_length() - 1
        for c in (2 * i + 1, 2 * i + 2):
            if c < n:
                edges.append((i, c, Fraction(1, 3 ** level)))
    g = build_graph(edges, n=n)
    claims = (
        Claim("kappa", "<=", 3, "geometric binary tree: kappa <= 3"),
        Claim("pw", "=", d, "binary tree with 2d+1 levels: pathwidth d"),
    )
    return g, GadgetSpec("binary_tree_geometric", {"d": d}, None, claims)


def subdivided_grid(q: int) -> tuple[WeightedGraph, GadgetSpec]:
    """q x q grid with every edge replaced by ``u x y v`` plus a row-major path.

    Grid vertex (i, j) is ``i*q + j``; subdivision vertices follow in edge order
    (horizontal before vertical per cell).  The path edges and the outer
    subdivision edges weigh 1, the middle edge ``dist_P(u, v) + 1/2``.
    """
    if q < 2:
        raise GraphError("need q >= 2")
    edges = [(k, k + 1, 1) for k in range(q * q - 1)]
    nxt = q * q
    for i in range(q):
        for j in range(q):
            u = i * q + j
            for v in ((u + 1) if j + 1 < q else None, (u + q) if i + 1 < q else None):
                if v is None:
                    continue
                x, y = nxt, nxt + 1
                nxt += 2
                edges += [(u, x, 1), (x, y, Fraction(v - u) + Fraction(1, 2)), (y, v, 1)]
    g = build_graph(edges, n=nxt)
    claims = (
        Claim("metric", "=", True, "subdivided grid is metric"),
        Claim("kappa", "<=", 10, "subdivided grid: kappa <= 10"),
        Claim("hd2", ">=", q, "subdivided grid: hd2 >= q", anchors=(0,)),
    )
    return g, GadgetSpec("subdivided_grid", {"q": q}, None, claims)


def spanning_tree_tight_weights(g: WeightedGraph, metric: bool = True) -> tuple[WeightedGraph, GadgetSpec]:
    """Weights on ``g`` (its own weights ignored) making kappa equal ml.

    A max-leaf spanning tree ``T`` gets weight 2 on leaf edges and ``1/n`` on
    inner edges.  Other edges get 5, or in the metric variant
    ``dist_T(u, v) - eps`` with ``eps < 1/n^2``.  The metric ``eps`` grows with
    the square of the tree hop count of the edge, so no chain of shortcuts
    along the same tree path can undercut a single one, and a distinct small
    offset per edge keeps all shortest paths unique.
    """
    from .classic import max_leaf_number

    n = g.n
    if n < 3:
        raise GraphError("tight weighting needs n >= 3")
    if len(components(g)) != 1:
        raise GraphError("tight weighting needs a connected graph")
    tree = max_leaf_number(g).witness
    tree_set = set(tree)
    deg = [0] * n
    for u, v in tree:
        deg[u] += 1
        deg[v] += 1
    weights = {}
    for u, v in tree:
        weights[(u, v)] = Fraction(2) if deg[u] == 1 or deg[v] == 1 else Fraction(1, n)
    chords = [(u, v) for u, v, _ in g.edges if (u, v) not in tree_set]
    if metric:
        t = build_graph([(u, v, weights[(u, v)]) for u, v in tree], n=n)
        hops_t = build_graph([(u, v, 1) for u, v in tree], n=n)
        m = len(chords)
        scale = n * (m + 1)
        denom = n * n * ((n - 1) ** 2 * scale + m + 1)
        for k, (u, v) in enumerate(chords, 1):
            d_t = shortest_path_tree(t, u).dist[v]
            hops = int(shortest_path_tree(hops_t, u).dist[v])
            weights[(u, v)] = d_t - Fraction(hops * hops * scale + k, denom)
    else:
        for u, v in chords:
            weights[(u, v)] = Fraction(5)
    out = build_graph([(u, v, weights[(u, v)]) for u, v, _ in g.edges], n=n)
    ml = len([v for v in range(n) if deg[v] == 1])
    claims = [Claim("kappa", "=", ml, "tight weighting: kappa = ml"), Claim("ml", "=", ml, "max leaf number")]
    if metric:
        claims.append(Claim("metric", "=", True, "metric variant is metric"))
    return out, GadgetSpec("spanning_tree_tight_weights", {"n": n}, "metric" if metric else "plain", tuple(claims))


def vc_reduction(g: WeightedGraph) -> tuple[WeightedGraph, GadgetSpec]:
    """Vertex-cover reduction graph: ``v* = n + v`` and apex ``x = 2n``.

    Edges of ``g`` and ``{v, v*}`` weigh 1, ``{v*, x}`` weighs 5.
    """
    from .highway import min_vertex_cover

    n = g.n
    if any(g.degree(v) > 3 for v in range(n)):
        raise GraphError("vc_reduction expects maximum degree <= 3")
    x = 2 * n
    edges = [(u, v, 1) for u, v, _ in g.edges]
    edges += [(v, n + v, 1) for v in range(n)]
    edges += [(n + v, x, 5) for v in range(n)]
    out = build_graph(edges, n=2 * n + 1)
    cover = len(min_vertex_cover(g))
    claims = (
        Claim("hd3", "=", cover + n + 1, "anchored instance (x, 5/2) has optimum |C| + n + 1",
              anchors=(x,), radius=Fraction(5, 2)),
        Claim("n", "=", 2 * n + 1, "construction size"),
    )
    return out, GadgetSpec("vc_reduction", {"n": n, "cover": cover}, None, claims)


GENERATORS = {
    "star": star,
    "subdivided_star": subdivided_star,
    "complete_graph_exp_weights": complete_graph_exp_weights,
    "caterpillar": caterpillar,
    "binary_tree_geometric": binary_tree_geometric,
    "subdivided_grid": subdivided_grid,
    "spanning_tree_tight_weights": spanning_tree_tight_weights,
    "vc_reduction": vc_reduction,
}
