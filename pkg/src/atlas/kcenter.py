"""k-Center: greedy farthest-point 2-approximation and an exact enumerator."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graph import GraphError, WeightedGraph, distance_matrix, is_connected
from .hitting import CapExceeded

EXACT_CAP = 18


@dataclass(frozen=True)
class CenterSolution:
    centers: tuple[int, ...]
    radius: Fraction


def _check(g: WeightedGraph, k: int):
    if not 1 <= k <= g.n:
        raise GraphError(f"k must lie in 1..{g.n}, got {k}")
    if not is_connected(g):
        raise GraphError("k-center needs a connected graph")
    return distance_matrix(g)


def hochbaum_shmoys(g: WeightedGraph, k: int) -> CenterSolution:
    """Start at vertex 0, then repeatedly add the farthest vertex (lowest id on ties)."""
    dist = _check(g, k)
    centers = [0]
    near = list(dist[0])
    while len(centers) < k:
        far = max(range(g.n), key=lambda v: (near[v], -v))
        centers.append(far)
        near = [min(near[v], dist[far][v]) for v in range(g.n)]
    return CenterSolution(tuple(centers), max(near))


def exact_kcenter(g: WeightedGraph, k: int, cap: int = EXACT_CAP) -> CenterSolution:
    """Optimal radius over all k-subsets; the first optimal subset in lex order wins."""
    if g.n > cap:
        raise CapExceeded(f"exact k-center capped at n={cap}")
    dist = _check(g, k)
    best: CenterSolution | None = None
    for centers in combinations(range(g.n), k):
        bound = None if best is None else best.radius
        r = Fraction(0)
        for v in range(g.n):
            r = max(r, min(dist[c][v] for c in centers))
            if bound is not None and r >= bound:
                break
        else:
            best = CenterSolution(centers, r)
    assert best is not None
    return best


def approximation_ratio(g: WeightedGraph, k: int) -> Fraction | None:
    """Greedy radius over optimal radius; ``None`` when the optimum is 0."""
    opt = exact_kcenter(g, k).radius
    if opt == 0:
        return None
    return hochbaum_shmoys(g, k).radius / opt
