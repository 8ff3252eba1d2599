from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from atlas.graph import build_graph

settings.register_profile(
    "atlas",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("atlas")

WEIGHTS = st.fractions(min_value=Fraction(1, 4), max_value=20, max_denominator=4)


@st.composite
def connected_graphs(draw, min_n=2, max_n=8, weights=WEIGHTS, extra=0.35):
    """Random spanning tree plus a random subset of the remaining pairs."""
    n = draw(st.integers(min_n, max_n))
    pairs = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        pairs.add((u, v))
    others = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in pairs]
    for p in others:
        if draw(st.floats(0, 1)) < extra:
            pairs.add(p)
    edges = [(u, v, draw(weights)) for u, v in sorted(pairs)]
    return build_graph(edges, n=n)


@st.composite
def unit_graphs(draw, min_n=1, max_n=8, connected=False):
    n = draw(st.integers(min_n, max_n))
    if connected:
        return draw(connected_graphs(max(2, min_n), max_n, st.just(Fraction(1))))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return build_graph([(u, v, 1) for u, v in sorted(chosen)], n=n)


def random_graph(seed: int, n: int, p: float = 0.35, unit: bool = False):
    from atlas.corpus import random_connected_graph

    return random_connected_graph(random.Random(seed), n, p, "unit" if unit else "rational")


@pytest.fixture
def triangle_113():
    return build_graph([(0, 1, 1), (1, 2, 1), (0, 2, 3)])


@pytest.fixture
def path3():
    return build_graph([(0, 1, 1), (1, 2, 1)])


def random_metric(seed: int, n: int, clustered: bool = True):
    """Rational L1 metric in the plane; clustering spreads it over several scales."""
    from atlas.embedding import FiniteMetric

    rng = random.Random(seed)
    pts = set()
    while len(pts) < n:
        if clustered:
            x = rng.randrange(3) * 1024 + rng.randrange(3) * 32 + Fraction(rng.randint(0, 8), 2)
            y = rng.randrange(2) * 512 + rng.randint(0, 3)
        else:
            x, y = Fraction(rng.randint(0, 60), rng.randint(1, 3)), Fraction(rng.randint(0, 60))
        pts.add((Fraction(x), Fraction(y)))
    pts = sorted(pts)
    return FiniteMetric.from_matrix([[abs(a[0] - b[0]) + abs(a[1] - b[1]) for b in pts] for a in pts])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
