from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atlas import embedding as em
from atlas.corpus import complete_graph, path_graph
from atlas.graph import distance_matrix
from atlas.skeleton import skeleton_dimension
from conftest import connected_graphs, random_metric


def line(*xs):
    return em.FiniteMetric.from_matrix([[abs(F(a) - F(b)) for b in xs] for a in xs])


def test_aspect_ratio_examples():
    assert em.aspect_ratio(line(0, 5)) == 1
    assert em.aspect_ratio(em.metric_from_graph(complete_graph(4))) == 1
    assert em.aspect_ratio(line(0, 1, 3)) == 3


def test_log2_ceil():
    assert [em.log2_ceil(F(q)) for q in (1, 2, 3, 4, 5)] == [0, 1, 2, 2, 3]
    assert em.log2_ceil(F(9, 8)) == 1
    assert [em.ceil_log2(d) for d in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]


@pytest.mark.parametrize("rows,msg", [
    ([[0]], "at least 2"),
    ([[0, 1], [2, 0]], "asymmetric"),
    ([[0, 0], [0, 0]], "non-positive"),
    ([[1, 1], [1, 0]], "diagonal"),
    ([[0, 1, 5], [1, 0, 1], [5, 1, 0]], "triangle"),
    ([[0, 1], [1]], "entries"),
])
def test_invalid_metrics(rows, msg):
    with pytest.raises(em.MetricError, match=msg):
        em.FiniteMetric.from_matrix(rows)


@pytest.mark.parametrize("eps", [0, 1, F(3, 2), -1])
def test_epsilon_range(eps):
    with pytest.raises(em.MetricError):
        em.build_embedded_graph(line(0, 1, 2), eps)


def test_two_points_give_one_edge_of_the_same_length():
    emb = em.build_embedded_graph(line(0, 7), F(1, 2))
    assert emb.scale == F(1, 7) and emb.hierarchy.L == 0
    assert emb.graph.edges == ((0, 1, F(1)),)
    assert em.kappa_bound(emb.hierarchy.L, F(1, 2), 1) is None


def test_uniform_metric_is_a_single_scale():
    x = em.metric_from_graph(complete_graph(4, w=3))
    emb = em.build_embedded_graph(x, F(1, 2))
    assert emb.hierarchy.levels == (frozenset(range(4)),)
    assert emb.graph.m == 6
    assert em.verify_distortion(emb.metric, emb.graph, F(1, 2)).max_stretch == 1


def test_covering_radius_formula():
    h = em.HubHierarchy((frozenset({0}),), 3, F(1, 2))
    assert h.covering_radius(0) == F(1, 2) * F(1, 4) / (F(9, 4) * 3)
    assert h.covering_radius(3) == 8 * h.covering_radius(0)


def test_line_with_doubling_gaps():
    x = line(0, 1, 3, 7, 15, 31)
    emb = em.build_embedded_graph(x, F(1, 4))
    h = emb.hierarchy
    assert h.L == 5 and len(h.levels) == 6
    assert em.verify_hierarchy(emb.metric, h) == []
    assert em.verify_distortion(emb.metric, emb.graph, F(1, 4)).ok
    assert em.pruning_violations(emb) == [] and em.long_edge_violations(emb) == []
    # the heaviest pair lives in a top-level hub pair or was pruned
    for (u, v), i in emb.edge_levels.items():
        assert emb.metric.dist[u][v] <= 2 ** (i + 1)


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("eps", [F(1, 4), F(1, 2), F(3, 4)])
def test_clustered_metrics_satisfy_every_check(seed, eps):
    x = random_metric(seed, 6 + seed % 5)
    emb = em.build_embedded_graph(x, eps)
    assert em.verify_hierarchy(emb.metric, emb.hierarchy) == []
    d = em.verify_distortion(emb.metric, emb.graph, eps)
    assert d.ok and 1 <= d.min_stretch <= d.max_stretch <= 1 + eps
    assert em.pruning_violations(emb) == []
    assert em.long_edge_violations(emb) == []


def test_clustered_metrics_do_prune():
    pruned = 0
    for seed in range(8):
        emb = em.build_embedded_graph(random_metric(seed, 10), F(1, 2))
        pruned += emb.unpruned.m - emb.graph.m
    assert pruned > 0


def test_hierarchy_levels_shrink_on_clustered_metric():
    emb = em.build_embedded_graph(random_metric(1, 10), F(1, 2))
    sizes = [len(y) for y in emb.hierarchy.levels]
    assert sizes == sorted(sizes, reverse=True)
    assert sizes[0] == 10 and sizes[-1] < 10


def test_verify_distortion_reports_bad_pairs():
    x = em.metric_from_graph(path_graph(3))
    stretched = path_graph(3, w=2)
    rep = em.verify_distortion(x, stretched, F(1, 2))
    assert not rep.ok and rep.max_stretch == 2 and len(rep.violations) == 3


def test_verify_hierarchy_flags_broken_nets():
    x = line(0, 1, 2, 4)
    h = em.HubHierarchy((frozenset({0, 1, 2}), frozenset({0, 3})), 2, F(1, 2))
    bad = em.verify_hierarchy(x, h)
    assert "Y_0 != X" in bad and any("not inside" in b for b in bad)


def test_kappa_bound_value():
    assert em.kappa_bound(2, F(1, 2), 1) == 2 ** 14
    assert em.kappa_bound(1, F(1, 4), 2) == F(2 ** 14) ** 2


@settings(max_examples=20)
@given(connected_graphs(min_n=2, max_n=8), st.sampled_from([F(1, 4), F(1, 2), F(3, 4)]))
def test_graph_metrics_embed_within_distortion(g, eps):
    x = em.metric_from_graph(g)
    assert x.dist == tuple(tuple(r) for r in distance_matrix(g))
    emb = em.build_embedded_graph(x, eps)
    assert em.verify_distortion(emb.metric, emb.graph, eps).ok
    assert em.verify_hierarchy(emb.metric, emb.hierarchy) == []
    assert em.pruning_violations(emb) == []
    assert em.long_edge_violations(emb) == []
    assert skeleton_dimension(emb.graph).kappa <= x.n - 1 or x.n == 2
