"""Exact computation of skeleton dimension, highway dimensions and classic
graph parameters, the gadgets separating them, and a doubling-metric embedding."""
from __future__ import annotations

from .graph import GraphError, WeightedGraph, build_graph, is_metric, shortest_path_tree
from .hitting import CapExceeded
from .io import read_graph, write_graph
from .skeleton import brute_force_skeleton_dimension, skeleton_dimension

__all__ = [
    "CapExceeded",
    "GraphError",
    "WeightedGraph",
    "brute_force_skeleton_dimension",
    "build_graph",
    "is_metric",
    "read_graph",
    "shortest_path_tree",
    "skeleton_dimension",
    "write_graph",
]

__version__ = "0.1.0"
