"""Size-budgeted interval labels for fast reachability queries on large graphs."""

from .graph import Graph, condense, load_edge_list, topological_order
from .indexer import BuildParams, ReachIndex, build_index
from .intervals import Interval, greedy_k_cover, merge_interval_sets, optimal_k_cover
from .query import QueryStats, bfs_oracle, query
from .serialize import dumps, load_index, save_index

__all__ = [
    "BuildParams", "Graph", "Interval", "QueryStats", "ReachIndex", "bfs_oracle", "build_index",
    "condense", "dumps", "greedy_k_cover", "load_edge_list", "load_index", "merge_interval_sets",
    "optimal_k_cover", "query", "save_index", "topological_order",
]
