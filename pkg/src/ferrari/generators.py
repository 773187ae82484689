"""Synthetic graphs for tests, demos and benchmarks."""

from __future__ import annotations

import io

import numpy as np

from .graph import Graph, load_edge_list

EXAMPLE_EDGES = "a c\na d\nb c\nb d\nc e\nd e\n"


def example_graph() -> Graph:
    """Five-node DAG with two sources (a, b) that both reach c and d, which reach e."""
    return load_edge_list(io.StringIO(EXAMPLE_EDGES))


def _sample_pairs(n: int, m: int, rng: np.random.Generator, dag: bool) -> np.ndarray:
    if n < 2:
        return np.empty((0, 2), dtype=np.int64)
    limit = n * (n - 1) // (2 if dag else 1)
    m = min(m, limit)
    got = np.empty((0, 2), dtype=np.int64)
    while len(got) < m:
        need = m - len(got)
        cand = rng.integers(0, n, size=(2 * need + 16, 2))
        cand = cand[cand[:, 0] != cand[:, 1]]
        if dag:
            cand = np.sort(cand, axis=1)
        got = np.unique(np.vstack([got, cand]), axis=0)
        if len(got) > m:
            got = got[rng.permutation(len(got))[:m]]
    return got


def random_dag(n: int, m: int, seed=None) -> Graph:
    """``m`` distinct edges oriented along a random permutation of ``n`` nodes."""
    rng = np.random.default_rng(seed)
    pairs = _sample_pairs(n, m, rng, dag=True)
    perm = rng.permutation(n)
    return Graph.from_edges(n, perm[pairs] if len(pairs) else pairs)


def random_digraph(n: int, m: int, seed=None) -> Graph:
    """``m`` distinct uniformly random edges; cycles are likely."""
    rng = np.random.default_rng(seed)
    return Graph.from_edges(n, _sample_pairs(n, m, rng, dag=False))


def random_tree(n: int, seed=None) -> Graph:
    """Random out-tree rooted at node 0."""
    rng = np.random.default_rng(seed)
    if n < 2:
        return Graph.from_edges(n, [])
    parents = np.array([rng.integers(0, v) for v in range(1, n)], dtype=np.int64)
    return Graph.from_edges(n, np.column_stack([parents, np.arange(1, n)]))


def chain(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def star(n: int) -> Graph:
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])
