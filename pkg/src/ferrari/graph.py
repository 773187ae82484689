"""Directed graphs in compressed adjacency form, SCC condensation and DAG ordering."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input."""


class CycleError(ValueError):
    """Raised when a DAG-only operation meets a cycle."""


def _csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int64)
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable directed graph over dense node ids ``0..n-1``.

    Both directions are stored in CSR form with sorted neighbor lists.
    ``ids`` optionally carries the external id of every internal node.
    """

    n: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    ids: tuple | None = field(default=None)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] | np.ndarray,
                   ids: Sequence | None = None) -> "Graph":
        """Build a graph, dropping duplicate edges and self-loops."""
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"edge endpoint outside 0..{n - 1}")
        arr = arr[arr[:, 0] != arr[:, 1]]
        if len(arr):
            arr = np.unique(arr, axis=0)
        src, dst = arr[:, 0], arr[:, 1]
        out_indptr, out_indices = _csr(n, src, dst)
        in_indptr, in_indices = _csr(n, dst, src)
        return cls(n, out_indptr, out_indices, in_indptr, in_indices,
                   tuple(ids) if ids is not None else None)

    @property
    def m(self) -> int:
        return int(len(self.out_indices))

    def successors(self, v: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[v]:self.out_indptr[v + 1]]

    def predecessors(self, v: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[v]:self.in_indptr[v + 1]]

    def out_degree(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    def in_degree(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array sorted by (src, dst)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degree())
        return np.column_stack([src, self.out_indices])

    def out_lists(self) -> list[list[int]]:
        """Successor lists as plain Python lists (fast for scalar loops)."""
        ind = self.out_indices.tolist()
        ptr = self.out_indptr.tolist()
        return [ind[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    def succ_lists(self) -> list[list[int]]:
        """Cached :meth:`out_lists`; callers must not mutate the result."""
        cached = self.__dict__.get("_succ")
        if cached is None:
            cached = self.out_lists()
            object.__setattr__(self, "_succ", cached)
        return cached

    def in_lists(self) -> list[list[int]]:
        ind = self.in_indices.tolist()
        ptr = self.in_indptr.tolist()
        return [ind[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    def index_of(self, external) -> int:
        """Internal id of an external node id."""
        if self.ids is None:
            if isinstance(external, (int, np.integer)) and 0 <= external < self.n:
                return int(external)
            raise KeyError(external)
        lookup = self.__dict__.get("_lookup")
        if lookup is None:
            lookup = {x: i for i, x in enumerate(self.ids)}
            object.__setattr__(self, "_lookup", lookup)
        return lookup[external]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _parse_token(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def load_edge_list(stream: TextIO | Iterable[str]) -> Graph:
    """Read a whitespace-separated ``SRC DST`` edge list.

    Lines starting with ``#`` or ``%`` and blank lines are skipped. External
    ids are remapped densely in sorted order (numeric if every id is an
    integer, otherwise as strings); the mapping is kept in ``Graph.ids``.
    """
    pairs = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) < 2:
            raise GraphFormatError(f"line {lineno}: expected 'SRC DST', got {raw.rstrip()!r}")
        pairs.append((_parse_token(parts[0]), _parse_token(parts[1])))
    if not pairs:
        raise GraphFormatError("edge list is empty")
    tokens = {x for p in pairs for x in p}
    if all(isinstance(x, int) for x in tokens):
        if min(tokens) < 0:
            raise GraphFormatError("node ids must be non-negative")
        ids = sorted(tokens)
    else:
        ids = sorted(tokens, key=str)
        ids = [str(x) for x in ids]
        pairs = [(str(a), str(b)) for a, b in pairs]
    remap = {x: i for i, x in enumerate(ids)}
    edges = np.array([(remap[a], remap[b]) for a, b in pairs], dtype=np.int64)
    return Graph.from_edges(len(ids), edges, ids=ids)


@dataclass(frozen=True, eq=False)
class SccMapping:
    comp_of: np.ndarray
    comp_count: int
    rep_of: np.ndarray


def strongly_connected_components(g: Graph) -> np.ndarray:
    """Component id per node via iterative Tarjan.

    Components are numbered in the order Tarjan completes them, which is a
    reverse topological order of the condensation.
    """
    n = g.n
    succ = g.out_lists()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = succ[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return np.array(comp, dtype=np.int64)


def condense(g: Graph) -> tuple[Graph, SccMapping]:
    """Collapse strongly connected components into single nodes.

    Components are renumbered so that the smallest original node id of each
    component determines its order; an acyclic input therefore maps to itself.
    """
    raw = strongly_connected_components(g)
    ncomp = int(raw.max()) + 1 if g.n else 0
    first = np.full(ncomp, g.n, dtype=np.int64)
    np.minimum.at(first, raw, np.arange(g.n, dtype=np.int64))
    order = np.argsort(first, kind="stable")
    relabel = np.empty(ncomp, dtype=np.int64)
    relabel[order] = np.arange(ncomp, dtype=np.int64)
    comp_of = relabel[raw]
    rep_of = first[order]
    e = g.edges()
    cedges = np.column_stack([comp_of[e[:, 0]], comp_of[e[:, 1]]]) if len(e) else e
    dag = Graph.from_edges(ncomp, cedges)
    return dag, SccMapping(comp_of, ncomp, rep_of)


def augment_root(g: Graph) -> Graph:
    """Add a virtual root (id ``g.n``) with an edge to every source node."""
    sources = np.flatnonzero(g.in_degree() == 0)
    root = g.n
    extra = np.column_stack([np.full(len(sources), root, dtype=np.int64), sources])
    return Graph.from_edges(g.n + 1, np.vstack([g.edges(), extra]))


@dataclass(frozen=True, eq=False)
class TopoOrder:
    """``tau[v]`` is the 1-based rank of ``v``; ``order[i]`` the node of rank ``i+1``."""

    tau: np.ndarray
    order: np.ndarray


def topological_order(g: Graph) -> TopoOrder:
    """Kahn's algorithm, always releasing the smallest ready node id first."""
    indeg = g.in_degree().tolist()
    succ = g.out_lists()
    ready = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != g.n:
        raise CycleError(f"graph has a cycle ({g.n - len(order)} nodes unordered)")
    order_arr = np.array(order, dtype=np.int64)
    tau = np.empty(g.n, dtype=np.int64)
    tau[order_arr] = np.arange(1, g.n + 1, dtype=np.int64)
    return TopoOrder(tau, order_arr)


def topological_levels(g: Graph, topo: TopoOrder | None = None) -> np.ndarray:
    """Longest-path depth from any source: 0 for sources, else 1 + max over predecessors."""
    if topo is None:
        topo = topological_order(g)
    pred = g.in_lists()
    level = [0] * g.n
    for v in topo.order.tolist():
        p = pred[v]
        if p:
            level[v] = 1 + max(level[u] for u in p)
    return np.array(level, dtype=np.int64)
