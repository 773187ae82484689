"""Index construction: interval propagation under a local or global budget, seed labels."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, SccMapping, TopoOrder, augment_root, condense, topological_levels, topological_order
from .intervals import COVERS, Interval, LabelSet, normalize
from .labeling import PostOrder, TreeCover, assign_post_order, tree_cover

MAX_SEEDS = 64


@dataclass(frozen=True)
class BuildParams:
    k: int = 2
    mode: str = "local"  # "local" (Ferrari-L) or "global" (Ferrari-G)
    c: int = 4
    s: int = 32
    cover: str = "greedy"  # "greedy" or "dp"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.c < 1:
            raise ValueError("c must be >= 1")
        if not 0 <= self.s <= MAX_SEEDS:
            raise ValueError(f"seed count must be in 0..{MAX_SEEDS}")
        if self.mode not in ("local", "global"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.cover not in COVERS:
            raise ValueError(f"unknown cover algorithm {self.cover!r}")


def _propagate(dag: Graph, post: PostOrder, topo: TopoOrder, v: int,
               labels: list, succ: list[list[int]]) -> LabelSet:
    lo, hi = int(post.subtree_min[v]), int(post.pi[v])
    pool = [Interval(lo, hi, True)]
    for w in succ[v]:
        pool.extend(labels[w])
    pool.sort()
    return normalize(pool)


def build_ferrari_local(dag: Graph, post: PostOrder, topo: TopoOrder, k: int,
                        cover: str = "greedy") -> list[LabelSet]:
    """Labels with at most ``k`` intervals per node, built in reverse topological order."""
    fn = COVERS[cover]
    succ = dag.out_lists()
    labels: list = [None] * dag.n
    for v in topo.order[::-1].tolist():
        labels[v] = fn(_propagate(dag, post, topo, v, labels, succ), k)
    return labels


def build_ferrari_global(dag: Graph, post: PostOrder, topo: TopoOrder, k: int, c: int = 4,
                         cover: str = "greedy", root: int | None = None) -> list[LabelSet]:
    """Labels whose total size stays within ``k`` per node overall.

    Each node first gets up to ``c * k`` intervals. Nodes holding more than
    ``k`` wait on a min-heap keyed by out-degree; whenever the running total
    exceeds the budget they are shrunk to ``k`` intervals, lowest degree first.
    ``root`` (the virtual root) is labelled but not charged against the budget.
    """
    fn = COVERS[cover]
    succ = dag.out_lists()
    budget = k * (dag.n - (root is not None))
    labels: list = [None] * dag.n
    heap: list[tuple[int, int]] = []
    total = 0
    for v in topo.order[::-1].tolist():
        labels[v] = fn(_propagate(dag, post, topo, v, labels, succ), c * k)
        if v == root:
            continue
        size = len(labels[v])
        total += size
        if size > k:
            heapq.heappush(heap, (len(succ[v]), v))
        while total > budget and heap:
            _, w = heapq.heappop(heap)
            old = len(labels[w])
            if old <= k:
                continue
            labels[w] = fn(labels[w], k)
            total -= old - len(labels[w])
    return labels


@dataclass(frozen=True, eq=False)
class SeedSets:
    """Seed nodes and, per node, bitmasks of seeds it reaches / is reached by."""

    seeds: np.ndarray
    s_plus: np.ndarray  # uint64
    s_minus: np.ndarray  # uint64


def select_seeds(dag: Graph, s: int) -> np.ndarray:
    """The ``s`` nodes of largest total degree (at least 1), ties by id."""
    deg = dag.out_degree() + dag.in_degree()
    cand = np.flatnonzero(deg >= 1)
    order = np.lexsort((cand, -deg[cand]))
    return cand[order[:s]]


def _seed_propagate(n: int, seeds, forward: list[list[int]], backward: list[list[int]]) -> list[int]:
    # FIFO from nodes with no `forward` neighbours; a node is queued once all of them are done
    mask = [0] * n
    for i, sd in enumerate(seeds):
        mask[sd] |= 1 << i
    pending = [len(f) for f in forward]
    queue = deque(v for v in range(n) if pending[v] == 0)
    while queue:
        v = queue.popleft()
        mv = mask[v]
        for u in backward[v]:
            mask[u] |= mv
            pending[u] -= 1
            if pending[u] == 0:
                queue.append(u)
    return mask


def compute_seed_sets(dag: Graph, s: int, seeds=None) -> SeedSets:
    if seeds is None:
        seeds = select_seeds(dag, s)
    seeds = np.asarray(seeds, dtype=np.int64)
    if len(seeds) > MAX_SEEDS:
        raise ValueError(f"at most {MAX_SEEDS} seeds supported")
    out, inn = dag.out_lists(), dag.in_lists()
    plus = _seed_propagate(dag.n, seeds.tolist(), out, inn)
    minus = _seed_propagate(dag.n, seeds.tolist(), inn, out)
    return SeedSets(seeds, np.array(plus, dtype=np.uint64), np.array(minus, dtype=np.uint64))


@dataclass(eq=False)
class ReachIndex:
    """Everything needed to answer reachability queries on the original graph.

    Per-node arrays (``tau``, ``level``, ``pi``, ``labels``, seed masks) are
    indexed by condensed node id; the virtual root is not part of them.
    """

    dag: Graph
    comp_of: np.ndarray
    ext_ids: tuple | None
    n_original: int
    m_original: int
    tau: np.ndarray
    level: np.ndarray
    pi: np.ndarray
    labels: list
    seeds: SeedSets
    params: BuildParams
    root_label: LabelSet = ()
    _lookup: dict | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.dag.n

    def interval_count(self) -> int:
        return sum(len(s) for s in self.labels)

    def internal_id(self, external) -> int:
        """Original-graph node id for an external id; ``KeyError`` if unknown."""
        if self.ext_ids is None:
            if isinstance(external, (int, np.integer)) and 0 <= external < self.n_original:
                return int(external)
            raise KeyError(external)
        if self._lookup is None:
            self._lookup = {x: i for i, x in enumerate(self.ext_ids)}
        try:
            return self._lookup[external]
        except KeyError:
            if isinstance(external, str):
                try:
                    return self._lookup[int(external)]
                except (ValueError, KeyError):
                    pass
            raise

    def component(self, external) -> int:
        return int(self.comp_of[self.internal_id(external)])

    def query(self, u, v):
        """Reachability between external ids; returns ``(answer, QueryStats)``."""
        from .query import query
        return query(self, u, v)

    def reachable(self, u, v) -> bool:
        return self.query(u, v)[0]


@dataclass(frozen=True, eq=False)
class Pipeline:
    """Intermediate structures of a build, kept for inspection and tests."""

    condensed: Graph
    scc: SccMapping
    augmented: Graph
    root: int
    topo: TopoOrder
    level: np.ndarray
    tree: TreeCover
    post: PostOrder


def prepare(g: Graph) -> Pipeline:
    dag, scc = condense(g)
    aug = augment_root(dag)
    topo = topological_order(aug)
    level = topological_levels(aug, topo)
    tree = tree_cover(aug, topo)
    post = assign_post_order(tree)
    return Pipeline(dag, scc, aug, dag.n, topo, level, tree, post)


def build_labels(pipe: Pipeline, params: BuildParams) -> list[LabelSet]:
    if params.mode == "local":
        return build_ferrari_local(pipe.augmented, pipe.post, pipe.topo, params.k, params.cover)
    return build_ferrari_global(pipe.augmented, pipe.post, pipe.topo, params.k, params.c,
                                params.cover, root=pipe.root)


def build_index(g: Graph, params: BuildParams | None = None, **kw) -> ReachIndex:
    """Condense, augment, order, label and seed ``g`` into a :class:`ReachIndex`."""
    if params is None:
        params = BuildParams(**kw)
    elif kw:
        raise TypeError("pass either params or keyword arguments")
    pipe = prepare(g)
    labels = build_labels(pipe, params)
    seeds = compute_seed_sets(pipe.condensed, params.s)
    root = pipe.root
    # the virtual root sits at the front of the order; dropping it keeps tau/level monotone
    return ReachIndex(
        dag=pipe.condensed,
        comp_of=pipe.scc.comp_of,
        ext_ids=g.ids,
        n_original=g.n,
        m_original=g.m,
        tau=pipe.topo.tau[:root].copy(),
        level=pipe.level[:root].copy(),
        pi=pipe.post.pi[:root].copy(),
        labels=labels[:root],
        seeds=seeds,
        params=params,
        root_label=labels[root],
    )
