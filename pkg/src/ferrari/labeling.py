"""Tree cover selection and post-order numbering of the spanning tree."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, TopoOrder


@dataclass(frozen=True, eq=False)
class TreeCover:
    """Spanning tree of a rooted DAG; ``parent[v] == -1`` marks the root."""

    parent: np.ndarray
    children: list[list[int]]

    @property
    def root(self) -> int:
        return int(np.flatnonzero(self.parent == -1)[0])

    @classmethod
    def from_parents(cls, parent) -> "TreeCover":
        parent = np.asarray(parent, dtype=np.int64)
        if (parent == -1).sum() != 1:
            raise ValueError("tree cover needs exactly one root")
        children: list[list[int]] = [[] for _ in range(len(parent))]
        for v, p in enumerate(parent.tolist()):
            if p >= 0:
                children[p].append(v)
        return cls(parent, children)


def tree_cover(g: Graph, topo: TopoOrder) -> TreeCover:
    """Pick, for every node, the predecessor with the highest topological rank.

    The chosen parent has the most potential ancestors of its own, so the tree
    edge tends to encode many reachability pairs.
    """
    tau = topo.tau
    parent = np.full(g.n, -1, dtype=np.int64)
    roots = 0
    for v in topo.order[::-1].tolist():
        preds = g.predecessors(v)
        if len(preds) == 0:
            roots += 1
            if roots > 1:
                raise ValueError(f"node {v} has no predecessor; graph is not root-augmented")
            continue
        parent[v] = preds[np.argmax(tau[preds])]
    return TreeCover.from_parents(parent)


@dataclass(frozen=True, eq=False)
class PostOrder:
    """Post-order ids ``pi`` (1-based) and the smallest id in each subtree.

    The tree interval of ``v`` is ``[subtree_min[v], pi[v]]``.
    """

    pi: np.ndarray
    subtree_min: np.ndarray

    def tree_interval(self, v: int) -> tuple[int, int]:
        return int(self.subtree_min[v]), int(self.pi[v])


def assign_post_order(t: TreeCover) -> PostOrder:
    """Number nodes children-first with an explicit-stack DFS (children by ascending id)."""
    n = len(t.parent)
    pi = [0] * n
    low = [0] * n
    children = [sorted(c) for c in t.children]
    counter = 0
    stack = [(t.root, 0)]
    while stack:
        v, i = stack[-1]
        kids = children[v]
        if i < len(kids):
            stack[-1] = (v, i + 1)
            stack.append((kids[i], 0))
            continue
        stack.pop()
        counter += 1
        pi[v] = counter
        low[v] = low[kids[0]] if kids else counter
    if counter != n:
        raise ValueError("tree cover does not span every node")
    return PostOrder(np.array(pi, dtype=np.int64), np.array(low, dtype=np.int64))
