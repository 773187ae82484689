import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ferrari.generators import chain, example_graph, random_tree
from ferrari.graph import Graph, augment_root, condense, topological_order
from ferrari.labeling import TreeCover, assign_post_order, tree_cover


def example_pipeline():
    g = example_graph()
    aug = augment_root(condense(g)[0])
    return g, aug, topological_order(aug)


def test_tree_cover_example():
    g, aug, topo = example_pipeline()
    t = tree_cover(aug, topo)
    name = dict(zip(range(5), g.ids)) | {5: "r"}
    edges = {(name[int(p)], name[v]) for v, p in enumerate(t.parent) if p >= 0}
    assert edges == {("r", "a"), ("r", "b"), ("b", "c"), ("b", "d"), ("d", "e")}


def test_tree_cover_chain_and_diamond():
    aug = augment_root(chain(4))
    t = tree_cover(aug, topological_order(aug))
    assert t.parent.tolist() == [4, 0, 1, 2, -1]
    # r=0 -> {a=1, b=2} -> c=3; tau(a) < tau(b)
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    t = tree_cover(g, topological_order(g))
    assert t.parent[3] == 2


def test_post_order_hand_drawn_tree():
    # ids a0 b1 c2 d3 e4 r5; tree r->a, a->c, a->d, c->e, r->b
    post = assign_post_order(TreeCover.from_parents([5, 5, 0, 0, 2, -1]))
    assert post.pi.tolist() == [4, 5, 2, 3, 1, 6]
    intervals = [post.tree_interval(v) for v in range(6)]
    assert intervals == [(1, 4), (5, 5), (1, 2), (3, 3), (1, 1), (1, 6)]


def test_post_order_of_selected_tree():
    g, aug, topo = example_pipeline()
    post = assign_post_order(tree_cover(aug, topo))
    pi = {x: int(post.pi[g.index_of(x)]) for x in "abcde"}
    assert pi == {"a": 1, "c": 2, "e": 3, "d": 4, "b": 5}
    assert post.pi[5] == 6
    assert post.tree_interval(g.index_of("b")) == (2, 5)


def test_post_order_single_node():
    post = assign_post_order(TreeCover.from_parents([-1]))
    assert post.pi.tolist() == [1] and post.tree_interval(0) == (1, 1)


def test_post_order_deep_path():
    n = 1_000_000
    parent = np.arange(-1, n - 1, dtype=np.int64)
    post = assign_post_order(TreeCover.from_parents(parent))
    assert post.pi[0] == n and post.pi[-1] == 1 and post.subtree_min[0] == 1


def _tree_reach(parent):
    n = len(parent)
    anc = [set() for _ in range(n)]
    for v in range(n):
        u = v
        while u != -1:
            anc[v].add(u)
            u = parent[u]
    return anc


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 500), st.integers(0, 2**31))
def test_tree_interval_is_exact_subtree(n, seed):
    tree = random_tree(n, seed)
    parent = [-1] + [int(tree.predecessors(v)[0]) for v in range(1, n)]
    post = assign_post_order(TreeCover.from_parents(parent))
    assert sorted(post.pi.tolist()) == list(range(1, n + 1))
    anc = _tree_reach(parent)
    lo, pi = post.subtree_min, post.pi
    for u in range(0, n, max(1, n // 40)):
        inside = (lo[u] <= pi) & (pi <= pi[u])
        assert inside.tolist() == [u in anc[v] for v in range(n)]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 80), st.integers(0, 2**31))
def test_tree_cover_spans_augmented_dag(n, seed):
    from ferrari.generators import random_dag
    aug = augment_root(random_dag(n, 2 * n, seed))
    topo = topological_order(aug)
    t = tree_cover(aug, topo)
    edges = set(map(tuple, aug.edges().tolist()))
    tree_edges = {(int(p), v) for v, p in enumerate(t.parent) if p >= 0}
    assert tree_edges <= edges and len(tree_edges) == aug.n - 1
    for v, p in enumerate(t.parent.tolist()):
        if p >= 0:
            assert topo.tau[p] == topo.tau[aug.predecessors(v)].max()
