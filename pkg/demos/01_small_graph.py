"""
Indexing a five-node graph
==========================

Walks through every stage of an index build on a tiny DAG so that the
intermediate structures can be inspected by eye.
"""

from ferrari.generators import EXAMPLE_EDGES, example_graph
from ferrari.indexer import BuildParams, build_index, build_labels, prepare

print(EXAMPLE_EDGES)
g = example_graph()
names = list(g.ids) + ["<root>"]

# condensation, virtual root, topological order and the spanning tree
pipe = prepare(g)
for v in range(pipe.augmented.n):
    parent = pipe.tree.parent[v]
    print(f"{names[v]:>6}  tau={pipe.topo.tau[v]}  level={pipe.level[v]}  "
          f"tree parent={names[parent] if parent >= 0 else '-':>6}  "
          f"tree interval={pipe.post.tree_interval(v)}")

# with two intervals per node nothing has to be approximated...
for k in (2, 1):
    labels = build_labels(pipe, BuildParams(k=k))
    print(f"\nk = {k}")
    for v, s in enumerate(labels):
        print(f"{names[v]:>6}  {s}")

# ...with one, some labels become approximate and queries may have to search
idx = build_index(g, k=1, s=0)
for u, v in [("a", "e"), ("b", "e"), ("d", "c"), ("e", "a")]:
    ans, stats = idx.query(u, v)
    print(f"{u} -> {v}: {ans}  (expanded {stats.expanded}, probes {stats.probes})")
