"""
Index budget versus query effort
================================

Builds local and global indexes over a random DAG for several values of k
and runs the same random and positive workloads against each, comparing
against plain DFS.
"""

import numpy as np

from ferrari.bench import bench_graph, format_table, gen_positive_workload, gen_random_workload
from ferrari.generators import random_dag
from ferrari.indexer import BuildParams
from ferrari.query import dfs_search

g = random_dag(10_000, 50_000, seed=1)
print(g)

random_w = gen_random_workload(g, 20_000, rng_seed=1)
positive_w = gen_positive_workload(g, 5_000, rng_seed=1)

reports = []
for mode in ("local", "global"):
    for k in (1, 2, 5):
        for w in (random_w, positive_w):
            reports.append(bench_graph(g, BuildParams(k=k, mode=mode), w, "random-dag"))
print(format_table(reports))

# the unindexed baseline visits far more nodes
succ = g.out_lists()
for w in (random_w, positive_w):
    visited = np.array([dfs_search(succ, u, v)[1] for u, v in w.pairs])
    print(f"DFS on {w.kind} workload: {visited.sum()} nodes visited, mean {visited.mean():.0f}")
