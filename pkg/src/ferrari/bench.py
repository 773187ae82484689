"""Query workloads, timed benchmark runs and their reports."""

from __future__ import annotations

import csv
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from .graph import Graph, GraphFormatError, load_edge_list
from .indexer import BuildParams, ReachIndex, build_index
from .query import QueryStats, engine_for
from .serialize import dumps

CSV_COLUMNS = ["dataset", "mode", "k", "c", "s", "build_ms", "index_bytes", "intervals",
               "queries", "kind", "total_ms", "mean_us", "median_us", "expanded_total"]


class WorkloadError(ValueError):
    pass


@dataclass
class Workload:
    pairs: list
    kind: str = "random"

    def __len__(self) -> int:
        return len(self.pairs)


def _external(g: Graph, internal: np.ndarray) -> list:
    if g.ids is None:
        return internal.tolist()
    return [g.ids[i] for i in internal.tolist()]


def gen_random_workload(g: Graph, count: int, rng_seed=None) -> Workload:
    """``count`` node pairs drawn uniformly with replacement."""
    if count < 1:
        raise WorkloadError("count must be >= 1")
    if g.n == 0:
        raise WorkloadError("graph has no nodes")
    rng = np.random.default_rng(rng_seed)
    idx = rng.integers(0, g.n, size=(count, 2))
    src, dst = _external(g, idx[:, 0]), _external(g, idx[:, 1])
    return Workload(list(zip(src, dst)), "random")


def gen_positive_workload(g: Graph, count: int, rng_seed=None, bfs_cap: int = 10_000,
                          max_failures: int = 10_000) -> Workload:
    """``count`` reachable pairs.

    A source is drawn uniformly; the target is drawn uniformly from the first
    ``bfs_cap`` nodes it reaches in BFS order. Sources that reach nothing are
    redrawn, up to ``max_failures`` times in a row.
    """
    if count < 1:
        raise WorkloadError("count must be >= 1")
    if g.n == 0:
        raise WorkloadError("graph has no nodes")
    rng = np.random.default_rng(rng_seed)
    adj = csr_matrix((np.ones(g.m, dtype=np.int8), g.out_indices, g.out_indptr), shape=(g.n, g.n))
    has_out = g.out_degree() > 0
    pairs = []
    failures = 0
    while len(pairs) < count:
        u = int(rng.integers(0, g.n))
        reached = breadth_first_order(adj, u, directed=True, return_predecessors=False)[1:bfs_cap + 1] \
            if has_out[u] else ()
        if len(reached) == 0:
            failures += 1
            if failures >= max_failures:
                raise WorkloadError("no reachable pair found; graph may have no edges")
            continue
        failures = 0
        v = int(reached[rng.integers(0, len(reached))])
        pairs.append((u, v))
    arr = np.array(pairs, dtype=np.int64)
    return Workload(list(zip(_external(g, arr[:, 0]), _external(g, arr[:, 1]))), "positive")


def _token(x):
    try:
        return int(x)
    except ValueError:
        return x


def read_pairs(stream: TextIO | Iterable[str], kind: str = "random") -> Workload:
    """Pair-list format: one ``SRC DST`` per line, ``#``/``%`` comments allowed."""
    pairs = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            if line.startswith("# kind:"):
                kind = line.split(":", 1)[1].strip()
            continue
        parts = line.split()
        if len(parts) < 2:
            raise GraphFormatError(f"line {lineno}: expected 'SRC DST'")
        pairs.append((_token(parts[0]), _token(parts[1])))
    return Workload(pairs, kind)


def write_pairs(w: Workload, stream: TextIO) -> None:
    stream.write(f"# kind: {w.kind}\n")
    for u, v in w.pairs:
        stream.write(f"{u} {v}\n")


@dataclass
class BenchReport:
    dataset: str
    params: BuildParams
    build_ms: float
    index_bytes: int
    interval_count: int
    queries: int
    kind: str
    query_total_ms: float
    mean_us: float
    median_us: float
    stats: QueryStats = field(default_factory=QueryStats)
    positives: int = 0
    shard_ms: list = field(default_factory=list)

    def row(self) -> dict:
        p = self.params
        return {"dataset": self.dataset, "mode": p.mode, "k": p.k, "c": p.c, "s": p.s,
                "build_ms": round(self.build_ms, 3), "index_bytes": self.index_bytes,
                "intervals": self.interval_count, "queries": self.queries, "kind": self.kind,
                "total_ms": round(self.query_total_ms, 3), "mean_us": round(self.mean_us, 3),
                "median_us": round(self.median_us, 3), "expanded_total": self.stats.expanded}


def _run_shard(idx: ReachIndex, pairs: Sequence) -> tuple[list[float], QueryStats, int, float]:
    eng = engine_for(idx)
    total = QueryStats()
    lat = []
    pos = 0
    clock = time.perf_counter_ns
    t0 = clock()
    for u, v in pairs:
        a = clock()
        ans, st = eng.query(u, v)
        lat.append((clock() - a) / 1e3)
        total += st
        pos += ans
    return lat, total, pos, (clock() - t0) / 1e6


def run_queries(idx: ReachIndex, workload: Workload, workers: int = 1):
    """Time every query; returns latencies (µs), merged stats, positives, per-shard ms."""
    pairs = workload.pairs
    if workers <= 1 or len(pairs) < 2:
        lat, st, pos, ms = _run_shard(idx, pairs)
        return lat, st, pos, [ms]
    shards = [pairs[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(workers) as ex:
        results = list(ex.map(lambda p: _run_shard(idx, p), shards))
    lat, total, pos = [], QueryStats(), 0
    for l, st, p, _ in results:
        lat.extend(l)
        total += st
        pos += p
    return lat, total, pos, [r[3] for r in results]


def bench_graph(g: Graph, params: BuildParams, workload: Workload, dataset: str = "graph",
                workers: int = 1) -> BenchReport:
    t0 = time.perf_counter_ns()
    idx = build_index(g, params)
    build_ms = (time.perf_counter_ns() - t0) / 1e6
    nbytes = len(dumps(idx))
    t1 = time.perf_counter_ns()
    lat, stats, pos, shard_ms = run_queries(idx, workload, workers)
    total_ms = (time.perf_counter_ns() - t1) / 1e6
    return BenchReport(
        dataset=dataset, params=params, build_ms=build_ms, index_bytes=nbytes,
        interval_count=idx.interval_count(), queries=len(workload), kind=workload.kind,
        query_total_ms=total_ms if lat else 0.0,
        mean_us=statistics.fmean(lat) if lat else 0.0,
        median_us=statistics.median(lat) if lat else 0.0,
        stats=stats, positives=pos, shard_ms=shard_ms)


def run_bench(graph_path, params: BuildParams, workload: Workload,
              sweep_k: Sequence[int] | None = None, workers: int = 1) -> list[BenchReport]:
    """Build and query once per ``k`` (``params.k`` unless a sweep is given)."""
    with open(graph_path) as f:
        g = load_edge_list(f)
    name = Path(graph_path).stem
    ks = list(sweep_k) if sweep_k else [params.k]
    return [bench_graph(g, BuildParams(**{**asdict(params), "k": k}), workload, name, workers)
            for k in ks]


def format_table(reports: Sequence[BenchReport]) -> str:
    rows = [r.row() for r in reports]
    if not rows:
        return ""
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in CSV_COLUMNS}
    lines = ["  ".join(c.rjust(widths[c]) for c in CSV_COLUMNS)]
    lines += ["  ".join(str(r[c]).rjust(widths[c]) for c in CSV_COLUMNS) for r in rows]
    return "\n".join(lines)


def write_csv(reports: Sequence[BenchReport], stream: TextIO) -> None:
    w = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.row())
