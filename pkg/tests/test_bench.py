import io
import time

import pytest

from conftest import closure
from ferrari.bench import (BenchReport, WorkloadError, bench_graph, format_table,
                           gen_positive_workload, gen_random_workload, read_pairs, run_bench,
                           write_csv, write_pairs, Workload, CSV_COLUMNS)
from ferrari.generators import EXAMPLE_EDGES, chain, example_graph, random_dag
from ferrari.graph import Graph
from ferrari.indexer import BuildParams


def test_random_workload_deterministic():
    g = Graph.from_edges(5, [(0, 1)])
    w1 = gen_random_workload(g, 3, 7)
    assert len(w1) == 3 and w1.kind == "random"
    assert w1.pairs == gen_random_workload(g, 3, 7).pairs
    assert all(0 <= u < 5 and 0 <= v < 5 for u, v in w1.pairs)


def test_random_workload_errors():
    with pytest.raises(WorkloadError):
        gen_random_workload(Graph.from_edges(0, []), 3, 1)
    with pytest.raises(WorkloadError):
        gen_random_workload(chain(3), 0, 1)


def test_random_workload_speed():
    g = random_dag(10_000, 50_000, seed=3)
    t0 = time.perf_counter()
    w = gen_random_workload(g, 100_000, 1)
    assert len(w) == 100_000
    assert time.perf_counter() - t0 < 1.0


def test_positive_workload_chain():
    w = gen_positive_workload(chain(3), 50, 2)
    assert set(w.pairs) <= {(0, 1), (0, 2), (1, 2)}
    assert w.kind == "positive"


def test_positive_workload_skips_isolated_source():
    g = Graph.from_edges(4, [(0, 1), (1, 2)])  # node 3 isolated
    w = gen_positive_workload(g, 200, 5)
    assert all(u != 3 and v != 3 for u, v in w.pairs)


def test_positive_workload_all_reachable():
    g = random_dag(400, 1200, seed=8)
    r = closure(g)
    w = gen_positive_workload(g, 1000, 4)
    assert len(w) == 1000 and all(r[u, v] and u != v for u, v in w.pairs)


def test_positive_workload_needs_an_edge():
    with pytest.raises(WorkloadError):
        gen_positive_workload(Graph.from_edges(3, []), 1, 0, max_failures=50)


def test_positive_workload_external_ids():
    w = gen_positive_workload(example_graph(), 20, 1)
    assert all(isinstance(u, str) for pair in w.pairs for u in pair)


def test_pairs_round_trip():
    w = Workload([(1, 2), (3, 4)], "positive")
    buf = io.StringIO()
    write_pairs(w, buf)
    back = read_pairs(io.StringIO(buf.getvalue()))
    assert back.pairs == w.pairs and back.kind == "positive"


def example_positive_pairs():
    g = example_graph()
    r = closure(g)
    return [(g.ids[u], g.ids[v]) for u in range(g.n) for v in range(g.n) if u != v and r[u, v]]


def test_bench_example_positives():
    pairs = example_positive_pairs()
    # a and b reach c, d, e; c and d reach e
    assert len(pairs) == 8
    rep = bench_graph(example_graph(), BuildParams(k=2), Workload(pairs, "positive"), "example")
    assert rep.positives == 8 and rep.queries == 8
    assert rep.query_total_ms >= 0 and rep.index_bytes > 0
    assert rep.stats.expanded >= 0


def test_bench_empty_workload():
    rep = bench_graph(example_graph(), BuildParams(), Workload([], "random"))
    assert rep.queries == 0 and rep.query_total_ms == 0.0 and rep.mean_us == 0.0


def test_run_bench_sweep_and_reports(tmp_path):
    path = tmp_path / "g.txt"
    g = random_dag(300, 1200, seed=2)
    path.write_text("".join(f"{u} {v}\n" for u, v in g.edges().tolist()))
    w = gen_random_workload(g, 500, 1)
    reps = run_bench(path, BuildParams(s=8), w, sweep_k=[1, 2, 5], workers=2)
    assert [r.params.k for r in reps] == [1, 2, 5]
    counts = [r.interval_count for r in reps]
    assert counts == sorted(counts)
    assert all(r.interval_count <= r.params.k * 300 for r in reps)
    assert all(len(r.shard_ms) == 2 for r in reps)
    assert len({r.positives for r in reps}) == 1
    table = format_table(reps)
    assert len(table.splitlines()) == 4 and "median_us" in table
    buf = io.StringIO()
    write_csv(reps, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0].split(",") == CSV_COLUMNS and len(lines) == 4


def test_report_row_columns():
    rep = BenchReport("d", BuildParams(), 1.0, 10, 5, 0, "random", 0.0, 0.0, 0.0)
    assert list(rep.row()) == CSV_COLUMNS
