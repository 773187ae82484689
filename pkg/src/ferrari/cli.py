"""Command-line front end: ``ferrari build|query|gen|bench|stats``."""

from __future__ import annotations

import argparse
import sys

from . import bench
from .graph import load_edge_list
from .indexer import BuildParams, build_index
from .serialize import dumps, load_index, save_index


def _load_graph(path):
    with open(path) as f:
        return load_edge_list(f)


def _params(a) -> BuildParams:
    return BuildParams(k=a.k, mode=a.mode, c=a.c, s=a.seeds, cover=a.cover)


def _add_build_args(p):
    p.add_argument("--k", type=int, default=2, help="intervals per node (budget k*n)")
    p.add_argument("--mode", choices=["local", "global"], default="local")
    p.add_argument("--c", type=int, default=4, help="deferred-merge slack for global mode")
    p.add_argument("--seeds", type=int, default=32, help="number of seed nodes (0..64)")
    p.add_argument("--cover", choices=["greedy", "dp"], default="greedy")


def cmd_build(a):
    g = _load_graph(a.graph)
    idx = build_index(g, _params(a))
    save_index(idx, a.out)
    print(f"indexed {g.n} nodes / {g.m} edges -> {idx.n} components, "
          f"{idx.interval_count()} intervals, written to {a.out}")


def _ext(idx, tok):
    if idx.ext_ids is not None and idx.ext_ids and isinstance(idx.ext_ids[0], int):
        return int(tok)
    return tok if idx.ext_ids is not None else int(tok)


def cmd_query(a):
    idx = load_index(a.index)
    if a.pair:
        pairs = [tuple(a.pair)]
    else:
        with open(a.pairs) as f:
            pairs = bench.read_pairs(f).pairs
    for u, v in pairs:
        ans, st = idx.query(_ext(idx, u), _ext(idx, v))
        line = f"{u} {v} {int(ans)}"
        if a.verbose:
            line += f"  expanded={st.expanded} probes={st.probes}"
        print(line)


def cmd_gen(a):
    g = _load_graph(a.graph)
    fn = bench.gen_random_workload if a.kind == "random" else bench.gen_positive_workload
    w = fn(g, a.count, a.seed)
    if a.out == "-":
        bench.write_pairs(w, sys.stdout)
    else:
        with open(a.out, "w") as f:
            bench.write_pairs(w, f)


def cmd_bench(a):
    with open(a.workload) as f:
        w = bench.read_pairs(f)
    sweep = [int(x) for x in a.sweep_k.split(",")] if a.sweep_k else None
    reports = bench.run_bench(a.graph, _params(a), w, sweep, a.workers)
    print(bench.format_table(reports))
    if a.csv:
        with open(a.csv, "w") as f:
            bench.write_csv(reports, f)


def cmd_stats(a):
    idx = load_index(a.index)
    p = idx.params
    sizes = [len(s) for s in idx.labels]
    approx = sum(1 for s in idx.labels for iv in s if not iv.exact)
    print(f"original nodes   {idx.n_original}")
    print(f"original edges   {idx.m_original}")
    print(f"components       {idx.n}")
    print(f"condensed edges  {idx.dag.m}")
    print(f"mode             {p.mode} (k={p.k}, c={p.c}, cover={p.cover})")
    print(f"seeds            {len(idx.seeds.seeds)}")
    print(f"intervals        {sum(sizes)} (budget {p.k * idx.n}, {approx} approximate)")
    print(f"max per node     {max(sizes, default=0)}")
    print(f"index bytes      {len(dumps(idx))}")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ferrari", description="Interval-based reachability index.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index an edge-list file")
    p.add_argument("--graph", required=True)
    _add_build_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer reachability queries from an index file")
    p.add_argument("--index", required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--pairs")
    grp.add_argument("--pair", nargs=2, metavar=("U", "V"))
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("gen", help="generate a query workload")
    p.add_argument("--graph", required=True)
    p.add_argument("--count", type=int, default=100_000)
    p.add_argument("--kind", choices=["random", "positive"], default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time index construction and a query workload")
    p.add_argument("--graph", required=True)
    p.add_argument("--workload", required=True)
    _add_build_args(p)
    p.add_argument("--sweep-k", help="comma-separated k values, one report row each")
    p.add_argument("--csv")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="summarize an index file")
    p.add_argument("--index", required=True)
    p.set_defaults(func=cmd_stats)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        args.func(args)
    except (OSError, ValueError, KeyError) as e:
        print(f"ferrari: error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
