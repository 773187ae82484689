import numpy as np
import pytest

from ferrari.generators import random_dag, random_digraph
from ferrari.graph import Graph


def closure(g: Graph) -> np.ndarray:
    """Reflexive transitive closure by repeated boolean matrix squaring."""
    r = np.eye(g.n, dtype=np.float32)
    e = g.edges()
    r[e[:, 0], e[:, 1]] = 1
    while True:
        nxt = ((r @ r) > 0).astype(np.float32)
        if np.array_equal(nxt, r):
            return r.astype(bool)
        r = nxt


def brute_scc(g: Graph) -> list[set]:
    """Partition by mutual reachability, straight from the closure."""
    r = closure(g)
    mutual = r & r.T
    seen, parts = set(), []
    for v in range(g.n):
        if v not in seen:
            part = set(np.flatnonzero(mutual[v]).tolist())
            seen |= part
            parts.append(part)
    return parts


def make_corpus(count: int = 50, seed: int = 2024, max_n: int = 500) -> list[tuple[str, Graph]]:
    """Random DAGs and cyclic digraphs with n in [1, max_n] and m in [0.5n, 4n]."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        if i < 2:
            n = [1, max_n][i]
        else:
            n = 1 + int((max_n - 1) * rng.random() ** 2)
        density = rng.uniform(0.5, 4.0)
        m = int(round(density * n))
        s = int(rng.integers(1 << 31))
        if i % 2 == 0:
            out.append((f"dag{i}-n{n}-m{m}", random_dag(n, m, s)))
        else:
            out.append((f"cyc{i}-n{n}-m{m}", random_digraph(n, m, s)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return [(name, g, closure(g)) for name, g in make_corpus()]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
