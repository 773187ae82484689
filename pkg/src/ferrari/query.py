"""Reachability queries over a :class:`ReachIndex`, plus plain graph-search baselines."""

from __future__ import annotations

import enum
import threading
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, fields

from .graph import Graph
from .indexer import ReachIndex
from .intervals import LabelSet


class LookupOutcome(enum.Enum):
    OUTSIDE = 0
    EXACT_HIT = 1
    APPROX_HIT = 2


def interval_lookup(label: LabelSet, pid: int) -> LookupOutcome:
    """Locate a post-order id within a sorted label by binary search."""
    i = bisect_right(label, pid, key=lambda iv: iv.begin) - 1
    if i < 0 or label[i].end < pid:
        return LookupOutcome.OUTSIDE
    return LookupOutcome.EXACT_HIT if label[i].exact else LookupOutcome.APPROX_HIT


@dataclass
class QueryStats:
    expanded: int = 0
    probes: int = 0
    pruned_tau: int = 0
    pruned_level: int = 0
    pruned_seed: int = 0
    pruned_interval: int = 0
    answer: bool = False

    def __iadd__(self, other: "QueryStats") -> "QueryStats":
        for f in fields(self):
            if f.name != "answer":
                setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self


class _Tables:
    """Flat Python lists derived from an index; shared by all engines on it."""

    def __init__(self, idx: ReachIndex):
        self.succ = idx.dag.out_lists()
        self.tau = idx.tau.tolist()
        self.level = idx.level.tolist()
        self.pi = idx.pi.tolist()
        self.plus = [int(x) for x in idx.seeds.s_plus.tolist()]
        self.minus = [int(x) for x in idx.seeds.s_minus.tolist()]
        self.begins = [[iv.begin for iv in s] for s in idx.labels]
        self.ends = [[iv.end for iv in s] for s in idx.labels]
        self.exact = [[iv.exact for iv in s] for s in idx.labels]
        self.comp_of = idx.comp_of.tolist()


def _tables(idx: ReachIndex) -> _Tables:
    t = idx.__dict__.get("_tables")
    if t is None:
        t = _Tables(idx)
        idx.__dict__["_tables"] = t
    return t


class QueryEngine:
    """Per-thread query scratch (DFS stack and epoch-stamped visited marks).

    ``trace(event, node, target)`` is called, when given, on every pruning
    or shortcut decision; events are ``seed_pos``, ``seed_neg``, ``tau``,
    ``level``, ``outside`` and ``exact``.
    """

    def __init__(self, idx: ReachIndex, forward_seed_rule: bool = True):
        self.idx = idx
        self.t = _tables(idx)
        self.forward_seed_rule = forward_seed_rule
        self.stamp = [0] * idx.n
        self.epoch = 0

    def reach(self, s: int, t: int, stats: QueryStats | None = None, trace=None) -> bool:
        """Reachability between condensed node ids."""
        if s == t:
            return True
        tb = self.t
        succ, tau, level = tb.succ, tb.tau, tb.level
        plus, minus = tb.plus, tb.minus
        begins, ends, exact = tb.begins, tb.ends, tb.exact
        pt, tau_t, lvl_t = tb.pi[t], tau[t], level[t]
        minus_t, plus_t = minus[t], plus[t]
        not_minus_t = ~minus_t
        fwd = self.forward_seed_rule
        stamp = self.stamp
        self.epoch += 1
        epoch = self.epoch
        stamp[s] = epoch
        stack = [s]
        expanded = probes = p_tau = p_lvl = p_seed = p_ivl = 0
        answer = False
        while stack:
            x = stack.pop()
            if plus[x] & minus_t:
                if trace:
                    trace("seed_pos", x, t)
                answer = True
                break
            if (minus[x] & not_minus_t) or (fwd and plus_t & ~plus[x]):
                if trace:
                    trace("seed_neg", x, t)
                p_seed += 1
                continue
            if tau[x] >= tau_t:
                if trace:
                    trace("tau", x, t)
                p_tau += 1
                continue
            if level[x] >= lvl_t:
                if trace:
                    trace("level", x, t)
                p_lvl += 1
                continue
            probes += 1
            bx = begins[x]
            i = bisect_right(bx, pt) - 1
            if i < 0 or ends[x][i] < pt:
                if trace:
                    trace("outside", x, t)
                p_ivl += 1
                continue
            if exact[x][i]:
                if trace:
                    trace("exact", x, t)
                answer = True
                break
            expanded += 1
            for w in succ[x]:
                if w == t:
                    answer = True
                    break
                if stamp[w] != epoch:
                    stamp[w] = epoch
                    stack.append(w)
            if answer:
                break
        if stats is not None:
            stats.expanded += expanded
            stats.probes += probes
            stats.pruned_tau += p_tau
            stats.pruned_level += p_lvl
            stats.pruned_seed += p_seed
            stats.pruned_interval += p_ivl
            stats.answer = answer
        return answer

    def query(self, u, v, trace=None) -> tuple[bool, QueryStats]:
        idx = self.idx
        cu = self.t.comp_of[idx.internal_id(u)]
        cv = self.t.comp_of[idx.internal_id(v)]
        stats = QueryStats()
        ans = self.reach(cu, cv, stats, trace)
        stats.answer = ans
        return ans, stats


_local = threading.local()


def engine_for(idx: ReachIndex) -> QueryEngine:
    """The calling thread's engine for ``idx`` (created on first use)."""
    cache = getattr(_local, "engines", None)
    if cache is None:
        cache = _local.engines = {}
    eng = cache.get(id(idx))
    if eng is None or eng.idx is not idx:
        eng = cache[id(idx)] = QueryEngine(idx)
    return eng


def query(idx: ReachIndex, u, v) -> tuple[bool, QueryStats]:
    """Does the original graph contain a path from external id ``u`` to ``v``?"""
    return engine_for(idx).query(u, v)


def bfs_search(g: Graph, u: int, v: int) -> tuple[bool, int]:
    """Plain BFS; returns the answer and the number of nodes visited."""
    if u == v:
        return True, 1
    succ = g.succ_lists()
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for w in succ[x]:
            if w == v:
                return True, len(seen) + 1
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False, len(seen)


def bfs_oracle(g: Graph, u: int, v: int) -> bool:
    """Ground-truth reachability between internal ids of ``g``."""
    return bfs_search(g, u, v)[0]


def dfs_search(succ: list[list[int]], u: int, v: int) -> tuple[bool, int]:
    """Unindexed DFS over successor lists; returns the answer and nodes visited."""
    if u == v:
        return True, 1
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for w in succ[x]:
            if w == v:
                return True, len(seen) + 1
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False, len(seen)
