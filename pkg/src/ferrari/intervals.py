"""Interval sets with exact/approximate flags and their k-interval covers.

A label is a tuple of :class:`Interval` sorted by ``begin`` with at least one
uncovered id between consecutive intervals. Exact intervals contain only ids
that are truly reachable; approximate ones may contain false positives.
"""

from __future__ import annotations

import heapq
from typing import Iterable, NamedTuple, Sequence


class Interval(NamedTuple):
    begin: int
    end: int
    exact: bool = True

    def __len__(self) -> int:  # type: ignore[override]
        return self.end - self.begin + 1

    def __repr__(self) -> str:
        return f"[{self.begin},{self.end}]{'e' if self.exact else 'a'}"


LabelSet = tuple  # tuple[Interval, ...]
GapSet = tuple  # tuple[tuple[int, int], ...]


def label(*spans) -> LabelSet:
    """Shorthand: ``label((1, 2), (5, 9, False))``."""
    return tuple(Interval(*s) for s in spans)


def check_label_set(s: Sequence[Interval]) -> None:
    """Raise ``ValueError`` unless ``s`` is sorted, non-overlapping and non-adjacent."""
    prev_end = None
    for iv in s:
        if iv.begin > iv.end:
            raise ValueError(f"empty interval {iv!r}")
        if prev_end is not None and prev_end + 1 >= iv.begin:
            raise ValueError(f"interval {iv!r} overlaps or touches its predecessor")
        prev_end = iv.end


def normalize(intervals: Iterable[Interval]) -> LabelSet:
    """Union of intervals given in ascending ``begin`` order.

    Overlapping or adjacent inputs fuse into one interval, which is exact only
    if the exact inputs alone cover it without holes.
    """
    out = []
    it = iter(intervals)
    first = next(it, None)
    if first is None:
        return ()
    rb, re, x = first
    ex = re if x else rb - 1
    for b, e, x in it:
        if b > re + 1:
            out.append(Interval(rb, re, ex >= re))
            rb, re = b, e
            ex = e if x else b - 1
            continue
        if e > re:
            re = e
        if x and b <= ex + 1 and e > ex:
            ex = e
    out.append(Interval(rb, re, ex >= re))
    return tuple(out)


def merge_interval_sets(a: LabelSet, b: LabelSet) -> LabelSet:
    """Element-wise union of two labels."""
    return normalize(heapq.merge(a, b))


def merge_many(sets: Iterable[LabelSet]) -> LabelSet:
    pool = [iv for s in sets for iv in s]
    pool.sort()
    return normalize(pool)


def cover_cost(s: Iterable[Interval]) -> int:
    """Number of ids lying inside approximate intervals."""
    return sum(iv.end - iv.begin + 1 for iv in s if not iv.exact)


def gaps(s: LabelSet) -> GapSet:
    return tuple((s[i].end + 1, s[i + 1].begin - 1) for i in range(len(s) - 1))


def from_gaps(first: int, last: int, gap_set: GapSet, exact: Sequence[bool] | None = None) -> LabelSet:
    """Rebuild a label from its outer boundary and gaps (inverse of :func:`gaps`)."""
    begins = [first] + [g[1] + 1 for g in gap_set]
    ends = [g[0] - 1 for g in gap_set] + [last]
    if exact is None:
        exact = [True] * len(begins)
    return tuple(Interval(b, e, bool(x)) for b, e, x in zip(begins, ends, exact))


def induced_cover(s: LabelSet, kept: Iterable[int]) -> LabelSet:
    """Merge every pair of neighbours whose gap index is not in ``kept``.

    Gap ``i`` sits between ``s[i]`` and ``s[i + 1]``. Merged runs become
    approximate; a run of one interval keeps its flag.
    """
    cuts = sorted(set(kept))
    out = []
    start = 0
    for c in cuts + [len(s) - 1]:
        out.append(_run(s, start, c))
        start = c + 1
    return tuple(out)


def _run(s: LabelSet, i: int, j: int) -> Interval:
    if i == j:
        return s[i]
    return Interval(s[i].begin, s[j].end, False)


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")


def optimal_k_cover(s: LabelSet, k: int) -> LabelSet:
    """Cover of at most ``k`` intervals with the fewest ids in approximate intervals.

    ``best[g][j]`` is the cheapest cover of the first ``j`` intervals by at most
    ``g`` runs. The last run either is ``s[j-1]`` alone or spans ``s[i-1..j-1]``
    with cost ``end_j - begin_i + 1``; the latter is minimised with a running
    minimum of ``best[g-1][i-1] - begin_i``, giving O(kN) time.
    """
    _check_k(k)
    n = len(s)
    if n <= k:
        return tuple(s)
    inf = float("inf")
    begins = [iv.begin for iv in s]
    ends = [iv.end for iv in s]
    alone = [0 if iv.exact else iv.end - iv.begin + 1 for iv in s]
    prev = [0] + [inf] * n
    # choice[g][j]: start index (1-based) of the last run in the best cover
    choice = [[0] * (n + 1) for _ in range(k + 1)]
    for g in range(1, k + 1):
        cur = [0] + [inf] * n
        ch = choice[g]
        run_min = inf
        run_arg = 0
        for j in range(1, n + 1):
            if j > 1:
                cand = prev[j - 2] - begins[j - 2]
                if cand < run_min:
                    run_min, run_arg = cand, j - 1
            single = prev[j - 1] + alone[j - 1]
            spanned = run_min + ends[j - 1] + 1
            if single <= spanned:
                cur[j], ch[j] = single, j
            else:
                cur[j], ch[j] = spanned, run_arg
        prev = cur
    out = []
    j, g = n, k
    while j > 0:
        i = choice[g][j]
        out.append(_run(s, i - 1, j - 1))
        j, g = i - 1, g - 1
    return tuple(reversed(out))


def greedy_k_cover(s: LabelSet, k: int) -> LabelSet:
    """Keep up to ``k - 1`` gaps, each time the one that saves the most cost.

    Keeping gap ``i`` inside a merged run saves the gap length, plus the length
    of either neighbour that becomes a lone exact interval. Only the gains of
    the two adjacent gaps change after a pick, so stale heap entries are
    detected by a version stamp. Ties go to the lower gap index.
    """
    _check_k(k)
    n = len(s)
    if n <= k:
        return tuple(s)
    kept = [False] * (n - 1)
    version = [0] * (n - 1)

    def gain(i: int) -> int:
        g = s[i + 1].begin - s[i].end - 1
        if s[i].exact and (i == 0 or kept[i - 1]):
            g += s[i].end - s[i].begin + 1
        if s[i + 1].exact and (i + 1 == n - 1 or kept[i + 1]):
            g += s[i + 1].end - s[i + 1].begin + 1
        return g

    heap = [(-gain(i), i, 0) for i in range(n - 1)]
    heapq.heapify(heap)
    picked = 0
    while picked < k - 1 and heap:
        _, i, ver = heapq.heappop(heap)
        if kept[i] or ver != version[i]:
            continue
        kept[i] = True
        picked += 1
        for j in (i - 1, i + 1):
            if 0 <= j < n - 1 and not kept[j]:
                version[j] += 1
                heapq.heappush(heap, (-gain(j), j, version[j]))
    return induced_cover(s, (i for i in range(n - 1) if kept[i]))


COVERS = {"greedy": greedy_k_cover, "dp": optimal_k_cover}
