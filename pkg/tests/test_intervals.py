import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ferrari.intervals import (Interval, check_label_set, cover_cost, from_gaps, gaps,
                               greedy_k_cover, label, merge_interval_sets, merge_many,
                               optimal_k_cover)


def elements(s):
    return {i for iv in s for i in range(iv.begin, iv.end + 1)}


def exact_elements(s):
    return {i for iv in s if iv.exact for i in range(iv.begin, iv.end + 1)}


def brute_force_cost(s, k):
    """Cheapest cover over every choice of at most k-1 preserved gaps."""
    n = len(s)
    best = None
    for r in range(0, min(k - 1, n - 1) + 1):
        for kept in itertools.combinations(range(n - 1), r):
            cost, start = 0, 0
            for cut in list(kept) + [n - 1]:
                if start == cut:
                    cost += 0 if s[start].exact else s[start].end - s[start].begin + 1
                else:
                    cost += s[cut].end - s[start].begin + 1
                start = cut + 1
            best = cost if best is None else min(best, cost)
    return best


@st.composite
def label_sets(draw, max_n=12, max_id=64):
    n = draw(st.integers(1, max_n))
    pts = sorted(draw(st.sets(st.integers(1, max_id), min_size=2 * n, max_size=2 * n)))
    out = []
    for i in range(n):
        b, e = pts[2 * i], pts[2 * i + 1]
        if out and out[-1].end + 1 >= b:
            continue
        out.append(Interval(b, e, draw(st.booleans())))
    return tuple(out)


def test_merge_examples():
    assert merge_interval_sets(label((1, 2)), label((1, 1))) == label((1, 2))
    assert merge_interval_sets(label((3, 3)), label((1, 1))) == label((1, 1), (3, 3))
    assert merge_interval_sets(label((1, 3, False)), label((3, 5))) == label((1, 5, False))


def test_merge_exactness_rules():
    # adjacent exacts fuse into one exact interval
    assert merge_interval_sets(label((1, 2)), label((3, 4))) == label((1, 4))
    # exact subsumes approximate
    assert merge_interval_sets(label((1, 9)), label((3, 4, False))) == label((1, 9))
    # approximate filler between two exacts taints the whole region
    assert merge_interval_sets(label((1, 2), (6, 7)), label((3, 5, False))) == label((1, 7, False))
    assert merge_interval_sets((), label((2, 3))) == label((2, 3))


@settings(max_examples=300, deadline=None)
@given(label_sets(), label_sets())
def test_merge_against_set_oracle(a, b):
    m = merge_interval_sets(a, b)
    check_label_set(m)
    assert elements(m) == elements(a) | elements(b)
    assert exact_elements(m) <= exact_elements(a) | exact_elements(b)
    # an interval fully covered by exact inputs stays exact
    for iv in m:
        ids = set(range(iv.begin, iv.end + 1))
        assert iv.exact == (ids <= exact_elements(a) | exact_elements(b))
    assert m == merge_many([a, b]) == merge_interval_sets(b, a)


def test_cover_cost_examples():
    assert cover_cost(label((1, 1), (3, 3))) == 0
    assert cover_cost(label((1, 3, False), (5, 5))) == 3
    assert cover_cost(label((1, 5, False))) == 5


def test_gaps_examples():
    assert gaps(label((1, 1), (3, 3))) == ((2, 2),)
    assert gaps(label((1, 2), (5, 9), (12, 12))) == ((3, 4), (10, 11))
    assert gaps(label((4, 8))) == ()


@settings(max_examples=200, deadline=None)
@given(label_sets())
def test_gaps_round_trip(s):
    g = gaps(s)
    assert len(g) == len(s) - 1
    assert all(lo <= hi for lo, hi in g)
    assert from_gaps(s[0].begin, s[-1].end, g, [iv.exact for iv in s]) == s


def test_optimal_cover_examples():
    s = label((1, 1), (3, 3))
    assert optimal_k_cover(s, 2) == s
    assert optimal_k_cover(s, 1) == label((1, 3, False))
    s = label((1, 2), (5, 9), (12, 12))
    best = optimal_k_cover(s, 2)
    assert best == label((1, 2), (5, 12, False))
    assert cover_cost(best) == 8
    assert cover_cost(label((1, 9, False), (12, 12))) == 9


def test_greedy_cover_examples():
    s = label((1, 2), (5, 9), (12, 12))
    assert greedy_k_cover(s, 3) == s
    assert greedy_k_cover(s, 9) == s
    assert greedy_k_cover(label((1, 1), (3, 3)), 1) == label((1, 3, False))
    assert greedy_k_cover(s, 2) == label((1, 2), (5, 12, False))


@pytest.mark.parametrize("fn", [optimal_k_cover, greedy_k_cover])
def test_cover_rejects_bad_k(fn):
    with pytest.raises(ValueError):
        fn(label((1, 1)), 0)


def test_greedy_can_be_suboptimal():
    # greedy keeps the widest gap [9,10] first and ends up merging the exact [15,19]
    s = label((3, 8, False), (11, 13), (15, 19), (21, 24, False))
    assert greedy_k_cover(s, 3) == label((3, 8, False), (11, 13), (15, 24, False))
    assert optimal_k_cover(s, 3) == label((3, 13, False), (15, 19), (21, 24, False))
    assert cover_cost(greedy_k_cover(s, 3)) == 16
    assert cover_cost(optimal_k_cover(s, 3)) == 15


def _check_cover(s, c, k):
    check_label_set(c)
    assert len(c) <= k
    assert elements(c) >= elements(s)
    originals = set(s)
    for iv in c:
        if iv not in originals:
            assert not iv.exact


@settings(max_examples=400, deadline=None)
@given(label_sets(), st.integers(1, 6))
def test_optimal_cover_matches_brute_force(s, k):
    c = optimal_k_cover(s, k)
    _check_cover(s, c, k)
    assert cover_cost(c) == brute_force_cost(s, k)


@settings(max_examples=300, deadline=None)
@given(label_sets(), st.integers(1, 6))
def test_greedy_cover_valid_and_not_better_than_optimal(s, k):
    c = greedy_k_cover(s, k)
    _check_cover(s, c, k)
    assert cover_cost(c) >= cover_cost(optimal_k_cover(s, k))


@settings(max_examples=200, deadline=None)
@given(label_sets(), st.integers(1, 11))
def test_optimal_cost_monotone_in_k(s, k):
    assert cover_cost(optimal_k_cover(s, k + 1)) <= cover_cost(optimal_k_cover(s, k))
