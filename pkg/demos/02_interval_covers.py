"""
Greedy versus optimal interval covers
=====================================

A node label must be squeezed into at most k intervals by merging
neighbours; merged intervals become approximate. The dynamic program finds
the cover with the fewest approximate ids, the greedy one is faster. This
script measures how far apart they are on random labels.
"""

import random

import numpy as np

from ferrari.intervals import Interval, cover_cost, greedy_k_cover, optimal_k_cover

rng = random.Random(0)


def random_label(n, span=200):
    pts = sorted(rng.sample(range(1, span), 2 * n))
    return tuple(Interval(pts[2 * i], pts[2 * i + 1], rng.random() < 0.7) for i in range(n)
                 if i == 0 or pts[2 * i] > pts[2 * i - 1] + 1)


s = random_label(8)
print("input     ", s, "cost", cover_cost(s))
for k in (1, 2, 4):
    print(f"k={k} dp    ", optimal_k_cover(s, k), "cost", cover_cost(optimal_k_cover(s, k)))
    print(f"k={k} greedy", greedy_k_cover(s, k), "cost", cover_cost(greedy_k_cover(s, k)))

# excess cost of greedy over the optimum, as a fraction of the optimum
for k in (2, 3, 5):
    ratios = []
    for _ in range(2000):
        s = random_label(rng.randint(k + 1, 30), span=400)
        opt = cover_cost(optimal_k_cover(s, k))
        ratios.append(cover_cost(greedy_k_cover(s, k)) / opt - 1 if opt else 0.0)
    ratios = np.array(ratios)
    print(f"k={k}: greedy optimal in {np.mean(ratios == 0):.0%} of cases, "
          f"mean excess {ratios.mean():.1%}, worst {ratios.max():.1%}")
