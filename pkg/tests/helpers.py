"""Shared test helpers: a brute-force frontier oracle and point generators."""

import random

from fairnav import ParetoPoint, Policy, ThresholdRule


def allpairs_frontier(points):
    """O(n^2) dominance filter, then the same dedup/sort the package promises.

    A point is dominated when some other point is at least as good on both
    axes and strictly better on one.  Among surviving points with identical
    (utility, disparity) the lexicographically smallest policy encoding is
    kept.  Sorted by utility descending, then disparity, then encoding.
    """
    kept = []
    for p in points:
        dominated = False
        for q in points:
            if q is p:
                continue
            if (
                q.utility >= p.utility
                and q.disparity <= p.disparity
                and (q.utility > p.utility or q.disparity < p.disparity)
            ):
                dominated = True
                break
        if not dominated:
            kept.append(p)
    best = {}
    for p in kept:
        key = (p.utility, p.disparity)
        if key not in best or p.policy.encode() < best[key].policy.encode():
            best[key] = p
    return sorted(
        best.values(), key=lambda p: (-p.utility, p.disparity, p.policy.encode())
    )


def random_cloud(rng: random.Random, n: int) -> list[ParetoPoint]:
    """Scored points with occasional exact ties on either axis."""
    utilities = [rng.choice([rng.uniform(-1, 1), round(rng.uniform(-1, 1), 1)]) for _ in range(n)]
    disparities = [rng.choice([rng.uniform(0, 1), round(rng.uniform(0, 1), 1)]) for _ in range(n)]
    return [
        ParetoPoint(
            policy=Policy(rules={"g": ThresholdRule(i / 1000)}),
            utility=u,
            disparity=d,
            worst_off_welfare=rng.uniform(-1, 1),
        )
        for i, (u, d) in enumerate(zip(utilities, disparities))
    ]
