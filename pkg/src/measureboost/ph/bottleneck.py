"""Bottleneck distance between persistence diagrams.

Exact computation: binary search over the finite set of candidate distances
(point-to-point l-infinity distances and point-to-diagonal distances), with
feasibility decided by maximum bipartite matching.  Points with infinite
death must pair with infinite-death points of the other diagram; the
distance is +inf when that is impossible.
"""

from __future__ import annotations

import numpy as np

from .diagrams import PersistenceDiagram

__all__ = ["bottleneck", "bottleneck_bruteforce"]


def _split(diagram):
    pairs = np.asarray(diagram.pairs, dtype=float).reshape(-1, 2)
    inf_mask = np.isinf(pairs[:, 1])
    return pairs[~inf_mask], pairs[inf_mask]


def _diag_dist(pairs):
    return (pairs[:, 1] - pairs[:, 0]) / 2.0


def _linf(pairs_a, pairs_b):
    if len(pairs_a) == 0 or len(pairs_b) == 0:
        return np.empty((len(pairs_a), len(pairs_b)))
    return np.max(np.abs(pairs_a[:, None, :] - pairs_b[None, :, :]), axis=-1)


def _feasible(cost_ab, diag_a, diag_b, delta):
    """Is there a diagram matching with every displacement <= delta?

    Standard square construction: left side = A-points then |B| diagonal
    slots, right side = B-points then |A| diagonal slots.  A point may use a
    diagonal slot iff its diagonal distance is within delta; diagonal slots
    match each other freely.  Feasible iff a perfect matching exists
    (Kuhn's augmenting paths; adjacency built once per call).
    """
    n_a, n_b = len(diag_a), len(diag_b)
    size = n_a + n_b
    adjacency = []
    for i in range(n_a):
        nbrs = [j for j in range(n_b) if cost_ab[i][j] <= delta]
        if diag_a[i] <= delta:
            nbrs.extend(range(n_b, size))
        adjacency.append(nbrs)
    for u in range(n_b):  # diagonal slots on the left
        nbrs = [j for j in range(n_b) if diag_b[j] <= delta]
        nbrs.extend(range(n_b, size))
        adjacency.append(nbrs)
    match_right = [-1] * size

    def augment(u, seen):
        for v in adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    import sys

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * size + 100))
    try:
        for u in range(size):
            if not augment(u, set()):
                return False
    finally:
        sys.setrecursionlimit(old_limit)
    return True


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    fin1, inf1 = _split(d1)
    fin2, inf2 = _split(d2)
    if len(inf1) != len(inf2):
        return float("inf")
    ess = 0.0
    if len(inf1):
        # essential classes pair by sorted births (optimal for a chain)
        b1 = np.sort(inf1[:, 0])
        b2 = np.sort(inf2[:, 0])
        ess = float(np.max(np.abs(b1 - b2)))
    cost = _linf(fin1, fin2)
    diag1 = _diag_dist(fin1)
    diag2 = _diag_dist(fin2)
    candidates = np.unique(
        np.concatenate([cost.ravel(), diag1, diag2, [0.0]])
    )
    cost_list = cost.tolist()
    lo, hi = 0, len(candidates) - 1
    # smallest candidate delta that admits a feasible matching
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(cost_list, diag1, diag2, candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return max(float(candidates[lo]), ess)


def bottleneck_bruteforce(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Exhaustive enumeration over all partial matchings (small diagrams only)."""
    fin1, inf1 = _split(d1)
    fin2, inf2 = _split(d2)
    if len(inf1) != len(inf2):
        return float("inf")
    ess = 0.0
    if len(inf1):
        import itertools

        ess = min(
            max(abs(b1 - b2) for b1, b2 in zip(inf1[:, 0], perm))
            for perm in itertools.permutations(inf2[:, 0])
        )
    cost = _linf(fin1, fin2)
    diag1 = _diag_dist(fin1)
    diag2 = _diag_dist(fin2)
    best = [float("inf")]

    def recurse(i, used, current):
        if current >= best[0]:
            return
        if i == len(fin1):
            rest = max(
                (diag2[j] for j in range(len(fin2)) if j not in used), default=0.0
            )
            best[0] = min(best[0], max(current, rest))
            return
        recurse(i + 1, used, max(current, diag1[i]))  # send point i to diagonal
        for j in range(len(fin2)):
            if j not in used:
                recurse(i + 1, used | {j}, max(current, cost[i, j]))

    recurse(0, frozenset(), 0.0)
    return max(best[0], ess)
