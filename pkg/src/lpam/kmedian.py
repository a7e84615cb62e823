"""k-median (p-median) over a precomputed distance matrix.

Two solvers share one cost definition: :func:`solve_exact` (depth-first
branch-and-bound over medoid subsets in lexicographic order) and
:func:`solve_clarans` (randomized swap local search with restarts).

Every objective reported here is ``d[j, assignment[j]]`` summed over ``j``
by :func:`_cost`, so values from different code paths compare bit-exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import BudgetExceeded, EmptyMedoidSet, InvalidK, InvalidParams

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_NUM_LOCAL = 10

# Pruning slack: batch reductions may round differently from _cost.
_SLACK = 1e-9


@dataclass(frozen=True)
class MedoidSolution:
    medoids: tuple
    assignment: np.ndarray
    objective: float
    exact: bool
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.medoids)


def _as_array(d) -> np.ndarray:
    return np.asarray(getattr(d, "matrix", d), dtype=float)


def _cost(d: np.ndarray, assignment: np.ndarray) -> float:
    return float(np.sum(d[np.arange(d.shape[0]), assignment]))


def assign(d, medoids: Iterable[int]) -> np.ndarray:
    """Nearest-medoid assignment; ties go to the smallest medoid index.

    Each medoid is assigned to itself even when another medoid is at
    distance 0 from it.
    """
    d = _as_array(d)
    s = np.array(sorted(set(int(c) for c in medoids)), dtype=np.int64)
    if s.size == 0:
        raise EmptyMedoidSet("medoid set is empty")
    if s[0] < 0 or s[-1] >= d.shape[0]:
        raise InvalidK(f"medoid index outside 0..{d.shape[0] - 1}")
    out = s[np.argmin(d[:, s], axis=1)]
    out[s] = s
    return out


def objective(d, medoids: Iterable[int]) -> float:
    """Sum over points of the distance to the assigned medoid."""
    d = _as_array(d)
    return _cost(d, assign(d, medoids))


def _solution(d, medoids, exact, stats) -> MedoidSolution:
    a = assign(d, medoids)
    return MedoidSolution(tuple(sorted(int(c) for c in medoids)), a, _cost(d, a), exact, stats)


def _check_k(m, k):
    if not (1 <= k <= m):
        raise InvalidK(f"k must be in 1..{m}, got {k}")


def _greedy_upper_bound(d: np.ndarray, k: int):
    """Greedy build then first-improvement swaps; a cheap incumbent for pruning."""
    m = d.shape[0]
    chosen = []
    cur = np.full(m, np.inf)
    for _ in range(k):
        totals = np.minimum(cur[None, :], d).sum(axis=1)
        totals[chosen] = np.inf
        c = int(np.argmin(totals))
        chosen.append(c)
        cur = np.minimum(cur, d[c])
    best = objective(d, chosen)
    improved = True
    while improved:
        improved = False
        for p in range(k):
            rest = chosen[:p] + chosen[p + 1:]
            base = d[rest].min(axis=0) if rest else np.full(m, np.inf)
            totals = np.minimum(base[None, :], d).sum(axis=1)
            totals[chosen] = np.inf
            c = int(np.argmin(totals))
            if totals[c] < best * (1 - _SLACK):
                cand = rest + [c]
                val = objective(d, cand)
                if val < best:
                    chosen, best, improved = cand, val, True
    return best, tuple(sorted(chosen))


def solve_exact(d, k: int, node_budget: int = DEFAULT_NODE_BUDGET) -> MedoidSolution:
    """Globally optimal k-median by branch-and-bound.

    Medoid sets are enumerated as increasing index tuples, depth first, so
    leaves are met in lexicographic order. A partial set ``S`` whose last
    index is ``t`` is bounded below by
    ``sum_j min(min_{c in S} d[j, c], min_{c > t} d[j, c])``.
    Among equally good sets the lexicographically smallest is returned.

    Raises ``BudgetExceeded`` once more than ``node_budget`` search-tree
    nodes have been generated.
    """
    d = _as_array(d)
    m = d.shape[0]
    _check_k(m, k)
    if node_budget < 1:
        raise InvalidParams("node_budget must be >= 1")
    if k == m:
        return _solution(d, range(m), True, {"nodes": 0})

    # cols[c] is column c, so min vectors hold exactly the values _cost sums.
    cols = np.ascontiguousarray(d.T)
    # suffix_min[t, j] = min_{c >= t} d[j, c]; row m is +inf.
    suffix_min = np.empty((m + 1, m))
    suffix_min[m] = np.inf
    for t in range(m - 1, -1, -1):
        np.minimum(suffix_min[t + 1], cols[t], out=suffix_min[t])

    best_val, best_set = _greedy_upper_bound(d, k)
    visited = 0
    # stack entries: (chosen tuple, current min vector)
    stack = [((), np.full(m, np.inf))]
    while stack:
        chosen, cur = stack.pop()
        depth = len(chosen)
        first = chosen[-1] + 1 if chosen else 0
        last = m - (k - depth)  # inclusive: leave room for the remaining picks
        cands = np.arange(first, last + 1)
        visited += cands.size
        if visited > node_budget:
            raise BudgetExceeded(node_budget, visited)
        newmin = np.minimum(cur[None, :], cols[cands])
        if depth + 1 == k:
            vals = newmin.sum(axis=1)
            for i in np.flatnonzero(vals <= best_val * (1 + _SLACK)):
                val = float(np.sum(newmin[i]))
                cand = chosen + (int(cands[i]),)
                if val < best_val or (val == best_val and cand < best_set):
                    best_val, best_set = val, cand
            continue
        bounds = np.minimum(newmin, suffix_min[cands + 1]).sum(axis=1)
        keep = np.flatnonzero(bounds <= best_val * (1 + _SLACK))
        # push in reverse so the smallest index is expanded first
        for i in keep[::-1]:
            stack.append((chosen + (int(cands[i]),), newmin[i]))
    sol = _solution(d, best_set, True, {"nodes": visited})
    return sol


def default_max_neighbor(m: int, k: int) -> int:
    return int(max(250, math.ceil(k * (m - k) / 20)))


def solve_clarans(
    d,
    k: int,
    num_local: int = DEFAULT_NUM_LOCAL,
    max_neighbor: Optional[int] = None,
    seed: int = 0,
) -> MedoidSolution:
    """CLARANS randomized local search.

    Each of ``num_local`` restarts begins at a uniformly random k-subset and
    repeatedly tries a random (medoid, non-medoid) swap, moving whenever
    the objective strictly drops. A restart ends after ``max_neighbor``
    consecutive rejected swaps. The best local optimum is returned.
    Randomness comes from ``numpy.random.PCG64(seed)``.
    """
    d = _as_array(d)
    m = d.shape[0]
    _check_k(m, k)
    if max_neighbor is None:
        max_neighbor = default_max_neighbor(m, k)
    if num_local < 1 or max_neighbor < 1:
        raise InvalidParams("num_local and max_neighbor must be >= 1")
    if k == m:
        return _solution(d, range(m), False, {"swaps": 0, "evaluations": 0})

    rng = np.random.Generator(np.random.PCG64(seed))
    best_val, best_set = math.inf, None
    swaps = evaluations = 0
    for _ in range(num_local):
        current = rng.choice(m, size=k, replace=False)
        is_medoid = np.zeros(m, dtype=bool)
        is_medoid[current] = True
        others = np.flatnonzero(~is_medoid)
        cur_val = objective(d, current)
        fails = 0
        while fails < max_neighbor:
            p = int(rng.integers(k))
            q = int(rng.integers(m - k))
            trial = current.copy()
            trial[p] = others[q]
            val = objective(d, trial)
            evaluations += 1
            if val < cur_val:
                others[q] = current[p]
                current, cur_val = trial, val
                fails = 0
                swaps += 1
            else:
                fails += 1
        key = tuple(sorted(int(c) for c in current))
        if cur_val < best_val or (cur_val == best_val and key < best_set):
            best_val, best_set = cur_val, key
    return _solution(d, best_set, False, {"swaps": swaps, "evaluations": evaluations})
