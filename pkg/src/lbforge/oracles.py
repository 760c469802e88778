"""Independent brute-force optima for cross-checking constructed packings.

These are deliberately written against the raw definitions (subset choice +
exhaustive bin assignment; branch-and-bound bin packing) rather than reusing
any adversary-side construction, so agreement between the two is meaningful
evidence.  Both searches are exponential and guarded by TooLarge.

For the scheduling side the offline optimum is a bin count: a placement with
peak P induces an interval graph with clique number P, which (interval graphs
being perfect) splits into P pairwise-disjoint classes, i.e. P unit bins; and
any B bins can be laid out side by side for peak B.  So minimum peak equals
the minimum number of unit bins, and a packing oracle is a peak oracle.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InfeasibleConstruction, TooLarge
from .knapsack import Item, ProfitMode
from .mpas import CoverageProfile, IntervalAssignment, build_profile, check_assignment
from .numerics import ONE, ZERO, EpsRational, eps_ceil

MAX_KNAPSACK_ITEMS = 14
MAX_PACKING_ITEMS = 16


def brute_knapsack(
    items: Sequence[Item], k: int, mode: ProfitMode = ProfitMode.PROPORTIONAL
) -> tuple[EpsRational, tuple[tuple[int, ...], ...]]:
    """Exact best profit over every subset and packing into k unit bins.

    Returns the profit and one optimal packing as bin-wise id tuples (empty
    bins included).  Search order is by decreasing size; identical bin loads
    are only branched once, and a branch dies when even keeping everything
    left cannot beat the incumbent.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if len(items) > MAX_KNAPSACK_ITEMS:
        raise TooLarge(f"{len(items)} items; brute force capped at {MAX_KNAPSACK_ITEMS}")

    def profit_of(it: Item) -> EpsRational:
        return it.size if mode is ProfitMode.PROPORTIONAL else ONE

    order = sorted(items, key=lambda it: it.size, reverse=True)
    n = len(order)
    suffix = [ZERO] * (n + 1)
    for pos in range(n - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + profit_of(order[pos])

    best_profit = ZERO
    best_bins: tuple[tuple[int, ...], ...] = tuple(() for _ in range(k))
    loads = [ZERO] * k
    bins: list[list[int]] = [[] for _ in range(k)]

    def rec(pos: int, profit: EpsRational) -> None:
        nonlocal best_profit, best_bins
        if pos == n:
            if profit > best_profit:
                best_profit = profit
                best_bins = tuple(tuple(sorted(b)) for b in bins)
            return
        if profit + suffix[pos] <= best_profit:
            return
        it = order[pos]
        seen: set[EpsRational] = set()
        for b in range(k):
            load = loads[b]
            if load in seen or load + it.size > ONE:
                continue
            seen.add(load)
            loads[b] = load + it.size
            bins[b].append(it.id)
            rec(pos + 1, profit + profit_of(it))
            bins[b].pop()
            loads[b] = load
        rec(pos + 1, profit)  # reject it

    rec(0, ZERO)
    return best_profit, best_bins


def brute_bin_packing(sizes: Sequence[EpsRational]) -> int:
    """Minimum number of unit bins holding all sizes, exactly."""
    n = len(sizes)
    if n > MAX_PACKING_ITEMS:
        raise TooLarge(f"{n} items; brute force capped at {MAX_PACKING_ITEMS}")
    for s in sizes:
        if not ZERO < s <= ONE:
            raise ValueError(f"size {s} outside (0, 1]")
    if n == 0:
        return 0

    order = sorted(sizes, reverse=True)

    def first_fit_decreasing() -> int:
        loads: list[EpsRational] = []
        for s in order:
            for i, load in enumerate(loads):
                if load + s <= ONE:
                    loads[i] = load + s
                    break
            else:
                loads.append(s)
        return len(loads)

    best = first_fit_decreasing()
    lower = max(1, eps_ceil(sum(order, ZERO)))
    if best == lower:
        return best

    loads: list[EpsRational] = []

    def rec(pos: int) -> None:
        nonlocal best
        if len(loads) >= best:
            return
        if pos == n:
            best = len(loads)
            return
        s = order[pos]
        seen: set[EpsRational] = set()
        for i in range(len(loads)):
            load = loads[i]
            if load in seen or load + s > ONE:
                continue
            seen.add(load)
            loads[i] = load + s
            rec(pos + 1)
            loads[i] = load
        loads.append(s)
        rec(pos + 1)
        loads.pop()

    rec(0)
    return best


def verify_packing(
    items: Sequence[Item], k: int, bins_ids: Sequence[Sequence[int]]
) -> EpsRational:
    """Check a claimed packing against the item list and return its profit.

    Proportional profit; raises InfeasibleConstruction on unknown or reused
    ids, more than k bins, or an overfull bin.
    """
    by_id = {it.id: it for it in items}
    if len(by_id) != len(items):
        raise InfeasibleConstruction("duplicate item ids in instance")
    if len(bins_ids) > k:
        raise InfeasibleConstruction(f"{len(bins_ids)} bins claimed but only {k} exist")
    seen: set[int] = set()
    profit = ZERO
    for group in bins_ids:
        load = ZERO
        for item_id in group:
            if item_id in seen:
                raise InfeasibleConstruction(f"item {item_id} packed twice")
            seen.add(item_id)
            if item_id not in by_id:
                raise InfeasibleConstruction(f"item {item_id} not in instance")
            load = load + by_id[item_id].size
        if load > ONE:
            raise InfeasibleConstruction(f"bin {list(group)} overflows")
        profit = profit + load
    return profit


def verify_assignment(assignments: Sequence[IntervalAssignment]) -> CoverageProfile:
    """Validate every interval and return the induced coverage profile."""
    for a in assignments:
        check_assignment(a)
    return build_profile(assignments)
