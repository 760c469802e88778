"""Adversarial item streams that lower-bound online removable knapsack.

Two constructions, both for k unit bins with proportional profit:

``run_halves`` (deterministic algorithms) feeds k adaptively sized items
just below one half, classifying each by where the algorithm put it: the
first item placed in a bin is largish, the second smallish, and a
replacement inherits the class of the item it displaced.  With Gamma the
number of two-item bins afterwards, the adversary finishes with either k
items of size 1 - beta (Gamma large) or with items of size 1 - theta that
pair only with smallish items (Gamma small).  The guaranteed ratio,
minimized over Gamma, approaches 3/4 + sqrt(33)/12 ~ 1.2287 as k grows.

``run_two_size`` (randomized algorithms) feeds 2k items of size 2/3 - eps
then 2k of size 1/3 + 3eps, counts the bins X holding a lone big item, and
tops up with k items sized so that exactly the scarcer bin shape can be
completed to a full bin.  Either branch admits an offline packing of k full
bins, so the ratio is at least 6/5 (even k) resp. 6k/(5k - 1) (odd k).  An
estimation mode reruns a seeded algorithm to approximate E[X] when only
sampling access is available.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .errors import InfeasibleConstruction
from .knapsack import (
    Item,
    KnapsackAlgorithm,
    KnapsackState,
    Move,
    Pack,
    ProfitMode,
    play_one,
)
from .numerics import ONE, EpsRational
from .sizing import SizeClass, new_sizer

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


# --------------------------------------------------------------- bounds
def gamma_threshold(k: int) -> int:
    """Smallest integer Gamma >= 0 with (2*Gamma + 5k)^2 >= 33k^2.

    This is where the big-items branch ratio 2k/(2k - Gamma) overtakes the
    theta-branch ratio; equivalently Gamma >= k(sqrt(33) - 5)/2.
    """
    if k < 1:
        raise ValueError("k must be positive")
    s = math.isqrt(33 * k * k)
    if s * s < 33 * k * k:
        s += 1  # ceil sqrt
    g = max(0, -((5 * k - s) // 2))  # ceil((s - 5k)/2), clamped
    while (2 * g + 5 * k) ** 2 < 33 * k * k:
        g += 1
    while g > 0 and (2 * (g - 1) + 5 * k) ** 2 >= 33 * k * k:
        g -= 1
    return g


def branch_ratio(k: int, gamma: int) -> Fraction:
    """Ratio the adversary forces when phase 1 ends with the given Gamma."""
    if gamma >= gamma_threshold(k):
        return Fraction(2 * k, 2 * k - gamma)
    return Fraction(3 * k + gamma - ((k - gamma) % 2), 2 * k + 2 * gamma)


def guaranteed_ratio(k: int) -> Fraction:
    """run_halves' guarantee for k bins: worst case over all reachable Gamma."""
    return min(branch_ratio(k, g) for g in range(k // 2 + 1))


def two_size_bound(k: int) -> Fraction:
    """run_two_size's guarantee: 6/5 for even k, 6k/(5k - 1) for odd k."""
    if k < 1:
        raise ValueError("k must be positive")
    return Fraction(6, 5) if k % 2 == 0 else Fraction(6 * k, 5 * k - 1)


# ----------------------------------------------------- halves adversary
class HalvesBranch(Enum):
    BIG_ITEMS = "big_items"
    THETA_ITEMS = "theta_items"


@dataclass(frozen=True)
class HalvesCertificate:
    k: int
    gamma: int
    branch: HalvesBranch
    theta: Optional[EpsRational]
    alg_profit: EpsRational
    opt_profit: EpsRational
    ratio_limit: Fraction
    transcript: tuple[Move, ...]
    opt_bins: tuple[tuple[int, ...], ...]


def _classify_by_placement(
    before: KnapsackState, action: Pack, classes: dict[int, SizeClass]
) -> SizeClass:
    """First item into a bin is largish, the second smallish, a replacement
    inherits the class of the item it displaced."""
    if action.removals:
        inherited = {classes[rid] for rid in action.removals}
        assert len(inherited) == 1, "minimality limits phase-1 removals to one item"
        return inherited.pop()
    occupancy = len(before.bins[action.bin])
    assert occupancy in (0, 1), "a third no-removal pack would have overflowed"
    return SizeClass.LARGISH if occupancy == 0 else SizeClass.SMALLISH


def run_halves(alg: KnapsackAlgorithm, k: int) -> HalvesCertificate:
    """Play the adaptive near-half adversary against ``alg`` on k bins."""
    if k < 1:
        raise ValueError("k must be positive")
    alpha = EpsRational.make(HALF, -2)
    beta = EpsRational.make(HALF, -1)
    sizer = new_sizer(alpha, beta)
    state = KnapsackState.empty(k)
    classes: dict[int, SizeClass] = {}
    moves: list[Move] = []

    for i in range(k):
        size, sizer = sizer.next_size()
        before = state
        state = play_one(state, alg, Item(i, size), moves)
        action = moves[-1].action
        assert isinstance(action, Pack), "rejecting raises: some bin always fits"
        cls = _classify_by_placement(before, action, classes)
        classes[i] = cls
        sizer = sizer.classify(cls)

    gamma = sum(1 for b in state.bins if len(b) == 2)
    if gamma >= gamma_threshold(k):
        branch, theta = HalvesBranch.BIG_ITEMS, None
        tail = [ONE - beta] * k
    else:
        branch, theta = HalvesBranch.THETA_ITEMS, sizer.threshold()
        tail = [ONE - theta] * (gamma + (k - gamma) // 2)
    for j, size in enumerate(tail):
        state = play_one(state, alg, Item(k + j, size), moves)

    alg_profit = state.profit(ProfitMode.PROPORTIONAL)
    items = [m.item for m in moves]
    opt_profit, opt_bins = construct_opt_halves(items, classes, branch, theta, k, gamma)
    return HalvesCertificate(
        k=k,
        gamma=gamma,
        branch=branch,
        theta=theta,
        alg_profit=alg_profit,
        opt_profit=opt_profit,
        ratio_limit=opt_profit.std / alg_profit.std,
        transcript=tuple(moves),
        opt_bins=opt_bins,
    )


def _checked_packing(
    bins: list[list[Item]], k: int
) -> tuple[EpsRational, tuple[tuple[int, ...], ...]]:
    if len(bins) > k:
        raise InfeasibleConstruction(f"{len(bins)} bins claimed but only {k} exist")
    profit = EpsRational.make(0)
    for group in bins:
        load = EpsRational.make(0)
        for it in group:
            load = load + it.size
        if load > ONE:
            raise InfeasibleConstruction(f"claimed bin {[(i.id) for i in group]} overflows")
        profit = profit + load
    return profit, tuple(tuple(it.id for it in group) for group in bins)


def construct_opt_halves(
    items: list[Item],
    classes: dict[int, SizeClass],
    branch: HalvesBranch,
    theta: Optional[EpsRational],
    k: int,
    gamma: int,
) -> tuple[EpsRational, tuple[tuple[int, ...], ...]]:
    """Explicit offline packing of *all* issued items (or, in the theta
    branch, all phase-1 items plus every tail item placed once)."""
    phase1, tail = items[:k], items[k:]
    if branch is HalvesBranch.BIG_ITEMS:
        bins = [[phase1[i], tail[i]] for i in range(k)]
    else:
        smallish = [it for it in phase1 if classes[it.id] is SizeClass.SMALLISH]
        largish = [it for it in phase1 if classes[it.id] is SizeClass.LARGISH]
        if len(smallish) < gamma:
            raise InfeasibleConstruction(
                f"only {len(smallish)} smallish items for {gamma} two-item bins"
            )
        bins = [[smallish[i], tail[i]] for i in range(gamma)]
        bins += [[t] for t in tail[gamma:]]
        rest = largish + smallish[gamma:]
        bins += [rest[i : i + 2] for i in range(0, len(rest), 2)]
    return _checked_packing(bins, k)


# --------------------------------------------------- two-size adversary
class TwoSizeBranch(Enum):
    THIRD_PLUS_EPS = "third_plus_eps"
    TWO_THIRDS_MINUS_3EPS = "two_thirds_minus_3eps"


BIG = EpsRational.make(Fraction(2, 3), -1)  # 2/3 - eps
SMALL = EpsRational.make(THIRD, 3)  # 1/3 + 3eps
TOPUP_SMALL = EpsRational.make(THIRD, 1)  # completes a lone big to exactly 1
TOPUP_BIG = EpsRational.make(Fraction(2, 3), -3)  # completes a small to exactly 1


@dataclass(frozen=True)
class TwoSizeCertificate:
    k: int
    x: Optional[int]  # lone-big bin count; None in estimated mode
    x_mean: Fraction
    trials: Optional[int]
    seed: Optional[int]
    branch: TwoSizeBranch
    alg_profit: EpsRational  # per-trial mean in estimated mode
    opt_profit: EpsRational
    ratio_limit: Fraction
    ci95: Optional[tuple[float, float]]
    transcripts: tuple[tuple[Move, ...], ...]
    opt_bins: tuple[tuple[int, ...], ...]


def _two_size_phase1(alg: KnapsackAlgorithm, k: int) -> tuple[KnapsackState, list[Move], int]:
    state = KnapsackState.empty(k)
    moves: list[Move] = []
    for i in range(2 * k):
        state = play_one(state, alg, Item(i, BIG), moves)
    for i in range(2 * k, 4 * k):
        state = play_one(state, alg, Item(i, SMALL), moves)
    x = sum(1 for b in state.bins if len(b) == 1 and next(iter(b)).size == BIG)
    return state, moves, x


def _two_size_phase2(
    state: KnapsackState, alg: KnapsackAlgorithm, k: int,
    branch: TwoSizeBranch, moves: list[Move],
) -> KnapsackState:
    size = TOPUP_SMALL if branch is TwoSizeBranch.THIRD_PLUS_EPS else TOPUP_BIG
    for j in range(k):
        state = play_one(state, alg, Item(4 * k + j, size), moves)
    return state


def construct_opt_two_size(
    items: list[Item], branch: TwoSizeBranch, k: int
) -> tuple[EpsRational, tuple[tuple[int, ...], ...]]:
    """k exactly-full bins: lone bigs + their top-ups, or smalls + theirs."""
    bigs, smalls, tail = items[: 2 * k], items[2 * k : 4 * k], items[4 * k :]
    mates = bigs if branch is TwoSizeBranch.THIRD_PLUS_EPS else smalls
    bins = [[mates[i], tail[i]] for i in range(k)]
    return _checked_packing(bins, k)


def run_two_size(
    alg: KnapsackAlgorithm | Callable[[int], KnapsackAlgorithm],
    k: int,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> TwoSizeCertificate:
    """Play the two-size adversary.

    Deterministic mode (``trials=None``): ``alg`` is an algorithm instance
    and the branch is decided by the observed count X of lone-big bins.

    Estimated mode: ``alg`` is a factory mapping a seed to an instance; the
    game is played ``trials`` times with seeds ``seed + i``, the branch is
    decided by the sample mean of X, and profits are averaged.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if trials is None:
        state, moves, x = _two_size_phase1(alg, k)
        branch = (
            TwoSizeBranch.THIRD_PLUS_EPS
            if 2 * x <= k
            else TwoSizeBranch.TWO_THIRDS_MINUS_3EPS
        )
        state = _two_size_phase2(state, alg, k, branch, moves)
        alg_profit = state.profit(ProfitMode.PROPORTIONAL)
        opt_profit, opt_bins = construct_opt_two_size([m.item for m in moves], branch, k)
        return TwoSizeCertificate(
            k=k, x=x, x_mean=Fraction(x), trials=None, seed=None, branch=branch,
            alg_profit=alg_profit, opt_profit=opt_profit,
            ratio_limit=opt_profit.std / alg_profit.std, ci95=None,
            transcripts=(tuple(moves),), opt_bins=opt_bins,
        )

    if trials < 1:
        raise ValueError("trials must be positive")
    base_seed = 0 if seed is None else seed
    algs = [alg(base_seed + i) for i in range(trials)]
    runs = [_two_size_phase1(inst, k) for inst in algs]
    x_mean = Fraction(sum(x for _, _, x in runs), trials)
    branch = (
        TwoSizeBranch.THIRD_PLUS_EPS
        if 2 * x_mean <= k
        else TwoSizeBranch.TWO_THIRDS_MINUS_3EPS
    )
    profits: list[EpsRational] = []
    transcripts: list[tuple[Move, ...]] = []
    for inst, (state, moves, _) in zip(algs, runs):
        state = _two_size_phase2(state, inst, k, branch, moves)
        profits.append(state.profit(ProfitMode.PROPORTIONAL))
        transcripts.append(tuple(moves))
    mean_profit = sum(profits, EpsRational.make(0)) / trials
    opt_profit, opt_bins = construct_opt_two_size(
        [m.item for m in transcripts[0]], branch, k
    )
    ratios = [float(opt_profit.std / p.std) for p in profits]
    if len(ratios) > 1 and statistics.pstdev(ratios) > 0:
        half_width = 1.96 * statistics.stdev(ratios) / math.sqrt(len(ratios))
    else:
        half_width = 0.0
    mean_ratio = float(opt_profit.std / mean_profit.std)
    return TwoSizeCertificate(
        k=k, x=None, x_mean=x_mean, trials=trials, seed=base_seed, branch=branch,
        alg_profit=mean_profit, opt_profit=opt_profit,
        ratio_limit=opt_profit.std / mean_profit.std,
        ci95=(mean_ratio - half_width, mean_ratio + half_width),
        transcripts=tuple(transcripts), opt_bins=opt_bins,
    )
