"""Reference online algorithms for both games.

These are deliberately simple: they exist to be certified against, not to be
good.  Three knapsack players (first-fit that never removes, first-fit with
a profit-improving replacement rule, and a uniformly random compliant
player) and three appointment schedulers (everything at offset 0, a
two-sided alternator, and a random valid offset).

Every algorithm implements ``snapshot()`` returning a fork that behaves
identically under identical continuations - the distribution-based
adversaries rely on this to branch one game into several futures.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .knapsack import (
    Action,
    Item,
    KnapsackState,
    Pack,
    Reject,
    legal_actions,
    minimal_removal_sets,
)
from .mpas import MpasItem
from .numerics import ONE, ZERO, EpsRational, eps_floor

OFFSET_GRID = 2 * 10**4  # random offsets are multiples of 1/OFFSET_GRID


# ------------------------------------------------------------- knapsack
class FirstFitKeep:
    """Pack into the lowest-index bin that fits; never remove; else reject."""

    def on_arrival(self, item: Item, state: KnapsackState) -> Action:
        for b in range(state.k):
            if state.bin_load(b) + item.size <= ONE:
                return Pack(b)
        return Reject()

    def snapshot(self) -> "FirstFitKeep":
        return self  # stateless


class ReplaceIfLarger:
    """First fit; failing that, evict a minimal set strictly smaller in total
    than the arrival (so proportional profit strictly improves); else reject."""

    def on_arrival(self, item: Item, state: KnapsackState) -> Action:
        for b in range(state.k):
            if state.bin_load(b) + item.size <= ONE:
                return Pack(b)
        for b in range(state.k):
            contents = state.bins[b]
            by_id = {it.id: it for it in contents}
            for removal in minimal_removal_sets(contents, item):
                dropped = sum((by_id[rid].size for rid in removal), ZERO)
                if dropped < item.size:
                    return Pack(b, removal)
        return Reject()

    def snapshot(self) -> "ReplaceIfLarger":
        return self  # stateless


class RandomCompliant:
    """Choose uniformly at random among all referee-legal actions."""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)

    def on_arrival(self, item: Item, state: KnapsackState) -> Action:
        return self.rng.choice(legal_actions(state, item))

    def snapshot(self) -> "RandomCompliant":
        fork = RandomCompliant(self.seed)
        fork.rng.setstate(self.rng.getstate())
        return fork


# ------------------------------------------------- appointment scheduling
class AnchorZero:
    """Every interval starts at 0."""

    def on_arrival(self, item: MpasItem) -> EpsRational:
        return ZERO

    def snapshot(self) -> "AnchorZero":
        return self  # stateless


class TwoSided:
    """Alternate, per size class, between offset 0 and the rightmost offset."""

    def __init__(self):
        self.flip_right: dict[EpsRational, bool] = {}

    def on_arrival(self, item: MpasItem) -> EpsRational:
        right = self.flip_right.get(item.size, False)
        self.flip_right[item.size] = not right
        return ONE - item.size if right else ZERO

    def snapshot(self) -> "TwoSided":
        fork = TwoSided()
        fork.flip_right = dict(self.flip_right)
        return fork


class RandomOffset:
    """A uniform valid offset, discretized to the 1/20000 grid."""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)

    def on_arrival(self, item: MpasItem) -> EpsRational:
        top = eps_floor((ONE - item.size) * OFFSET_GRID)
        step = self.rng.randint(0, top)
        return EpsRational.make(Fraction(step, OFFSET_GRID))

    def snapshot(self) -> "RandomOffset":
        fork = RandomOffset(self.seed)
        fork.rng.setstate(self.rng.getstate())
        return fork


KNAPSACK_BASELINES = ("first_fit_keep", "replace_if_larger", "random_compliant")
MPAS_BASELINES = ("anchor_zero", "two_sided", "random_offset")

_SEEDED = {"random_compliant": RandomCompliant, "random_offset": RandomOffset}
_PLAIN = {
    "first_fit_keep": FirstFitKeep,
    "replace_if_larger": ReplaceIfLarger,
    "anchor_zero": AnchorZero,
    "two_sided": TwoSided,
}


def make_algorithm(name: str, seed: int | None = None):
    """Instantiate a baseline by registry name (seed only used where it matters)."""
    if name in _SEEDED:
        return _SEEDED[name](seed if seed is not None else 0)
    if name in _PLAIN:
        return _PLAIN[name]()
    raise ValueError(f"unknown algorithm {name!r}")
