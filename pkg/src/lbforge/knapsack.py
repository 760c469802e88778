"""Referee for the online removable multiple-knapsack game.

k unit-capacity bins; items arrive one at a time and the online algorithm
answers with an action.  The referee enforces the game contract:

* an item may only be rejected if it fits in no bin as-is (laziness);
* to make room the algorithm may remove items, but only from the bin the
  arrival goes into, and the removal set must be *minimal*: putting any
  single removed item back would overflow the bin;
* loads never exceed 1.

Violations raise the corresponding ``ContractViolation`` subclass - they
indicate a buggy algorithm, not a lost game.  States are immutable so games
can be forked (randomized-adversary estimation) and replayed (certificate
audits) cheaply.

Profit is either the total packed size ("proportional") or the number of
packed items ("unit").
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Protocol, Union

from .errors import BadBin, IllegalReject, NonMinimalRemoval, Overflow
from .numerics import ONE, ZERO, EpsRational


@dataclass(frozen=True, slots=True)
class Item:
    id: int
    size: EpsRational


@dataclass(frozen=True, slots=True)
class Reject:
    pass


@dataclass(frozen=True, slots=True)
class Pack:
    """Pack the arrival into bin ``bin``, first removing ``removals`` (item ids)."""

    bin: int
    removals: frozenset[int] = frozenset()


Action = Union[Reject, Pack]


class ProfitMode(enum.Enum):
    PROPORTIONAL = "proportional"
    UNIT = "unit"


def _load(items: Iterable[Item]) -> EpsRational:
    total = ZERO
    for it in items:
        total = total + it.size
    return total


@dataclass(frozen=True, slots=True)
class KnapsackState:
    k: int
    bins: tuple[frozenset[Item], ...]
    rejected: frozenset[Item]

    @staticmethod
    def empty(k: int) -> "KnapsackState":
        if k < 1:
            raise ValueError("need at least one bin")
        return KnapsackState(k=k, bins=(frozenset(),) * k, rejected=frozenset())

    def bin_load(self, b: int) -> EpsRational:
        return _load(self.bins[b])

    def loads(self) -> tuple[EpsRational, ...]:
        return tuple(_load(b) for b in self.bins)

    def fits_anywhere(self, item: Item) -> bool:
        return any(self.bin_load(b) + item.size <= ONE for b in range(self.k))

    def packed(self) -> list[Item]:
        return [it for b in self.bins for it in sorted(b, key=lambda x: x.id)]

    def profit(self, mode: ProfitMode = ProfitMode.PROPORTIONAL) -> EpsRational:
        if mode is ProfitMode.UNIT:
            return EpsRational.make(sum(len(b) for b in self.bins))
        return _load(it for b in self.bins for it in b)

    def apply(self, item: Item, action: Action) -> "KnapsackState":
        """Referee one move; raises a ContractViolation on any rule breach."""
        if isinstance(action, Reject):
            if self.fits_anywhere(item):
                raise IllegalReject(f"item {item.id} fits somewhere but was rejected")
            return KnapsackState(self.k, self.bins, self.rejected | {item})

        if not 0 <= action.bin < self.k:
            raise BadBin(f"bin {action.bin} out of range for k={self.k}")
        contents = self.bins[action.bin]
        by_id = {it.id: it for it in contents}
        unknown = action.removals - by_id.keys()
        if unknown or item.id in action.removals:
            raise BadBin(f"removals {sorted(action.removals)} not all in bin {action.bin}")
        removed = [by_id[rid] for rid in action.removals]
        new_load = _load(contents) - _load(removed) + item.size
        if new_load > ONE:
            raise Overflow(f"bin {action.bin} would carry {new_load}")
        for r in removed:
            if new_load + r.size <= ONE:
                raise NonMinimalRemoval(f"item {r.id} could have been kept in bin {action.bin}")
        new_bin = (contents - set(removed)) | {item}
        bins = self.bins[: action.bin] + (new_bin,) + self.bins[action.bin + 1 :]
        return KnapsackState(self.k, bins, self.rejected)


def minimal_removal_sets(contents: frozenset[Item], item: Item) -> list[frozenset[int]]:
    """All minimal removal sets letting ``item`` join a bin holding ``contents``.

    Deterministic order: by set size, then by the sorted ids.  When the item
    already fits, the empty set is the only minimal choice.
    """
    load = _load(contents)
    if load + item.size <= ONE:
        return [frozenset()]
    members = sorted(contents, key=lambda it: it.id)
    found: list[frozenset[int]] = []
    for r in range(1, len(members) + 1):
        for combo in itertools.combinations(members, r):
            new_load = load - _load(combo) + item.size
            if new_load <= ONE and all(new_load + m.size > ONE for m in combo):
                found.append(frozenset(m.id for m in combo))
    return found


def legal_actions(state: KnapsackState, item: Item) -> list[Action]:
    """Every action the referee would accept for this arrival.

    Mirrors ``apply`` exactly: all (bin, minimal removal set) packings, plus
    Reject when laziness permits it (the item fits nowhere without removals).
    """
    actions: list[Action] = []
    for b in range(state.k):
        actions.extend(Pack(b, rem) for rem in minimal_removal_sets(state.bins[b], item))
    if not state.fits_anywhere(item):
        actions.append(Reject())
    return actions


class KnapsackAlgorithm(Protocol):
    def on_arrival(self, item: Item, state: KnapsackState) -> Action: ...

    def snapshot(self) -> "KnapsackAlgorithm": ...


@dataclass(frozen=True, slots=True)
class Move:
    """One transcript line: the arrival, the action taken, loads afterwards."""

    item: Item
    action: Action
    loads: tuple[EpsRational, ...]


def play_one(
    state: KnapsackState, alg: KnapsackAlgorithm, item: Item, moves: list[Move]
) -> KnapsackState:
    action = alg.on_arrival(item, state)
    state = state.apply(item, action)
    moves.append(Move(item, action, state.loads()))
    return state
