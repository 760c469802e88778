"""Minimum peak appointment scheduling: interval assignments and coverage.

An item of size gamma must be given a concrete interval [x, x + gamma)
inside the day [0, 1) at arrival time.  The cost of a set of assignments is
the peak of its coverage function f(z) = #{intervals containing z}, with the
left-closed convention: z is covered by [x, x + gamma) iff x <= z < x + gamma.

``CoverageProfile`` is an exact step function over EpsRational breakpoints.
Besides peak and integral it exposes the non-increasing rearrangement g of f
(same multiset of layer lengths, sorted by height), which is what the
distribution-based adversary reasons about: g(0) is the peak, the integral
is preserved, and for every w the set {z : f(z) >= g(w)} has measure > w
wherever g is still positive at w.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

from .errors import InvalidAssignment
from .numerics import ONE, ZERO, EpsRational


@dataclass(frozen=True, slots=True)
class MpasItem:
    id: int
    size: EpsRational


@dataclass(frozen=True, slots=True)
class IntervalAssignment:
    item_id: int
    size: EpsRational
    offset: EpsRational

    @property
    def end(self) -> EpsRational:
        return self.offset + self.size

    def covers(self, z: EpsRational) -> bool:
        return self.offset <= z < self.end


def check_assignment(a: IntervalAssignment) -> None:
    if not ZERO < a.size <= ONE:
        raise InvalidAssignment(f"item {a.item_id}: size {a.size} outside (0, 1]")
    if a.offset < ZERO or a.end > ONE:
        raise InvalidAssignment(
            f"item {a.item_id}: [{a.offset}, {a.end}) leaves the day [0, 1)"
        )


@dataclass(frozen=True, slots=True)
class CoverageProfile:
    """Step function on [0, 1): value values[i] on [breakpoints[i], next_bp)."""

    breakpoints: tuple[EpsRational, ...]
    values: tuple[int, ...]

    def pieces(self) -> list[tuple[EpsRational, EpsRational, int]]:
        """(start, length, value) triples; the last piece ends at 1."""
        ends = self.breakpoints[1:] + (ONE,)
        return [
            (bp, end - bp, v)
            for bp, end, v in zip(self.breakpoints, ends, self.values)
        ]

    def peak(self) -> int:
        return max(self.values)

    def integral(self) -> EpsRational:
        total = ZERO
        for _, length, v in self.pieces():
            total = total + length * v
        return total

    def value_at(self, z: EpsRational) -> int:
        if z < ZERO or z >= ONE:
            raise ValueError(f"{z} outside the day [0, 1)")
        return self.values[bisect_right(self.breakpoints, z) - 1]

    def measure_at_least(self, v: int) -> EpsRational:
        """Total length of {z : f(z) >= v}."""
        total = ZERO
        for _, length, value in self.pieces():
            if value >= v:
                total = total + length
        return total

    def rearrange(self) -> "CoverageProfile":
        """Non-increasing rearrangement: same layer lengths, sorted by height."""
        by_height: dict[int, EpsRational] = {}
        for _, length, v in self.pieces():
            by_height[v] = by_height.get(v, ZERO) + length
        breakpoints: list[EpsRational] = []
        values: list[int] = []
        at = ZERO
        for v in sorted(by_height, reverse=True):
            breakpoints.append(at)
            values.append(v)
            at = at + by_height[v]
        return CoverageProfile(tuple(breakpoints), tuple(values))


def build_profile(assignments: Iterable[IntervalAssignment]) -> CoverageProfile:
    """Exact sweep over interval endpoints; validates every assignment."""
    deltas: dict[EpsRational, int] = {ZERO: 0}
    for a in assignments:
        check_assignment(a)
        deltas[a.offset] = deltas.get(a.offset, 0) + 1
        if a.end < ONE:
            deltas[a.end] = deltas.get(a.end, 0) - 1
    breakpoints: list[EpsRational] = []
    values: list[int] = []
    level = 0
    for point in sorted(deltas):
        level += deltas[point]
        if values and values[-1] == level:
            continue  # merge: canonical profiles have no trivial breakpoints
        breakpoints.append(point)
        values.append(level)
    return CoverageProfile(tuple(breakpoints), tuple(values))


class MpasAlgorithm(Protocol):
    def on_arrival(self, item: MpasItem) -> EpsRational: ...

    def snapshot(self) -> "MpasAlgorithm": ...


@dataclass(frozen=True, slots=True)
class Placement:
    """One transcript line: the arrival and the offset the algorithm chose."""

    item: MpasItem
    offset: EpsRational


def place_one(
    alg: MpasAlgorithm, item: MpasItem, assignments: list[IntervalAssignment],
    moves: list[Placement],
) -> IntervalAssignment:
    offset = alg.on_arrival(item)
    a = IntervalAssignment(item.id, item.size, offset)
    check_assignment(a)
    assignments.append(a)
    moves.append(Placement(item, offset))
    return a


def peak_of(assignments: Sequence[IntervalAssignment]) -> int:
    return build_profile(assignments).peak() if assignments else 0
