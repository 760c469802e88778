"""Adaptive item sizing by nested interval bisection.

The adversaries need a stream of item sizes with a property no fixed size
list can give: after the fact, there must exist a single threshold theta
with every "smallish" item strictly below it and every "largish" item
strictly above - where smallish/largish is decided by the *opponent's*
observed behaviour, one item at a time.

The trick is to keep an open interval (lo, hi), emit its midpoint as the
next size, and once the caller has watched the algorithm handle the item,
move the matching endpoint onto it:

    smallish  ->  lo := size      (future sizes, and theta, stay above)
    largish   ->  hi := size      (future sizes, and theta, stay below)

theta is the midpoint of the final interval.  Every emitted size lies
strictly inside the initial bracket (alpha, beta), intervals are strictly
nested, and exactly one size may be awaiting classification at a time.

States are immutable; each operation returns the successor state, so games
can be forked and replayed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional

from .errors import InvalidRange, NothingPending, PendingClassification
from .numerics import EpsRational


class SizeClass(enum.Enum):
    SMALLISH = "smallish"
    LARGISH = "largish"


LogEntry = tuple[EpsRational, Optional[SizeClass]]


@dataclass(frozen=True, slots=True)
class SizerState:
    alpha: EpsRational
    beta: EpsRational
    lo: EpsRational
    hi: EpsRational
    pending: Optional[EpsRational]
    log: tuple[LogEntry, ...]

    def next_size(self) -> tuple[EpsRational, "SizerState"]:
        """Emit the midpoint of the current interval as the next item size."""
        if self.pending is not None:
            raise PendingClassification("previous size has not been classified yet")
        mid = (self.lo + self.hi) / 2
        state = replace(self, pending=mid, log=self.log + ((mid, None),))
        return mid, state

    def classify(self, cls: SizeClass) -> "SizerState":
        """Resolve the outstanding size, shrinking the interval onto it."""
        if self.pending is None:
            raise NothingPending("no size is awaiting classification")
        lo, hi = self.lo, self.hi
        if cls is SizeClass.SMALLISH:
            lo = self.pending
        else:
            hi = self.pending
        log = self.log[:-1] + ((self.pending, cls),)
        return replace(self, lo=lo, hi=hi, pending=None, log=log)

    def threshold(self) -> EpsRational:
        """The separating value theta; only defined once nothing is pending."""
        if self.pending is not None:
            raise PendingClassification("classify the outstanding size first")
        return (self.lo + self.hi) / 2


def new_sizer(alpha: EpsRational, beta: EpsRational) -> SizerState:
    if not alpha < beta:
        raise InvalidRange(f"need alpha < beta, got {alpha} vs {beta}")
    return SizerState(alpha=alpha, beta=beta, lo=alpha, hi=beta, pending=None, log=())
