"""Exception types shared across the package.

Grouped by who is at fault: ``ContractViolation`` subclasses mean an online
algorithm broke the rules of the game it was playing (the CLI maps these to
exit code 2); the remaining classes flag bad requests, guard rails, or - in
the case of ``InfeasibleConstruction`` - an internal bug witness.
"""


class LbforgeError(Exception):
    """Base class for package-specific failures."""


# ---------------------------------------------------------------- sizing
class InvalidRange(LbforgeError):
    """Sizer created with alpha >= beta."""


class PendingClassification(LbforgeError):
    """An emitted size is still awaiting its smallish/largish verdict."""


class NothingPending(LbforgeError):
    """classify() called although no size is outstanding."""


# ------------------------------------------------- game contract breaches
class ContractViolation(LbforgeError):
    """An online algorithm violated the game contract."""


class IllegalReject(ContractViolation):
    """Item rejected although some bin could still take it."""


class NonMinimalRemoval(ContractViolation):
    """A removed item could have been put back without overflowing."""


class Overflow(ContractViolation):
    """Resulting bin load exceeds the unit capacity."""


class BadBin(ContractViolation):
    """Bin index out of range, or a removal names an item not in that bin."""


class InvalidAssignment(ContractViolation):
    """Interval assignment leaves [0, 1), or has a nonsensical size."""


# ------------------------------------------------------ adversary internals
class InfeasibleConstruction(LbforgeError):
    """A claimed optimum failed its own feasibility check (bug witness)."""


class SnapshotUnsupported(LbforgeError):
    """The algorithm cannot be forked but the adversary needs to fork it."""


class DivisibilityViolated(LbforgeError):
    """Yao-adversary parameters do not satisfy q | M*N over the whole range."""


# ------------------------------------------------------------------ oracles
class TooLarge(LbforgeError):
    """Instance exceeds the brute-force guard rail."""


class ReplayMismatch(LbforgeError):
    """Replaying a certificate transcript did not reproduce its claims."""
