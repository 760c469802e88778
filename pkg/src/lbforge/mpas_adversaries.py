"""Adversarial item streams that lower-bound peak appointment scheduling.

``run_thirds`` (deterministic algorithms) issues 12N adaptively sized items
just below one third.  An item is smallish iff the interval it was assigned
contains the midpoint 1/2 (left-closed).  With Q the smallish count the
adversary either stops (Q extreme: the midpoint, or one of the points
theta / 1 - theta, is already crowded while an offline schedule fits
everything into the three thirds of the day at height 4N), or continues
with 12N items of size 2/3, or with about Q items of size 1 - theta that
overlap every largish interval.  Every branch forces peak/optimum at least
5/4 - 1/(6N).

``run_yao`` (randomized algorithms, via the distributional method) feeds a
fixed prefix of N*M slivers of size 1/N, snapshots the algorithm, and
continues into one of several futures: for each cutoff q in {t..N/2-1}, a
flood of M*N/q items of length 1 - q/N (any valid placement of such an item
covers the middle of the day), or no continuation at all.  Weighting the
futures with p_q = 2/N and p_prefix = 2t/N turns the non-increasing
rearrangement of the prefix coverage into a Riemann majorant of its own
integral, which pins the expected ratio at ``finite_N_bound(N, t)``
regardless of how the prefix was placed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .bounds import finite_N_bound
from .errors import (
    DivisibilityViolated,
    InfeasibleConstruction,
    SnapshotUnsupported,
)
from .mpas import (
    IntervalAssignment,
    MpasAlgorithm,
    MpasItem,
    Placement,
    build_profile,
    place_one,
)
from .numerics import ONE, ZERO, EpsRational
from .sizing import SizeClass, new_sizer

HALF_POINT = EpsRational.make(Fraction(1, 2))
TWO_THIRDS = EpsRational.make(Fraction(2, 3))


class ThirdsBranch(Enum):
    STOP_HIGH = "stop_high"  # Q >= 5N
    STOP_LOW = "stop_low"  # Q <= 2N
    TWO_THIRDS = "two_thirds"  # 3N <= Q < 5N
    THETA_ITEMS = "theta_items"  # 2N < Q < 3N


@dataclass(frozen=True)
class ThirdsCertificate:
    n: int
    q: int  # smallish count after phase 1
    branch: ThirdsBranch
    q_prime: int  # 0 outside the theta branch
    theta: Optional[EpsRational]
    alg_cost: int
    opt_upper: int
    ratio_limit: Fraction
    transcript: tuple[Placement, ...]
    opt_assignments: tuple[IntervalAssignment, ...]


def run_thirds(alg: MpasAlgorithm, n: int) -> ThirdsCertificate:
    """Play the adaptive near-third adversary against ``alg`` (12N items)."""
    if n < 1:
        raise ValueError("N must be positive")
    sizer = new_sizer(
        EpsRational.make(Fraction(1, 3), -2), EpsRational.make(Fraction(1, 3), -1)
    )
    assignments: list[IntervalAssignment] = []
    moves: list[Placement] = []
    q = 0
    for i in range(12 * n):
        size, sizer = sizer.next_size()
        a = place_one(alg, MpasItem(i, size), assignments, moves)
        smallish = a.covers(HALF_POINT)
        q += smallish
        sizer = sizer.classify(SizeClass.SMALLISH if smallish else SizeClass.LARGISH)

    theta: Optional[EpsRational] = None
    q_prime = 0
    tail: list[EpsRational] = []
    if q >= 5 * n:
        branch = ThirdsBranch.STOP_HIGH
    elif q <= 2 * n:
        branch = ThirdsBranch.STOP_LOW
    elif q >= 3 * n:
        branch = ThirdsBranch.TWO_THIRDS
        tail = [TWO_THIRDS] * (12 * n)
    else:
        branch = ThirdsBranch.THETA_ITEMS
        theta = sizer.threshold()
        q_prime = 3 * (q // 3)
        tail = [ONE - theta] * q_prime
    for j, size in enumerate(tail):
        place_one(alg, MpasItem(12 * n + j, size), assignments, moves)

    alg_cost = build_profile(assignments).peak()
    items = [m.item for m in moves]
    opt_assignments, opt_upper = construct_opt_thirds(items, branch, theta, n, q_prime)
    return ThirdsCertificate(
        n=n,
        q=q,
        branch=branch,
        q_prime=q_prime,
        theta=theta,
        alg_cost=alg_cost,
        opt_upper=opt_upper,
        ratio_limit=Fraction(alg_cost, opt_upper),
        transcript=tuple(moves),
        opt_assignments=opt_assignments,
    )


def _thirds_spread(items: list[MpasItem], per_third: int) -> list[IntervalAssignment]:
    """Assign ``items`` (sizes < 1/3) in three stacks at offsets 0, 1/3, 2/3."""
    offsets = [ZERO, EpsRational.make(Fraction(1, 3)), TWO_THIRDS]
    out = []
    for idx, it in enumerate(items):
        out.append(IntervalAssignment(it.id, it.size, offsets[idx // per_third]))
    return out


def construct_opt_thirds(
    items: list[MpasItem],
    branch: ThirdsBranch,
    theta: Optional[EpsRational],
    n: int,
    q_prime: int,
) -> tuple[tuple[IntervalAssignment, ...], int]:
    """Explicit offline schedule achieving the claimed optimum upper bound."""
    phase1, tail = items[: 12 * n], items[12 * n :]
    if branch in (ThirdsBranch.STOP_HIGH, ThirdsBranch.STOP_LOW):
        cost = 4 * n
        opt = _thirds_spread(phase1, 4 * n)
    elif branch is ThirdsBranch.TWO_THIRDS:
        cost = 12 * n
        opt = [IntervalAssignment(it.id, it.size, ZERO) for it in phase1]
        third = EpsRational.make(Fraction(1, 3))
        opt += [IntervalAssignment(it.id, it.size, third) for it in tail]
    else:
        assert theta is not None and q_prime > 0
        cost = (12 * n + 2 * q_prime) // 3
        smallish = [it for it in phase1 if it.size < theta]
        if len(smallish) < q_prime:
            raise InfeasibleConstruction(
                f"only {len(smallish)} smallish items but q' = {q_prime}"
            )
        paired = smallish[:q_prime]
        paired_ids = {it.id for it in paired}
        opt = [IntervalAssignment(it.id, it.size, ZERO) for it in paired]
        opt += [IntervalAssignment(it.id, it.size, theta) for it in tail]
        rest = [it for it in phase1 if it.id not in paired_ids]
        opt += _thirds_spread(rest, len(rest) // 3)
    measured = build_profile(opt).peak()
    if measured != cost:
        raise InfeasibleConstruction(f"claimed optimum {cost}, construction peaks at {measured}")
    return tuple(opt), cost


# ------------------------------------------------------- Yao adversary
@dataclass(frozen=True)
class InstanceOutcome:
    alg_cost: int
    opt_cost: int
    probability: Fraction


@dataclass(frozen=True)
class YaoCertificate:
    n: int
    m: int
    t: int
    per_instance: dict[int, InstanceOutcome]  # keyed by cutoff q; N/2 = prefix only
    e_alg: Fraction
    e_opt: Fraction
    ratio_limit: Fraction
    reference_bound: Fraction
    prefix_transcript: tuple[Placement, ...]
    continuation_transcripts: dict[int, tuple[Placement, ...]]


def _fork(alg: MpasAlgorithm) -> MpasAlgorithm:
    try:
        return alg.snapshot()
    except (AttributeError, NotImplementedError) as exc:
        raise SnapshotUnsupported("algorithm cannot be forked") from exc


def run_yao(alg: MpasAlgorithm, n: int, m: int, t: int) -> YaoCertificate:
    """Play the distribution of continuations against ``alg``."""
    if n < 4 or n % 2:
        raise ValueError("N must be even and at least 4")
    if not 1 <= t <= n // 2 - 1:
        raise ValueError("need 1 <= t <= N/2 - 1")
    if m < 1:
        raise ValueError("M must be positive")
    for cutoff in range(t, n // 2):
        if (m * n) % cutoff:
            raise DivisibilityViolated(f"{cutoff} does not divide M*N = {m * n}")
    _fork(alg)  # fail fast if the algorithm cannot be forked

    sliver = EpsRational.make(Fraction(1, n))
    prefix_assign: list[IntervalAssignment] = []
    prefix_moves: list[Placement] = []
    for i in range(n * m):
        place_one(alg, MpasItem(i, sliver), prefix_assign, prefix_moves)
    prefix_peak = build_profile(prefix_assign).peak()

    per_instance: dict[int, InstanceOutcome] = {}
    continuations: dict[int, tuple[Placement, ...]] = {}
    for cutoff in range(t, n // 2):
        fork = _fork(alg)
        long_size = EpsRational.make(Fraction(n - cutoff, n))
        count = m * n // cutoff
        assignments = list(prefix_assign)
        moves: list[Placement] = []
        for j in range(count):
            place_one(fork, MpasItem(n * m + j, long_size), assignments, moves)
        per_instance[cutoff] = InstanceOutcome(
            alg_cost=build_profile(assignments).peak(),
            opt_cost=count,
            probability=Fraction(2, n),
        )
        continuations[cutoff] = tuple(moves)
    per_instance[n // 2] = InstanceOutcome(
        alg_cost=prefix_peak, opt_cost=m, probability=Fraction(2 * t, n)
    )

    e_alg = sum(o.probability * o.alg_cost for o in per_instance.values())
    e_opt = sum(o.probability * o.opt_cost for o in per_instance.values())
    return YaoCertificate(
        n=n,
        m=m,
        t=t,
        per_instance=per_instance,
        e_alg=e_alg,
        e_opt=e_opt,
        ratio_limit=e_alg / e_opt,
        reference_bound=finite_N_bound(n, t),
        prefix_transcript=tuple(prefix_moves),
        continuation_transcripts=continuations,
    )


def construct_opt_yao(
    n: int, m: int, cutoff: int
) -> tuple[tuple[IntervalAssignment, ...], int]:
    """Offline schedule for the instance with the given cutoff q.

    The prefix splits into q stacks occupying [j/N, (j+1)/N) for j < q, and
    the long items all sit at [q/N, 1); every stack has height M*N/q.  The
    prefix-only instance (cutoff = N/2 by convention) uses N stacks of M.
    """
    sliver = EpsRational.make(Fraction(1, n))
    if cutoff == n // 2:
        groups, height = n, m
        longs = 0
    else:
        if (m * n) % cutoff:
            raise DivisibilityViolated(f"{cutoff} does not divide M*N")
        groups, height = cutoff, m * n // cutoff
        longs = m * n // cutoff
    opt: list[IntervalAssignment] = []
    next_id = 0
    for j in range(groups):
        offset = EpsRational.make(Fraction(j, n))
        for _ in range(height):
            opt.append(IntervalAssignment(next_id, sliver, offset))
            next_id += 1
    long_size = EpsRational.make(Fraction(n - cutoff, n))
    long_offset = EpsRational.make(Fraction(cutoff, n))
    for _ in range(longs):
        opt.append(IntervalAssignment(next_id, long_size, long_offset))
        next_id += 1
    measured = build_profile(opt).peak()
    expected = height if cutoff == n // 2 else m * n // cutoff
    if measured != expected:
        raise InfeasibleConstruction(
            f"claimed optimum {expected}, construction peaks at {measured}"
        )
    return tuple(opt), expected
