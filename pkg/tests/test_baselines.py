"""Reference algorithms: packing behaviour, determinism, snapshot forking."""

from fractions import Fraction

from lbforge.baselines import (
    OFFSET_GRID,
    FirstFitKeep,
    RandomCompliant,
    RandomOffset,
    ReplaceIfLarger,
    TwoSided,
    make_algorithm,
)
from lbforge.knapsack import Item, KnapsackState, legal_actions
from lbforge.mpas import MpasItem, build_profile, IntervalAssignment
from lbforge.numerics import ONE, ZERO, EpsRational

E = EpsRational.make


def drive_knapsack(alg, k, sizes):
    state = KnapsackState.empty(k)
    for i, size in enumerate(sizes):
        item = Item(i, size)
        state = state.apply(item, alg.on_arrival(item, state))
    return state


def test_first_fit_keep_fills_then_rejects():
    big = E(Fraction(2, 3), -1)
    state = drive_knapsack(FirstFitKeep(), 2, [big] * 4)
    assert [len(b) for b in state.bins] == [1, 1]
    assert len(state.rejected) == 2


def test_replace_if_larger_trades_up():
    alg = ReplaceIfLarger()
    state = drive_knapsack(alg, 1, [E(Fraction(1, 3), 3)] * 2 + [E(Fraction(2, 3), -3)])
    assert state.loads() == (E(1),)
    assert {it.id for it in state.bins[0]} in ({0, 2}, {1, 2})
    # an arrival smaller than anything it could evict is rejected instead
    state = drive_knapsack(alg, 1, [E(Fraction(2, 3), -1), E(Fraction(1, 3), 3)])
    assert state.loads() == (E(Fraction(2, 3), -1),)
    assert len(state.rejected) == 1


def test_random_compliant_is_seed_deterministic_and_legal():
    sizes = [E(Fraction(i % 4 + 1, 5), (-1) ** i) for i in range(12)]
    runs = []
    for _ in range(2):
        alg = RandomCompliant(31)
        state = KnapsackState.empty(2)
        actions = []
        for i, size in enumerate(sizes):
            item = Item(i, size)
            action = alg.on_arrival(item, state)
            assert action in legal_actions(state, item)
            actions.append(action)
            state = state.apply(item, action)
        runs.append(actions)
    assert runs[0] == runs[1]


def test_random_compliant_snapshot_forks_identically():
    alg = RandomCompliant(5)
    state = KnapsackState.empty(2)
    for i in range(6):
        item = Item(i, E(Fraction(2, 5)))
        state = state.apply(item, alg.on_arrival(item, state))
    fork = alg.snapshot()
    item = Item(99, E(Fraction(3, 5)))
    assert fork.on_arrival(item, state) == alg.on_arrival(item, state)


def test_anchor_zero_stacks_everything():
    alg = make_algorithm("anchor_zero")
    items = [MpasItem(i, E(Fraction(1, 4))) for i in range(5)]
    assignments = [IntervalAssignment(it.id, it.size, alg.on_arrival(it)) for it in items]
    assert build_profile(assignments).peak() == 5


def test_two_sided_alternates_per_size():
    alg = TwoSided()
    size = E(Fraction(2, 5))
    offsets = [alg.on_arrival(MpasItem(i, size)) for i in range(4)]
    assert offsets == [ZERO, E(Fraction(3, 5)), ZERO, E(Fraction(3, 5))]
    assignments = [IntervalAssignment(i, size, off) for i, off in enumerate(offsets)]
    assert build_profile(assignments).peak() == 2
    # a different size class alternates independently
    assert alg.on_arrival(MpasItem(9, E(Fraction(1, 5)))) == ZERO


def test_random_offset_grid_and_determinism():
    items = [MpasItem(i, E(Fraction(1, 3), -2)) for i in range(8)]
    offsets_a = [RandomOffset(7).on_arrival(it) for it in [items[0]]]
    alg1, alg2 = RandomOffset(7), RandomOffset(7)
    offs1 = [alg1.on_arrival(it) for it in items]
    offs2 = [alg2.on_arrival(it) for it in items]
    assert offs1 == offs2
    assert offsets_a[0] == offs1[0]
    for off, it in zip(offs1, items):
        assert ZERO <= off and off + it.size <= ONE
        assert (off.std * OFFSET_GRID).denominator == 1 and off.inf == 0
    fork = alg1.snapshot()
    probe = MpasItem(50, E(Fraction(1, 2)))
    assert fork.on_arrival(probe) == alg1.on_arrival(probe)


def test_registry_round_trip():
    assert isinstance(make_algorithm("first_fit_keep"), FirstFitKeep)
    assert isinstance(make_algorithm("random_compliant", 3), RandomCompliant)
    assert make_algorithm("random_compliant", 3).seed == 3
    assert make_algorithm("random_compliant").seed == 0
    try:
        make_algorithm("nope")
    except ValueError as exc:
        assert "nope" in str(exc)
    else:  # pragma: no cover
        raise AssertionError("unknown name must raise")
