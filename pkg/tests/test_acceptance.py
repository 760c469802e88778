"""Acceptance gate: one test per shipped guarantee, one verdict line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the verdict lines.
"""

import json
import math
import random
from fractions import Fraction

from lbforge.baselines import (
    KNAPSACK_BASELINES,
    MPAS_BASELINES,
    RandomCompliant,
    make_algorithm,
)
from lbforge.bounds import finite_N_bound, halves_constant, solve_tau_R
from lbforge.certificates import build_payload, replay
from lbforge.knapsack import Item, KnapsackState, Reject, legal_actions
from lbforge.knapsack_adversaries import (
    guaranteed_ratio,
    run_halves,
    run_two_size,
    two_size_bound,
)
from lbforge.mpas import IntervalAssignment, build_profile
from lbforge.mpas_adversaries import construct_opt_yao, run_thirds, run_yao
from lbforge.numerics import ONE, ZERO, EpsRational
from lbforge.oracles import brute_bin_packing, brute_knapsack

E = EpsRational.make

HALVES_TABLE = {
    2: Fraction(4, 3),
    3: Fraction(5, 4),
    4: Fraction(6, 5),
    5: Fraction(5, 4),
    6: Fraction(5, 4),
    7: Fraction(11, 9),
    8: Fraction(16, 13),
    9: Fraction(5, 4),
    10: Fraction(16, 13),
}


def verdict(label):
    """Print '<label>: PASS/FAIL' for the wrapped criterion body."""

    def wrap(fn):
        def run():
            try:
                fn()
            except BaseException:
                print(f"{label}: FAIL")
                raise
            print(f"{label}: PASS")

        run.__name__ = fn.__name__
        return run

    return wrap


@verdict("C1 bound constants")
def test_c1_constants():
    assert abs(halves_constant() - (0.75 + math.sqrt(33) / 12)) < 1e-6
    sol = solve_tau_R()
    assert abs(sol.tau - 0.212072) < 1e-5
    assert abs(sol.value - 1.2691534) < 1e-6


@verdict("C2 exact small-k tables")
def test_c2_small_k_tables():
    for k, expected in HALVES_TABLE.items():
        assert guaranteed_ratio(k) == expected, (k, guaranteed_ratio(k))
    for k, expected in {3: Fraction(9, 7), 5: Fraction(5, 4), 7: Fraction(21, 17), 9: Fraction(27, 22)}.items():
        assert two_size_bound(k) == expected
    for k in (2, 4, 6, 8, 10):
        assert two_size_bound(k) == Fraction(6, 5)


@verdict("C3 every baseline and 100 random players beat the knapsack bounds")
def test_c3_knapsack_lower_bound_property():
    players = [lambda name=name: make_algorithm(name, 0) for name in KNAPSACK_BASELINES]
    players += [lambda s=s: RandomCompliant(s) for s in range(100)]
    for k in range(2, 11):
        thm2_bound = Fraction(6, 5) if k % 2 == 0 else Fraction(6 * k, 5 * k - 1)
        for mk in players:
            halves = run_halves(mk(), k)
            assert halves.ratio_limit >= HALVES_TABLE[k], (k, halves.ratio_limit)
            two = run_two_size(mk(), k)
            assert two.ratio_limit >= thm2_bound, (k, two.ratio_limit)


@verdict("C4 scheduling baselines meet 5/4 - 1/(6N) at N=100 and N=1000")
def test_c4_mpas_deterministic_bound():
    for n in (100, 1000):
        bound = Fraction(5, 4) - Fraction(1, 6 * n)
        for name in MPAS_BASELINES:
            cert = run_thirds(make_algorithm(name, 0), n)
            assert cert.ratio_limit >= bound, (name, n, cert.ratio_limit)


@verdict("C5 distribution adversary: exact 77/62 at (12,5,3); million-N limit")
def test_c5_yao_bound():
    for name in MPAS_BASELINES:
        cert = run_yao(make_algorithm(name, 0), 12, 5, 3)
        assert cert.reference_bound == Fraction(77, 62)
        assert cert.ratio_limit >= Fraction(77, 62), (name, cert.ratio_limit)
    value = float(finite_N_bound(10**6, round(0.212072 * 10**6)))
    assert abs(value - 1.2691534) < 2e-3


@verdict("C6 constructive optima equal brute force on small instances")
def test_c6_oracle_equivalence():
    checked = 0
    # near-half adversary: k + tail items stays within the brute-force guard
    for k in range(2, 8):
        for mk in (
            lambda: make_algorithm("first_fit_keep"),
            lambda: make_algorithm("replace_if_larger"),
            lambda: RandomCompliant(3),
            lambda: RandomCompliant(17),
        ):
            cert = run_halves(mk(), k)
            items = [m.item for m in cert.transcript]
            if len(items) <= 14:
                profit, _ = brute_knapsack(items, k)
                assert profit == cert.opt_profit, (k, profit, cert.opt_profit)
                checked += 1
    # two-size adversary at k=2: ten items
    for name in KNAPSACK_BASELINES:
        cert = run_two_size(make_algorithm(name, 0), 2)
        items = [m.item for m in cert.transcripts[0]]
        profit, _ = brute_knapsack(items, 2)
        assert profit == cert.opt_profit
        checked += 1

    # thirds adversary at N=1; stop branches issue exactly 12 items
    class CoverHalf:
        def on_arrival(self, item):
            return E(Fraction(1, 3))

        def snapshot(self):
            return self

    for alg in [make_algorithm(n, 0) for n in MPAS_BASELINES] + [CoverHalf()]:
        cert = run_thirds(alg, 1)
        sizes = [p.item.size for p in cert.transcript]
        if len(sizes) <= 16:
            assert cert.opt_upper == brute_bin_packing(sizes)
            checked += 1

    # distribution adversary on tiny grids: every instance fits the guard
    for n, m, t in ((4, 1, 1), (4, 2, 1)):
        cert = run_yao(make_algorithm("anchor_zero"), n, m, t)
        prefix_sizes = [p.item.size for p in cert.prefix_transcript]
        for q, transcript in cert.continuation_transcripts.items():
            sizes = prefix_sizes + [p.item.size for p in transcript]
            if len(sizes) <= 16:
                _, cost = construct_opt_yao(n, m, q)
                assert cost == brute_bin_packing(sizes)
                checked += 1
        _, prefix_cost = construct_opt_yao(n, m, n // 2)
        assert prefix_cost == brute_bin_packing(prefix_sizes)
        checked += 1
    assert checked >= 30, checked


@verdict("C7 a thousand fuzzed games and profiles keep every invariant")
def test_c7_model_invariants():
    pool_std = [Fraction(i, 8) for i in range(1, 8)] + [Fraction(i, 5) for i in range(1, 5)]
    for seed in range(1000):
        rng = random.Random(seed)
        k = 1 + seed % 3
        state = KnapsackState.empty(k)
        for i in range(8):
            item = Item(i, E(rng.choice(pool_std), rng.randint(-3, 3)))
            action = rng.choice(legal_actions(state, item))
            before = state
            state = state.apply(item, action)
            assert all(load <= ONE for load in state.loads())
            if isinstance(action, Reject):
                assert not before.fits_anywhere(item)  # laziness
            elif action.removals:
                by_id = {it.id: it for it in before.bins[action.bin]}
                new_load = state.bin_load(action.bin)
                for rid in action.removals:  # removal minimality
                    assert new_load + by_id[rid].size > ONE

    grid = [Fraction(i, 24) for i in range(25)]
    for seed in range(1000):
        rng = random.Random(10_000 + seed)
        assignments = []
        for i in range(rng.randint(0, 9)):
            a, b = sorted(rng.sample(grid, 2))
            assignments.append(IntervalAssignment(i, E(b - a), E(a)))
        f = build_profile(assignments)
        total = ZERO
        for x in assignments:
            total = total + x.size
        assert f.integral() == total  # integral of f is the size mass
        g = f.rearrange()
        assert g.integral() == f.integral()  # rearranging preserves the integral
        assert not assignments or g.value_at(ZERO) == f.peak()  # peak = g(0)
        for start, _, level in g.pieces():  # layer-measure property
            if level > 0:
                assert f.measure_at_least(level) > start


@verdict("C8 replayed certificates reproduce their exact ratios")
def test_c8_replay_determinism():
    payloads = [
        build_payload(run_halves(make_algorithm("first_fit_keep"), 4), "first_fit_keep"),
        build_payload(run_halves(RandomCompliant(5), 3), "random_compliant", 5),
        build_payload(run_two_size(make_algorithm("replace_if_larger"), 3), "replace_if_larger"),
        build_payload(
            run_two_size(lambda s: RandomCompliant(s), 2, trials=5, seed=7),
            "random_compliant",
            7,
        ),
        build_payload(run_thirds(make_algorithm("anchor_zero"), 1), "anchor_zero"),
        build_payload(run_thirds(make_algorithm("two_sided"), 2), "two_sided"),
        build_payload(run_yao(make_algorithm("anchor_zero"), 12, 5, 3), "anchor_zero"),
        build_payload(run_yao(make_algorithm("random_offset", 3), 12, 5, 3), "random_offset", 3),
    ]
    for payload in payloads:
        wire = json.loads(json.dumps(payload))  # as read back from disk
        first = replay(wire)
        second = replay(json.loads(json.dumps(wire)))
        assert first == second
        assert first["ratio"] == Fraction(payload["ratio"])
        assert first["passed"] is True
