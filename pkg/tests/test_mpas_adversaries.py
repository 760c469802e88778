"""Thirds and distribution adversaries for appointment scheduling."""

from fractions import Fraction

import pytest

from lbforge.baselines import AnchorZero, RandomOffset, TwoSided
from lbforge.errors import DivisibilityViolated, SnapshotUnsupported
from lbforge.mpas_adversaries import (
    ThirdsBranch,
    construct_opt_yao,
    run_thirds,
    run_yao,
)
from lbforge.bounds import finite_N_bound
from lbforge.numerics import ZERO, EpsRational
from lbforge.oracles import verify_assignment

E = EpsRational.make
THIRD = Fraction(1, 3)


class CoverFirst:
    """Covers the midpoint for the first ``upto`` arrivals, then anchors at 0."""

    def __init__(self, upto, count=0):
        self.upto, self.count = upto, count

    def on_arrival(self, item):
        self.count += 1
        return E(THIRD) if self.count <= self.upto else ZERO

    def snapshot(self):
        return CoverFirst(self.upto, self.count)


def test_anchor_zero_stops_low():
    cert = run_thirds(AnchorZero(), 1)
    assert cert.q == 0 and cert.branch is ThirdsBranch.STOP_LOW
    assert cert.q_prime == 0 and cert.theta is None
    assert len(cert.transcript) == 12
    assert cert.alg_cost == 12 and cert.opt_upper == 4
    assert cert.ratio_limit == Fraction(3)
    # the claimed optimum really schedules those items at that peak
    assert verify_assignment(cert.opt_assignments).peak() == 4


def test_always_covering_stops_high():
    class AtThird:
        def on_arrival(self, item):
            return E(THIRD)

        def snapshot(self):
            return self

    cert = run_thirds(AtThird(), 1)
    assert cert.q == 12 and cert.branch is ThirdsBranch.STOP_HIGH
    assert (cert.alg_cost, cert.opt_upper, cert.ratio_limit) == (12, 4, Fraction(3))


def test_mixed_coverage_branches():
    # five covering arrivals out of twelve: high branch fires at Q = 5N
    cert = run_thirds(CoverFirst(5), 1)
    assert cert.branch is ThirdsBranch.STOP_HIGH
    assert (cert.q, cert.alg_cost, cert.opt_upper) == (5, 7, 4)
    # two covering arrivals: low branch at Q = 2N
    cert = run_thirds(CoverFirst(2), 1)
    assert cert.branch is ThirdsBranch.STOP_LOW
    assert (cert.q, cert.alg_cost, cert.opt_upper) == (2, 10, 4)
    assert cert.ratio_limit == Fraction(5, 2)


def test_two_thirds_branch():
    cert = run_thirds(CoverFirst(3), 1)
    assert cert.branch is ThirdsBranch.TWO_THIRDS
    assert (cert.q, cert.q_prime) == (3, 0)
    assert len(cert.transcript) == 24  # twelve probes + twelve two-thirds items
    assert cert.transcript[-1].item.size == E(Fraction(2, 3))
    assert (cert.alg_cost, cert.opt_upper, cert.ratio_limit) == (21, 12, Fraction(7, 4))
    assert verify_assignment(cert.opt_assignments).peak() == 12


def test_theta_branch():
    cert = run_thirds(CoverFirst(5), 2)
    assert cert.branch is ThirdsBranch.THETA_ITEMS
    assert (cert.q, cert.q_prime) == (5, 3)
    assert cert.theta is not None and cert.theta.std == THIRD
    assert len(cert.transcript) == 27  # 24 probes + q_prime tail items
    tail = cert.transcript[-1].item.size
    assert tail.std == Fraction(2, 3) and tail == E(1) - cert.theta
    assert (cert.alg_cost, cert.opt_upper) == (22, 10)  # (12N + 2Q')/3 = 10
    assert cert.ratio_limit == Fraction(11, 5)
    profile = verify_assignment(cert.opt_assignments)
    assert profile.peak() == 10


def test_thirds_beats_reference_for_baselines():
    for alg, n in ((TwoSided(), 2), (RandomOffset(3), 2), (AnchorZero(), 3)):
        cert = run_thirds(alg, n)
        assert cert.ratio_limit >= Fraction(5, 4) - Fraction(1, 6 * n)


def test_yao_anchor_zero_full_accounting():
    cert = run_yao(AnchorZero(), 12, 5, 3)
    assert {q: (o.alg_cost, o.opt_cost) for q, o in cert.per_instance.items()} == {
        3: (80, 20),
        4: (75, 15),
        5: (72, 12),
        6: (60, 5),
    }
    probs = {q: o.probability for q, o in cert.per_instance.items()}
    assert probs == {3: Fraction(1, 6), 4: Fraction(1, 6), 5: Fraction(1, 6), 6: Fraction(1, 2)}
    assert sum(probs.values()) == 1
    assert cert.e_alg == Fraction(407, 6)
    assert cert.e_opt == Fraction(31, 3)
    assert cert.ratio_limit == Fraction(407, 62)
    assert cert.reference_bound == Fraction(77, 62) == finite_N_bound(12, 3)
    assert len(cert.prefix_transcript) == 60  # M*N unit-grid items
    assert all(p.item.size == E(Fraction(1, 12)) for p in cert.prefix_transcript)
    assert sorted(cert.continuation_transcripts) == [3, 4, 5]
    for q, t in cert.continuation_transcripts.items():
        assert len(t) == 60 // q
        assert all(p.item.size == E(Fraction(12 - q, 12)) for p in t)
        prefix_ids = {p.item.id for p in cert.prefix_transcript}
        assert prefix_ids.isdisjoint(p.item.id for p in t)


def test_yao_optimum_construction_is_feasible():
    for cutoff in (3, 4, 5):
        assignments, cost = construct_opt_yao(12, 5, cutoff)
        assert cost == 60 // cutoff
        assert verify_assignment(assignments).peak() == cost
        sizes = sorted(a.size for a in assignments)
        expected = [E(Fraction(1, 12))] * 60 + [E(Fraction(12 - cutoff, 12))] * (60 // cutoff)
        assert sizes == sorted(expected)


def test_yao_random_offset_is_deterministic():
    a = run_yao(RandomOffset(5), 12, 5, 3)
    b = run_yao(RandomOffset(5), 12, 5, 3)
    assert a.e_alg == b.e_alg == Fraction(53, 3)
    assert a.ratio_limit == Fraction(53, 31)
    assert a.continuation_transcripts == b.continuation_transcripts


def test_yao_parameter_validation():
    with pytest.raises(ValueError, match="even"):
        run_yao(AnchorZero(), 11, 5, 3)
    with pytest.raises(ValueError, match="even"):
        run_yao(AnchorZero(), 2, 5, 1)
    with pytest.raises(ValueError, match="positive"):
        run_yao(AnchorZero(), 12, 0, 3)
    for bad_t in (0, 6):
        with pytest.raises(ValueError, match="1 <= t"):
            run_yao(AnchorZero(), 12, 5, bad_t)
    with pytest.raises(DivisibilityViolated):
        run_yao(AnchorZero(), 12, 1, 3)  # 5 does not divide 12


def test_yao_requires_forkable_algorithms():
    class NoSnap:
        def on_arrival(self, item):
            return ZERO

    with pytest.raises(SnapshotUnsupported):
        run_yao(NoSnap(), 12, 5, 3)


def test_thirds_parameter_validation():
    with pytest.raises(ValueError):
        run_thirds(AnchorZero(), 0)
