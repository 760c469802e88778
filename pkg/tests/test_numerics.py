"""Exact eps-aware arithmetic: ordering, vector-space ops, serialization."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lbforge.numerics import (
    ONE,
    ZERO,
    EpsRational,
    compare,
    eps_ceil,
    eps_floor,
    format_fraction,
    order_witness,
)

E = EpsRational.make


def test_ordering_is_lexicographic():
    assert E(Fraction(1, 2), -2) < E(Fraction(1, 2), -1) < E(Fraction(1, 2))
    assert E(Fraction(1, 2), 100) < E(1, -100)  # std part dominates
    assert not E(1) < E(1)
    assert max(E(1, -1), E(1, 1), E(Fraction(3, 4), 50)) == E(1, 1)


def test_vector_space_arithmetic():
    a = E(Fraction(2, 3), -1)
    b = E(Fraction(1, 3), 3)
    assert a + b == E(1, 2)
    assert a - b == E(Fraction(1, 3), -4)
    assert -b == E(Fraction(-1, 3), -3)
    assert a * 3 == E(2, -3)
    assert Fraction(1, 2) * a == E(Fraction(1, 3), Fraction(-1, 2))
    assert a / 2 == E(Fraction(1, 3), Fraction(-1, 2))


def test_eps_times_eps_is_rejected():
    with pytest.raises(TypeError, match="plain rational"):
        E(1, 1) * E(1, 1)
    with pytest.raises(TypeError):
        E(0, 1) * E(0, 1)


def test_standard_part_and_evaluate():
    x = E(Fraction(1, 2), Fraction(-7, 4))
    assert x.standard_part == Fraction(1, 2)
    assert x.evaluate(Fraction(1, 100)) == Fraction(1, 2) - Fraction(7, 400)


def test_rendering():
    assert str(E(Fraction(1, 2), -3)) == "1/2 - 3*eps"
    assert str(E(Fraction(1, 2), 1)) == "1/2 + 1*eps"
    assert str(E(2)) == "2"


def test_pair_serialization_round_trip():
    x = E(Fraction(2, 3), Fraction(-5, 4))
    pair = x.to_pair()
    assert pair == {"std": "2/3", "inf": "-5/4"}
    assert EpsRational.from_pair(pair) == x
    # integers still carry the slash so parsing never has to guess
    assert format_fraction(Fraction(2)) == "2/1"
    assert E(1).to_pair() == {"std": "1/1", "inf": "0/1"}


def test_compare():
    assert compare(E(1, -1), E(1)) == -1
    assert compare(E(1), E(1, -1)) == 1
    assert compare(E(1, 5), E(1, 5)) == 0


def test_eps_floor_and_ceil():
    assert eps_floor(E(1, -1)) == 0 and eps_ceil(E(1, -1)) == 1
    assert eps_floor(E(1, 1)) == 1 and eps_ceil(E(1, 1)) == 2
    assert eps_floor(E(1)) == 1 and eps_ceil(E(1)) == 1
    assert eps_floor(E(Fraction(3, 2), -99)) == 1
    assert eps_ceil(E(Fraction(3, 2), 99)) == 2
    assert eps_ceil(E(Fraction(-1, 2), 1)) == 0
    assert eps_floor(E(-2, -1)) == -3


small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=32)
eps_rationals = st.builds(EpsRational, small_fractions, small_fractions)


@given(st.lists(eps_rationals, min_size=2, max_size=8))
def test_order_witness_realizes_the_symbolic_order(values):
    """Evaluating at any eps in (0, eps0] must reproduce every comparison."""
    eps0 = order_witness(values)
    assert eps0 > 0
    for eps in (eps0, eps0 / 7):
        for a in values:
            for b in values:
                concrete = a.evaluate(eps) - b.evaluate(eps)
                sign = (concrete > 0) - (concrete < 0)
                assert sign == compare(a, b)


@given(eps_rationals, eps_rationals, eps_rationals)
def test_addition_respects_order(a, b, c):
    if a < b:
        assert a + c < b + c
    assert (a + b) - b == a


def test_constants():
    assert ZERO == E(0) and ONE == E(1)
    assert ZERO < ONE
