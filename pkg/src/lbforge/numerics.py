"""Exact arithmetic for quantities of the form  std + inf*eps.

The adversarial constructions in this package pick item sizes an
infinitesimal amount below or above a rational breakpoint (one half, one
third, ...).  Instead of approximating "infinitesimal" with some concrete
tiny float - and then having to argue about rounding - the symbol eps is
carried through every computation exactly: a value is a pair of
arbitrary-precision rationals (std, inf) denoting std + inf*eps.

Ordering is lexicographic on (std, inf).  This matches evaluating the
expressions at any sufficiently small concrete eps > 0; ``order_witness``
returns one such threshold, which is how the tests tie the symbolic order
back to plain rational arithmetic.

Only the vector-space operations exist: adding/subtracting two values and
scaling by an exact rational.  Products of two eps-terms never arise in the
constructions and are deliberately not implemented, so accidental nonlinear
use fails loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rationalish = Union[int, str, Fraction]

_SCALARS = (int, Fraction)


def as_fraction(value: Rationalish) -> Fraction:
    """Coerce an int / "num/den" string / Fraction to a Fraction."""
    return value if isinstance(value, Fraction) else Fraction(value)


def format_fraction(value: Fraction) -> str:
    """Canonical "num/den" rendering, always with the slash: 2 -> "2/1"."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, slots=True, order=True)
class EpsRational:
    """std + inf*eps with eps an arbitrarily small positive amount."""

    std: Fraction
    inf: Fraction

    @staticmethod
    def make(std: Rationalish, inf: Rationalish = 0) -> "EpsRational":
        return EpsRational(as_fraction(std), as_fraction(inf))

    # ------------------------------------------- vector-space operations
    def __add__(self, other: "EpsRational") -> "EpsRational":
        if not isinstance(other, EpsRational):
            return NotImplemented
        return EpsRational(self.std + other.std, self.inf + other.inf)

    def __sub__(self, other: "EpsRational") -> "EpsRational":
        if not isinstance(other, EpsRational):
            return NotImplemented
        return EpsRational(self.std - other.std, self.inf - other.inf)

    def __neg__(self) -> "EpsRational":
        return EpsRational(-self.std, -self.inf)

    def __mul__(self, scalar) -> "EpsRational":
        if isinstance(scalar, EpsRational):
            raise TypeError("products of eps-terms are undefined; scale by a plain rational")
        if not isinstance(scalar, _SCALARS):
            return NotImplemented
        return EpsRational(self.std * scalar, self.inf * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "EpsRational":
        if not isinstance(scalar, _SCALARS):
            return NotImplemented
        return EpsRational(self.std / scalar, self.inf / scalar)

    # ------------------------------------------------ limits, diagnostics
    @property
    def standard_part(self) -> Fraction:
        """The eps -> 0+ limit."""
        return self.std

    def evaluate(self, eps: Fraction) -> Fraction:
        """The plain rational std + inf*eps at a concrete eps."""
        return self.std + self.inf * eps

    def __str__(self) -> str:
        if self.inf == 0:
            return str(self.std)
        sign = "+" if self.inf > 0 else "-"
        return f"{self.std} {sign} {abs(self.inf)}*eps"

    # ---------------------------------------------------- serialization
    def to_pair(self) -> dict:
        return {"std": format_fraction(self.std), "inf": format_fraction(self.inf)}

    @staticmethod
    def from_pair(pair: dict) -> "EpsRational":
        return EpsRational(Fraction(pair["std"]), Fraction(pair["inf"]))


ZERO = EpsRational.make(0)
ONE = EpsRational.make(1)


def compare(a: EpsRational, b: EpsRational) -> int:
    """-1 / 0 / 1, consistent with the lexicographic < on EpsRational."""
    if a < b:
        return -1
    return 1 if b < a else 0


def eps_floor(x: EpsRational) -> int:
    """Largest integer <= x in the eps -> 0+ limit."""
    n = math.floor(x.std)
    if x.std == n and x.inf < 0:
        return n - 1
    return n


def eps_ceil(x: EpsRational) -> int:
    """Smallest integer >= x in the eps -> 0+ limit."""
    n = math.ceil(x.std)
    if x.std == n and x.inf > 0:
        return n + 1
    return n


def order_witness(values: Iterable[EpsRational]) -> Fraction:
    """An eps0 > 0 such that every eps in (0, eps0] realizes the order.

    For values whose standard parts differ, the eps-terms may shift each
    side by at most max|inf| * eps; keeping 2 * max|inf| * eps below the
    smallest nonzero std gap preserves those comparisons.  Values with
    equal standard parts are ordered by their inf coefficients, which any
    positive eps realizes.
    """
    vals = list(values)
    stds = sorted({v.std for v in vals})
    gaps = [b - a for a, b in zip(stds, stds[1:])]
    if not gaps:
        return Fraction(1)
    bound = max((abs(v.inf) for v in vals), default=Fraction(0))
    return min(gaps) / (2 * (1 + bound))
