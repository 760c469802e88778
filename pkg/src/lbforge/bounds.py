"""Closed-form bound constants and the finite-N expected-ratio bound.

Three quantities certified by the test suite against independent arithmetic:

* ``halves_constant`` - the large-k limit of the near-half adversary's
  guarantee, the fixed point where its two branch ratios meet:
  3/4 + sqrt(33)/12 = 1.2287135...

* ``solve_tau_R`` - the optimal prefix cutoff fraction tau for the
  distribution-based scheduling adversary, maximizing
  R(tau) = 1 + (1/2 - tau)/(tau - ln(2 tau)) over (0, 1/2) by
  golden-section search: tau ~ 0.212072, R ~ 1.2691534.

* ``finite_N_bound(N, t)`` - the exact rational version of R at a finite
  grid size: (1/2 + S)/(t/N + S) with S = sum_{q=t}^{N/2-1} 1/q.  The sum
  is computed exactly; gmpy2 keeps the million-term case around a second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq


def halves_constant() -> float:
    """lim_k of the near-half adversary guarantee: 3/4 + sqrt(33)/12."""
    return 0.75 + math.sqrt(33.0) / 12.0


def yao_objective(tau: float) -> float:
    """R(tau) = 1 + (1/2 - tau)/(tau - ln(2 tau)) on (0, 1/2)."""
    return 1.0 + (0.5 - tau) / (tau - math.log(2.0 * tau))


@dataclass(frozen=True)
class BoundSolution:
    tau: float
    value: float
    iterations: int


def solve_tau_R(tol: float = 1e-9) -> BoundSolution:
    """Maximize the unimodal yao_objective by golden-section search."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = 1e-6, 0.5 - 1e-6
    a = hi - (hi - lo) * invphi
    b = lo + (hi - lo) * invphi
    fa, fb = yao_objective(a), yao_objective(b)
    iterations = 0
    while hi - lo > tol:
        iterations += 1
        if fa < fb:
            lo, a, fa = a, b, fb
            b = lo + (hi - lo) * invphi
            fb = yao_objective(b)
        else:
            hi, b, fb = b, a, fa
            a = hi - (hi - lo) * invphi
            fa = yao_objective(a)
    tau = (lo + hi) / 2.0
    return BoundSolution(tau=tau, value=yao_objective(tau), iterations=iterations)


def _harmonic(start: int, stop: int) -> mpq:
    """sum_{q=start}^{stop-1} 1/q exactly, by balanced pairwise reduction."""
    terms = [mpq(1, q) for q in range(start, stop)]
    if not terms:
        return mpq(0)
    while len(terms) > 1:
        merged = [terms[i] + terms[i + 1] for i in range(0, len(terms) - 1, 2)]
        if len(terms) % 2:
            merged.append(terms[-1])
        terms = merged
    return terms[0]


@lru_cache(maxsize=None)
def finite_N_bound(n: int, t: int) -> Fraction:
    """(1/2 + S)/(t/N + S), S = sum_{q=t}^{N/2-1} 1/q, as an exact rational.

    This is what the Yao-style adversary's expected ratio provably reaches
    at grid size N with prefix cutoff t, for every compliant algorithm.
    """
    if n < 4 or n % 2:
        raise ValueError("N must be even and at least 4")
    if not 1 <= t <= n // 2 - 1:
        raise ValueError("need 1 <= t <= N/2 - 1")
    s = _harmonic(t, n // 2)
    value = (mpq(1, 2) + s) / (mpq(t, n) + s)
    return Fraction(int(value.numerator), int(value.denominator))


def best_cutoff(n: int) -> int:
    """The t maximizing finite_N_bound(n, .), exactly.

    Small n: exact scan with an incrementally extended harmonic sum.  Large
    n: float scan for a candidate, then exact comparison on a window around
    it (the objective is unimodal in t).
    """
    if n < 4 or n % 2:
        raise ValueError("N must be even and at least 4")
    half = n // 2
    if half - 1 == 1:
        return 1

    def exact_argmax(candidates: list[int]) -> int:
        best_t, best_v = None, None
        for t in sorted(candidates):
            v = finite_N_bound(n, t)
            if best_v is None or v > best_v:
                best_t, best_v = t, v
        return best_t

    if n <= 4096:
        return exact_argmax(list(range(1, half)))
    # float pass: S(t) built backwards so each t costs O(1)
    s = 0.0
    best_t, best_v = half - 1, -1.0
    for t in range(half - 1, 0, -1):
        s += 1.0 / t
        v = (0.5 + s) / (t / n + s)
        if v > best_v:
            best_t, best_v = t, v
    window = [t for t in range(best_t - 3, best_t + 4) if 1 <= t <= half - 1]
    return exact_argmax(window)
