"""JSON certificates (schema ``lbforge/1``) and their independent replay.

A certificate records everything needed to re-check a run without the
algorithm object: the full transcript(s), the claimed offline packing or
schedule, the exact ratio, and the reference bound for the parameters.
``replay`` re-referees the transcript move by move (so an illegal recorded
action is caught), recomputes every derived field from scratch, and raises
ReplayMismatch on the first disagreement with the stored payload.

All rationals are serialized as "p/q" strings; eps-aware numbers as
``{"std": "p/q", "inf": "p/q"}`` pairs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from .bounds import finite_N_bound
from .errors import ContractViolation, InfeasibleConstruction, ReplayMismatch
from .knapsack import Action, Item, KnapsackState, Move, Pack, ProfitMode, Reject
from .knapsack_adversaries import (
    BIG,
    HalvesBranch,
    HalvesCertificate,
    TwoSizeBranch,
    TwoSizeCertificate,
    gamma_threshold,
    guaranteed_ratio,
    two_size_bound,
)
from .mpas import IntervalAssignment, Placement, build_profile
from .mpas_adversaries import (
    HALF_POINT,
    ThirdsBranch,
    ThirdsCertificate,
    YaoCertificate,
    construct_opt_yao,
)
from .numerics import EpsRational, format_fraction
from .oracles import verify_assignment, verify_packing

SCHEMA = "lbforge/1"

# An estimated-mode run may fall short of the exact bound by sampling noise;
# certificates accept it when within this margin.
ESTIMATE_TOLERANCE = Fraction(1, 50)

AnyCertificate = Union[
    HalvesCertificate, TwoSizeCertificate, ThirdsCertificate, YaoCertificate
]


# ------------------------------------------------------------- encoding
def _enc_eps(x: EpsRational) -> dict[str, str]:
    return x.to_pair()


def _dec_eps(d: dict[str, str]) -> EpsRational:
    return EpsRational.from_pair(d)


def _enc_action(a: Action) -> dict[str, Any]:
    if isinstance(a, Reject):
        return {"type": "reject"}
    return {"type": "pack", "bin": a.bin, "removals": sorted(a.removals)}


def _dec_action(d: dict[str, Any]) -> Action:
    if d["type"] == "reject":
        return Reject()
    return Pack(bin=d["bin"], removals=frozenset(d["removals"]))


def _enc_move(m: Move) -> dict[str, Any]:
    return {
        "item": {"id": m.item.id, "size": _enc_eps(m.item.size)},
        "action": _enc_action(m.action),
        "loads": [_enc_eps(load) for load in m.loads],
    }


def _enc_placement(p: Placement) -> dict[str, Any]:
    return {
        "item": {"id": p.item.id, "size": _enc_eps(p.item.size)},
        "offset": _enc_eps(p.offset),
    }


def _dec_placements(entries: Sequence[dict[str, Any]]) -> list[IntervalAssignment]:
    return [
        IntervalAssignment(
            item_id=e["item"]["id"],
            size=_dec_eps(e["item"]["size"]),
            offset=_dec_eps(e["offset"]),
        )
        for e in entries
    ]


def _enc_assignment(a: IntervalAssignment) -> dict[str, Any]:
    return {"item_id": a.item_id, "size": _enc_eps(a.size), "offset": _enc_eps(a.offset)}


def _dec_assignments(entries: Sequence[dict[str, Any]]) -> list[IntervalAssignment]:
    return [
        IntervalAssignment(e["item_id"], _dec_eps(e["size"]), _dec_eps(e["offset"]))
        for e in entries
    ]


def _algorithm_block(name: str, seed: Optional[int]) -> dict[str, Any]:
    return {"name": name, "seed": seed}


# ------------------------------------------------------ payload builders
def build_payload(
    cert: AnyCertificate, algorithm: str = "custom", seed: Optional[int] = None
) -> dict[str, Any]:
    """Turn a run certificate into a JSON-serializable ``lbforge/1`` payload."""
    if isinstance(cert, HalvesCertificate):
        return _halves_payload(cert, algorithm, seed)
    if isinstance(cert, TwoSizeCertificate):
        return _two_size_payload(cert, algorithm, seed)
    if isinstance(cert, ThirdsCertificate):
        return _thirds_payload(cert, algorithm, seed)
    if isinstance(cert, YaoCertificate):
        return _yao_payload(cert, algorithm, seed)
    raise TypeError(f"unknown certificate type {type(cert).__name__}")


def _halves_payload(cert: HalvesCertificate, algorithm: str, seed) -> dict[str, Any]:
    reference = guaranteed_ratio(cert.k)
    return {
        "schema": SCHEMA,
        "adversary": "thm1",
        "algorithm": _algorithm_block(algorithm, seed),
        "params": {"k": cert.k},
        "gamma": cert.gamma,
        "branch": cert.branch.value,
        "theta": None if cert.theta is None else _enc_eps(cert.theta),
        "alg_profit": _enc_eps(cert.alg_profit),
        "opt_profit": _enc_eps(cert.opt_profit),
        "ratio": format_fraction(cert.ratio_limit),
        "reference_bound": format_fraction(reference),
        "passed": cert.ratio_limit >= reference,
        "transcript": [_enc_move(m) for m in cert.transcript],
        "opt_bins": [list(b) for b in cert.opt_bins],
    }


def _two_size_payload(cert: TwoSizeCertificate, algorithm: str, seed) -> dict[str, Any]:
    reference = two_size_bound(cert.k)
    estimated = cert.trials is not None
    margin = ESTIMATE_TOLERANCE if estimated else Fraction(0)
    return {
        "schema": SCHEMA,
        "adversary": "thm2",
        "algorithm": _algorithm_block(algorithm, seed),
        "params": {"k": cert.k},
        "mode": "estimated" if estimated else "exact",
        "x": cert.x,
        "x_mean": format_fraction(cert.x_mean),
        "trials": cert.trials,
        "trial_seed": cert.seed,
        "branch": cert.branch.value,
        "alg_profit": _enc_eps(cert.alg_profit),
        "opt_profit": _enc_eps(cert.opt_profit),
        "ratio": format_fraction(cert.ratio_limit),
        "ci95": None if cert.ci95 is None else list(cert.ci95),
        "reference_bound": format_fraction(reference),
        "passed": cert.ratio_limit >= reference - margin,
        "transcripts": [[_enc_move(m) for m in t] for t in cert.transcripts],
        "opt_bins": [list(b) for b in cert.opt_bins],
    }


def _enc_profile(assignments: Sequence[IntervalAssignment]) -> list[list[Any]]:
    profile = build_profile(assignments)
    return [[_enc_eps(bp), v] for bp, v in zip(profile.breakpoints, profile.values)]


def _thirds_payload(cert: ThirdsCertificate, algorithm: str, seed) -> dict[str, Any]:
    reference = Fraction(5, 4) - Fraction(1, 6 * cert.n)
    assignments = [
        IntervalAssignment(p.item.id, p.item.size, p.offset) for p in cert.transcript
    ]
    return {
        "schema": SCHEMA,
        "adversary": "thm3",
        "algorithm": _algorithm_block(algorithm, seed),
        "params": {"n": cert.n},
        "q": cert.q,
        "branch": cert.branch.value,
        "q_prime": cert.q_prime,
        "theta": None if cert.theta is None else _enc_eps(cert.theta),
        "alg_cost": cert.alg_cost,
        "alg_profile": _enc_profile(assignments),
        "opt_upper": cert.opt_upper,
        "ratio": format_fraction(cert.ratio_limit),
        "reference_bound": format_fraction(reference),
        "passed": cert.ratio_limit >= reference,
        "transcript": [_enc_placement(p) for p in cert.transcript],
        "opt_assignments": [_enc_assignment(a) for a in cert.opt_assignments],
    }


def _yao_payload(cert: YaoCertificate, algorithm: str, seed) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "adversary": "thm4",
        "algorithm": _algorithm_block(algorithm, seed),
        "params": {"n": cert.n, "m": cert.m, "t": cert.t},
        "per_instance": {
            str(q): {
                "alg_cost": o.alg_cost,
                "opt_cost": o.opt_cost,
                "probability": format_fraction(o.probability),
            }
            for q, o in sorted(cert.per_instance.items())
        },
        "e_alg": format_fraction(cert.e_alg),
        "e_opt": format_fraction(cert.e_opt),
        "ratio": format_fraction(cert.ratio_limit),
        "reference_bound": format_fraction(cert.reference_bound),
        "passed": cert.ratio_limit >= cert.reference_bound,
        "prefix_transcript": [_enc_placement(p) for p in cert.prefix_transcript],
        "continuation_transcripts": {
            str(q): [_enc_placement(p) for p in moves]
            for q, moves in sorted(cert.continuation_transcripts.items())
        },
    }


# ---------------------------------------------------------------- files
def save_certificate(payload: dict[str, Any], path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_certificate(path: Union[str, Path]) -> dict[str, Any]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("schema") != SCHEMA:
        raise ValueError(f"unsupported certificate schema {payload.get('schema')!r}")
    return payload


# --------------------------------------------------------------- replay
def _expect(payload: dict[str, Any], key: str, recomputed: Any) -> None:
    stored = payload.get(key)
    if stored != recomputed:
        raise ReplayMismatch(f"{key}: stored {stored!r}, replay got {recomputed!r}")


def _replay_moves(entries: Sequence[dict[str, Any]], k: int) -> tuple[KnapsackState, list[Item]]:
    """Re-referee a recorded move list; loads must match after every move."""
    state = KnapsackState.empty(k)
    items: list[Item] = []
    for e in entries:
        item = Item(e["item"]["id"], _dec_eps(e["item"]["size"]))
        items.append(item)
        state = state.apply(item, _dec_action(e["action"]))
        if state.loads() != tuple(_dec_eps(load) for load in e["loads"]):
            raise ReplayMismatch(f"bin loads diverge after item {item.id}")
    return state, items


def replay(payload: dict[str, Any]) -> dict[str, Any]:
    """Recompute a payload's verdict from its transcripts alone.

    Returns ``{"adversary", "ratio", "reference_bound", "passed"}`` with
    exact Fractions.  Raises ReplayMismatch if any recorded action is
    illegal or any stored field disagrees with the recomputation.
    """
    if payload.get("schema") != SCHEMA:
        raise ReplayMismatch(f"unsupported schema {payload.get('schema')!r}")
    handlers = {
        "thm1": _replay_halves,
        "thm2": _replay_two_size,
        "thm3": _replay_thirds,
        "thm4": _replay_yao,
    }
    adversary = payload.get("adversary")
    if adversary not in handlers:
        raise ReplayMismatch(f"unknown adversary {adversary!r}")
    try:
        return handlers[adversary](payload)
    except (ContractViolation, InfeasibleConstruction) as exc:
        raise ReplayMismatch(f"recorded run is not legal: {exc}") from exc


def _finish(
    payload: dict[str, Any], adversary: str, ratio: Fraction, reference: Fraction,
    margin: Fraction = Fraction(0),
) -> dict[str, Any]:
    passed = ratio >= reference - margin
    _expect(payload, "ratio", format_fraction(ratio))
    _expect(payload, "reference_bound", format_fraction(reference))
    _expect(payload, "passed", passed)
    return {
        "adversary": adversary,
        "ratio": ratio,
        "reference_bound": reference,
        "passed": passed,
    }


def _replay_halves(payload: dict[str, Any]) -> dict[str, Any]:
    k = payload["params"]["k"]
    phase1, _ = _replay_moves(payload["transcript"][:k], k)
    gamma = sum(1 for b in phase1.bins if len(b) == 2)
    _expect(payload, "gamma", gamma)
    branch = (
        HalvesBranch.BIG_ITEMS
        if gamma >= gamma_threshold(k)
        else HalvesBranch.THETA_ITEMS
    )
    _expect(payload, "branch", branch.value)
    state, items = _replay_moves(payload["transcript"], k)
    alg_profit = state.profit(ProfitMode.PROPORTIONAL)
    _expect(payload, "alg_profit", _enc_eps(alg_profit))
    opt_profit = verify_packing(items, k, payload["opt_bins"])
    _expect(payload, "opt_profit", _enc_eps(opt_profit))
    return _finish(
        payload, "thm1", opt_profit.std / alg_profit.std, guaranteed_ratio(k)
    )


def _replay_two_size(payload: dict[str, Any]) -> dict[str, Any]:
    k = payload["params"]["k"]
    estimated = payload["mode"] == "estimated"
    xs: list[int] = []
    profits: list[EpsRational] = []
    items: list[Item] = []
    for entries in payload["transcripts"]:
        phase1, _ = _replay_moves(entries[: 4 * k], k)
        xs.append(
            sum(1 for b in phase1.bins if len(b) == 1 and next(iter(b)).size == BIG)
        )
        state, items = _replay_moves(entries, k)
        profits.append(state.profit(ProfitMode.PROPORTIONAL))
    x_mean = Fraction(sum(xs), len(xs))
    _expect(payload, "x_mean", format_fraction(x_mean))
    if not estimated:
        _expect(payload, "x", xs[0])
    branch = (
        TwoSizeBranch.THIRD_PLUS_EPS
        if 2 * x_mean <= k
        else TwoSizeBranch.TWO_THIRDS_MINUS_3EPS
    )
    _expect(payload, "branch", branch.value)
    alg_profit = sum(profits, EpsRational.make(0)) / len(profits)
    _expect(payload, "alg_profit", _enc_eps(alg_profit))
    opt_profit = verify_packing(items, k, payload["opt_bins"])
    _expect(payload, "opt_profit", _enc_eps(opt_profit))
    margin = ESTIMATE_TOLERANCE if estimated else Fraction(0)
    return _finish(
        payload, "thm2", opt_profit.std / alg_profit.std, two_size_bound(k), margin
    )


def _replay_thirds(payload: dict[str, Any]) -> dict[str, Any]:
    n = payload["params"]["n"]
    assignments = _dec_placements(payload["transcript"])
    q = sum(1 for a in assignments[: 12 * n] if a.covers(HALF_POINT))
    _expect(payload, "q", q)
    if q >= 5 * n:
        branch = ThirdsBranch.STOP_HIGH
    elif q <= 2 * n:
        branch = ThirdsBranch.STOP_LOW
    elif q >= 3 * n:
        branch = ThirdsBranch.TWO_THIRDS
    else:
        branch = ThirdsBranch.THETA_ITEMS
    _expect(payload, "branch", branch.value)
    _expect(payload, "q_prime", 3 * (q // 3) if branch is ThirdsBranch.THETA_ITEMS else 0)
    alg_cost = verify_assignment(assignments).peak()
    _expect(payload, "alg_cost", alg_cost)
    _expect(payload, "alg_profile", _enc_profile(assignments))
    opt_assignments = _dec_assignments(payload["opt_assignments"])
    if sorted((a.item_id, a.size) for a in opt_assignments) != sorted(
        (a.item_id, a.size) for a in assignments
    ):
        raise ReplayMismatch("claimed optimum does not schedule the instance items")
    opt_cost = verify_assignment(opt_assignments).peak()
    _expect(payload, "opt_upper", opt_cost)
    reference = Fraction(5, 4) - Fraction(1, 6 * n)
    return _finish(payload, "thm3", Fraction(alg_cost, opt_cost), reference)


def _replay_yao(payload: dict[str, Any]) -> dict[str, Any]:
    params = payload["params"]
    n, m, t = params["n"], params["m"], params["t"]
    sliver = EpsRational.make(Fraction(1, n))
    prefix = _dec_placements(payload["prefix_transcript"])
    if len(prefix) != n * m or any(a.size != sliver for a in prefix):
        raise ReplayMismatch("prefix transcript is not N*M items of size 1/N")
    prefix_peak = verify_assignment(prefix).peak()

    per_instance: dict[str, dict[str, Any]] = {}
    e_alg = Fraction(0)
    e_opt = Fraction(0)
    for q in range(t, n // 2):
        cont = _dec_placements(payload["continuation_transcripts"][str(q)])
        long_size = EpsRational.make(Fraction(n - q, n))
        if len(cont) != m * n // q or any(a.size != long_size for a in cont):
            raise ReplayMismatch(f"continuation {q} has wrong item multiset")
        alg_cost = verify_assignment(prefix + cont).peak()
        _, opt_cost = construct_opt_yao(n, m, q)
        prob = Fraction(2, n)
        per_instance[str(q)] = {
            "alg_cost": alg_cost,
            "opt_cost": opt_cost,
            "probability": format_fraction(prob),
        }
        e_alg += prob * alg_cost
        e_opt += prob * opt_cost
    _, prefix_opt = construct_opt_yao(n, m, n // 2)
    prob = Fraction(2 * t, n)
    per_instance[str(n // 2)] = {
        "alg_cost": prefix_peak,
        "opt_cost": prefix_opt,
        "probability": format_fraction(prob),
    }
    e_alg += prob * prefix_peak
    e_opt += prob * prefix_opt
    _expect(payload, "per_instance", per_instance)
    _expect(payload, "e_alg", format_fraction(e_alg))
    _expect(payload, "e_opt", format_fraction(e_opt))
    return _finish(payload, "thm4", e_alg / e_opt, finite_N_bound(n, t))
