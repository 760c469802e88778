"""Adversarial lower-bound harness for online packing and scheduling.

Plays exact adversarial item streams against pluggable online algorithms
for removable multiple knapsack and minimum-peak appointment scheduling,
emits replayable ratio certificates, and reproduces the closed-form bound
constants the adversaries guarantee.
"""

from . import errors
from .baselines import KNAPSACK_BASELINES, MPAS_BASELINES, make_algorithm
from .bounds import (
    BoundSolution,
    best_cutoff,
    finite_N_bound,
    halves_constant,
    solve_tau_R,
    yao_objective,
)
from .certificates import (
    ESTIMATE_TOLERANCE,
    SCHEMA,
    build_payload,
    load_certificate,
    replay,
    save_certificate,
)
from .knapsack import (
    Action,
    Item,
    KnapsackState,
    Move,
    Pack,
    ProfitMode,
    Reject,
    legal_actions,
    minimal_removal_sets,
    play_one,
)
from .knapsack_adversaries import (
    HalvesBranch,
    HalvesCertificate,
    TwoSizeBranch,
    TwoSizeCertificate,
    branch_ratio,
    gamma_threshold,
    guaranteed_ratio,
    run_halves,
    run_two_size,
    two_size_bound,
)
from .mpas import (
    CoverageProfile,
    IntervalAssignment,
    MpasItem,
    Placement,
    build_profile,
    check_assignment,
    peak_of,
    place_one,
)
from .mpas_adversaries import (
    InstanceOutcome,
    ThirdsBranch,
    ThirdsCertificate,
    YaoCertificate,
    run_thirds,
    run_yao,
)
from .numerics import ONE, ZERO, EpsRational, compare, eps_ceil, eps_floor, order_witness
from .oracles import brute_bin_packing, brute_knapsack, verify_assignment, verify_packing
from .sizing import SizeClass, SizerState, new_sizer

__version__ = "0.1.0"

__all__ = [
    "errors",
    "KNAPSACK_BASELINES", "MPAS_BASELINES", "make_algorithm",
    "BoundSolution", "best_cutoff", "finite_N_bound", "halves_constant",
    "solve_tau_R", "yao_objective",
    "ESTIMATE_TOLERANCE", "SCHEMA", "build_payload", "load_certificate",
    "replay", "save_certificate",
    "Action", "Item", "KnapsackState", "Move", "Pack", "ProfitMode", "Reject",
    "legal_actions", "minimal_removal_sets", "play_one",
    "HalvesBranch", "HalvesCertificate", "TwoSizeBranch", "TwoSizeCertificate",
    "branch_ratio", "gamma_threshold", "guaranteed_ratio", "run_halves",
    "run_two_size", "two_size_bound",
    "CoverageProfile", "IntervalAssignment", "MpasItem", "Placement",
    "build_profile", "check_assignment", "peak_of", "place_one",
    "InstanceOutcome", "ThirdsBranch", "ThirdsCertificate", "YaoCertificate",
    "run_thirds", "run_yao",
    "ONE", "ZERO", "EpsRational", "compare", "eps_ceil", "eps_floor",
    "order_witness",
    "brute_bin_packing", "brute_knapsack", "verify_assignment", "verify_packing",
    "SizeClass", "SizerState", "new_sizer",
    "__version__",
]
