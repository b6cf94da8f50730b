"""Numerical laboratory for a 4-state absorbing zero-sum game.

The game has two nonabsorbing states (payoff +1 / -1), two absorbing states,
and both players choosing actions in [0, 1/16]. Transition probabilities are
built so that the discounted value is exactly s(l) + d(l) at the plus state
and s(l) - d(l) at the minus state for a chosen function pair (s, d); the
module solves the discounted and n-stage games independently of that closed
form and measures how the values oscillate as the discount vanishes.
"""

from ._core import (
    ACTION_BOUND,
    LAMBDA_FLOOR,
    BoundCertificate,
    DegenerateSystemError,
    DiscountedSolution,
    EqualizingCheck,
    EqualizingCheckRow,
    FeasibilityReport,
    FiniteGameSpec,
    FiniteSolution,
    GameState,
    NonConvergenceError,
    NStageSolution,
    OccupationResult,
    OscillationReport,
    PFunctionStats,
    Schedule,
    ScheduleKind,
    SDProfile,
    SimulationResult,
    SweepResult,
    SweepRow,
    TransferReport,
    TransferRow,
    TransitionKernel,
    ValuePair,
    base_action_grid,
    bound_certificate,
    check_equalizing_mc,
    check_transfer,
    closed_form_value,
    equalizing_residuals,
    f1,
    f2,
    finite_limit_value,
    kernel_general,
    kernel_sqrt,
    occupation_check,
    oscillation_report,
    scan_feasibility,
    simulate_discounted,
    solve_discounted,
    solve_finite,
    solve_nstage,
    sweep_values,
    value_derivative,
)

__all__ = [
    "ACTION_BOUND",
    "LAMBDA_FLOOR",
    "BoundCertificate",
    "DegenerateSystemError",
    "DiscountedSolution",
    "EqualizingCheck",
    "EqualizingCheckRow",
    "FeasibilityReport",
    "FiniteGameSpec",
    "FiniteSolution",
    "GameState",
    "NonConvergenceError",
    "NStageSolution",
    "OccupationResult",
    "OscillationReport",
    "PFunctionStats",
    "Schedule",
    "ScheduleKind",
    "SDProfile",
    "SimulationResult",
    "SweepResult",
    "SweepRow",
    "TransferReport",
    "TransferRow",
    "TransitionKernel",
    "ValuePair",
    "base_action_grid",
    "bound_certificate",
    "check_equalizing_mc",
    "check_transfer",
    "closed_form_value",
    "equalizing_residuals",
    "f1",
    "f2",
    "finite_limit_value",
    "kernel_general",
    "kernel_sqrt",
    "occupation_check",
    "oscillation_report",
    "scan_feasibility",
    "simulate_discounted",
    "solve_discounted",
    "solve_finite",
    "solve_nstage",
    "sweep_values",
    "value_derivative",
]

__version__ = "0.1.0"
