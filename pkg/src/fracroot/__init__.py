"""Derivative-free root finding for nonlinear systems with fractional pseudo-Newton steps.

The iteration ``x <- x - diag(D^alpha 1 + eps) f(x)`` needs only residual
evaluations. Sweeping the order ``alpha`` from a single start point reaches
several distinct (real and complex) zeros of the same system.
"""

from .errors import (
    BracketViolationError,
    DomainError,
    FracrootError,
    InsufficientDataError,
    NumericError,
    PoleError,
)
from .fracderiv import FracOrder, pseudo_jacobian_diag, rl_deriv_const, rl_deriv_monomial
from .mathcore import cpow, gamma_real, norm2
from .probing import box_bracket_check, bracket_scan_1d, stability_curve, stability_probe
from .problems import (
    ProblemDef,
    ReceiverParams,
    available_problems,
    get_problem,
    receiver_coefficients,
    receiver_problem,
)
from .solvers import (
    SolverConfig,
    SolveOutcome,
    Status,
    estimate_convergence_order,
    solve,
    solve_batch,
    solve_parallel_chord,
)
from .sweep import RootRegistry, SweepPlan, alpha_sweep

__version__ = "0.1.0"

__all__ = [
    "BracketViolationError",
    "DomainError",
    "FracOrder",
    "FracrootError",
    "InsufficientDataError",
    "NumericError",
    "PoleError",
    "ProblemDef",
    "ReceiverParams",
    "RootRegistry",
    "SolveOutcome",
    "SolverConfig",
    "Status",
    "SweepPlan",
    "alpha_sweep",
    "available_problems",
    "box_bracket_check",
    "bracket_scan_1d",
    "cpow",
    "estimate_convergence_order",
    "gamma_real",
    "get_problem",
    "norm2",
    "pseudo_jacobian_diag",
    "receiver_coefficients",
    "receiver_problem",
    "rl_deriv_const",
    "rl_deriv_monomial",
    "solve",
    "solve_batch",
    "solve_parallel_chord",
    "stability_curve",
    "stability_probe",
]
