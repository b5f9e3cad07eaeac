"""Fixed-point iteration engines.

Two iteration functions are provided, both of the form ``x <- x - D f(x)``
with a diagonal ``D``:

* fractional pseudo-Newton: ``D = diag(D^beta 1 + eps)`` evaluated at ``x``;
* parallel chord: ``D = I / m`` for a user-chosen slope ``m``.

Neither needs a Jacobian or a linear solve, and both converge at most
linearly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
import numpy.typing as npt

from .errors import InsufficientDataError, NumericError
from .fracderiv import FracOrder, diag_entries
from .mathcore import as_complex_vector, norm2
from .problems import ProblemDef

__all__ = [
    "BatchOutcome",
    "ConvergenceEstimate",
    "IterationTrace",
    "SolveOutcome",
    "SolverConfig",
    "Status",
    "estimate_convergence_order",
    "parallel_chord_step",
    "pseudo_newton_step",
    "solve",
    "solve_batch",
    "solve_parallel_chord",
]


class Status(str, enum.Enum):
    CONVERGED = "converged"
    MAX_ITER_EXCEEDED = "max_iter_exceeded"
    DIVERGED = "diverged"
    NUMERIC_ERROR = "numeric_error"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SolverConfig:
    """Settings for one pseudo-Newton run.

    Convergence is declared on ``norm2(f(x)) <= tol_residual`` alone;
    ``tol_step`` is only used to flag small final steps in the outcome.
    """

    alpha: FracOrder
    epsilon: float = 1e-4
    tol_residual: float = 1e-4
    tol_step: float = 1e-4
    max_iter: int = 2000
    divergence_bound: float = 1e10

    def __post_init__(self):
        object.__setattr__(self, "alpha", FracOrder.coerce(self.alpha))
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        for name in ("tol_residual", "tol_step", "divergence_bound"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")

    @classmethod
    def for_problem(cls, problem: ProblemDef, alpha, **overrides) -> "SolverConfig":
        """Config using the problem's own defaults; ``None`` overrides are ignored."""
        kwargs = {
            "epsilon": problem.default_epsilon,
            "tol_residual": problem.default_tol,
            "max_iter": problem.default_max_iter,
        }
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(alpha=alpha, **kwargs)


@dataclass
class IterationTrace:
    """Accepted iterates ``x_0 .. x_N`` with ``residual_norms[i] = |f(x_i)|``
    and ``step_norms[i] = |x_{i+1} - x_i|``.

    A converged trace has one fewer step than iterates. When a run stops on
    divergence or a non-finite value, the rejected iterate is not stored but
    the step that produced it is, so both lists have equal length.
    """

    iterates: list[np.ndarray] = field(default_factory=list)
    step_norms: list[float] = field(default_factory=list)
    residual_norms: list[float] = field(default_factory=list)

    def __len__(self):
        return len(self.iterates)


@dataclass
class SolveOutcome:
    status: Status
    root: np.ndarray | None
    iterations: int
    residual_norm: float
    last_step_norm: float
    final_iterate: np.ndarray
    trace: IterationTrace | None = None
    step_below_tol: bool = False

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


Update = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

_CODES = (Status.CONVERGED, Status.MAX_ITER_EXCEEDED, Status.DIVERGED, Status.NUMERIC_ERROR)


def _check_dim(problem: ProblemDef, x: npt.ArrayLike) -> np.ndarray:
    x = as_complex_vector(x)
    if x.size != problem.dim:
        raise ValueError(f"x has length {x.size}, {problem.name} needs {problem.dim}")
    return x


def _pn_update(alphas: np.ndarray, epsilon: float) -> Update:
    def update(x, fx, rows):
        return x - diag_entries(x, alphas[rows][:, None], epsilon) * fx

    return update


def pseudo_newton_step(
    problem: ProblemDef, x: npt.ArrayLike, alpha: FracOrder | float, epsilon: float
) -> np.ndarray:
    """One fractional pseudo-Newton update ``x - P(x) f(x)``."""
    order = FracOrder.coerce(alpha)
    x = _check_dim(problem, x)[None, :]
    fx = problem(x)
    if not np.all(np.isfinite(fx)):
        raise NumericError(f"non-finite residual at {x[0]}")
    with np.errstate(all="ignore"):
        out = _pn_update(np.array([order.alpha]), epsilon)(x, fx, np.array([0]))
    if not np.all(np.isfinite(out)):
        raise NumericError("non-finite iterate")
    return out[0]


def parallel_chord_step(problem: ProblemDef, x: npt.ArrayLike, m: float) -> np.ndarray:
    """One parallel chord update ``x - f(x) / m``."""
    if m == 0:
        raise ZeroDivisionError("parallel chord slope must be nonzero")
    x = _check_dim(problem, x)
    fx = problem(x)
    if not np.all(np.isfinite(fx)):
        raise NumericError(f"non-finite residual at {x}")
    return x - fx / m


@dataclass
class BatchOutcome:
    """Per-row results of :func:`solve_batch`, aligned with ``alphas``."""

    alphas: np.ndarray
    status: list[Status]
    final_iterates: np.ndarray
    iterations: np.ndarray
    residual_norms: np.ndarray
    last_step_norms: np.ndarray

    def __len__(self):
        return self.alphas.size


def _run(
    problem: ProblemDef,
    x0: np.ndarray,
    m: int,
    update: Update,
    *,
    tol_residual: float,
    max_iter: int,
    divergence_bound: float,
    trace: IterationTrace | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    # Every caller, single or batched, goes through this loop on (m, n)
    # arrays so that a row's arithmetic never depends on how it was launched.
    x = np.tile(x0, (m, 1))
    iterations = np.zeros(m, dtype=np.int64)
    res_norms = np.full(m, np.nan)
    step_norms = np.full(m, np.nan)
    codes = np.full(m, -1, dtype=np.int8)
    active = np.arange(m)

    it = 0
    while active.size:
        xa = x[active]
        with np.errstate(all="ignore"):
            bad = ~np.all(np.isfinite(xa), axis=1)
            div = ~bad & (norm2(xa, axis=1) > divergence_bound)
            fx = problem(xa)
            bad |= ~div & ~np.all(np.isfinite(fx), axis=1)
            rn = norm2(fx, axis=1)
        ok = ~bad & ~div
        res_norms[active[ok]] = rn[ok]
        conv = ok & (rn <= tol_residual)
        stop = ok & ~conv & (it >= max_iter)
        if trace is not None and ok[0]:
            trace.iterates.append(xa[0].copy())
            trace.residual_norms.append(float(rn[0]))

        codes[active[conv]] = 0
        codes[active[stop]] = 1
        codes[active[div]] = 2
        codes[active[bad]] = 3
        iterations[active] = it

        keep = ok & ~conv & ~stop
        active = active[keep]
        if not active.size:
            break
        xa, fx = xa[keep], fx[keep]
        with np.errstate(all="ignore"):
            x_new = update(xa, fx, active)
            sn = norm2(x_new - xa, axis=1)
        sn = np.where(np.all(np.isfinite(x_new), axis=1), sn, np.inf)
        step_norms[active] = sn
        if trace is not None:
            trace.step_norms.append(float(sn[0]))
        x[active] = x_new
        it += 1

    return codes, x, iterations, res_norms, step_norms


def _single(problem, x0, update, *, tol_residual, tol_step, max_iter, divergence_bound, keep_trace):
    x0 = _check_dim(problem, x0)
    trace = IterationTrace() if keep_trace else None
    codes, x, iters, rn, sn = _run(
        problem,
        x0,
        1,
        update,
        tol_residual=tol_residual,
        max_iter=max_iter,
        divergence_bound=divergence_bound,
        trace=trace,
    )
    status = _CODES[codes[0]]
    return SolveOutcome(
        status=status,
        root=x[0].copy() if status is Status.CONVERGED else None,
        iterations=int(iters[0]),
        residual_norm=float(rn[0]),
        last_step_norm=float(sn[0]),
        final_iterate=x[0].copy(),
        trace=trace,
        step_below_tol=bool(sn[0] <= tol_step),
    )


def solve(
    problem: ProblemDef,
    x0: npt.ArrayLike,
    config: SolverConfig,
    keep_trace: bool = False,
) -> SolveOutcome:
    """Run the fractional pseudo-Newton iteration from ``x0``.

    Failures are reported through ``SolveOutcome.status``; nothing is raised
    for divergence or non-finite arithmetic.

    Examples
    --------
    >>> from fracroot.problems import example3
    >>> out = solve(example3(), [0.64] * 3, SolverConfig(alpha=0.90162, epsilon=1e-3))
    >>> out.status.value, out.iterations
    ('converged', 65)
    """
    return _single(
        problem,
        x0,
        _pn_update(np.array([config.alpha.alpha]), config.epsilon),
        tol_residual=config.tol_residual,
        tol_step=config.tol_step,
        max_iter=config.max_iter,
        divergence_bound=config.divergence_bound,
        keep_trace=keep_trace,
    )


def solve_parallel_chord(
    problem: ProblemDef,
    x0: npt.ArrayLike,
    slope: float,
    *,
    tol_residual: float = 1e-4,
    tol_step: float = 1e-4,
    max_iter: int = 2000,
    divergence_bound: float = 1e10,
    keep_trace: bool = False,
) -> SolveOutcome:
    """Run the parallel chord iteration ``x <- x - f(x) / slope``."""
    if slope == 0:
        raise ZeroDivisionError("parallel chord slope must be nonzero")
    return _single(
        problem,
        x0,
        lambda x, fx, rows: x - fx / slope,
        tol_residual=tol_residual,
        tol_step=tol_step,
        max_iter=max_iter,
        divergence_bound=divergence_bound,
        keep_trace=keep_trace,
    )


def solve_batch(
    problem: ProblemDef,
    x0: npt.ArrayLike,
    alphas: npt.ArrayLike,
    config: SolverConfig,
) -> BatchOutcome:
    """Run :func:`solve` for many orders at once from the same start.

    ``config.alpha`` is ignored; row ``i`` uses ``alphas[i]``. Each row
    reproduces the corresponding single :func:`solve` call bit for bit.
    """
    alphas = np.asarray([FracOrder.coerce(a).alpha for a in np.ravel(alphas)], dtype=float)
    if alphas.size == 0:
        n = problem.dim
        return BatchOutcome(alphas, [], np.empty((0, n), complex), np.empty(0, np.int64),
                            np.empty(0), np.empty(0))
    codes, x, iters, rn, sn = _run(
        problem,
        _check_dim(problem, x0),
        alphas.size,
        _pn_update(alphas, config.epsilon),
        tol_residual=config.tol_residual,
        max_iter=config.max_iter,
        divergence_bound=config.divergence_bound,
    )
    return BatchOutcome(
        alphas=alphas,
        status=[_CODES[c] for c in codes],
        final_iterates=x,
        iterations=iters,
        residual_norms=rn,
        last_step_norms=sn,
    )


class ConvergenceEstimate(NamedTuple):
    order: float
    factor: float


def estimate_convergence_order(
    trace: IterationTrace, tail: int = 10, proxy_margin: float = 100.0
) -> ConvergenceEstimate:
    """Fit ``log e_{k+1} = log C + p log e_k`` over the last ``tail`` usable pairs.

    The final iterate stands in for the unknown root, so ``e_k`` is the
    distance from iterate ``k`` to the last one. Near the end of the trace
    that distance is dominated by the proxy's own error, which inflates the
    slope; a pair is usable only when ``e_{k+1}`` exceeds ``proxy_margin``
    times the final step length (and neither error is zero).
    """
    if len(trace.iterates) < 5:
        raise InsufficientDataError("need at least 5 iterates to estimate an order")
    xi = trace.iterates[-1]
    floor = proxy_margin * norm2(trace.iterates[-1] - trace.iterates[-2])
    errs = np.array([norm2(x - xi) for x in trace.iterates[:-1]])
    pairs = [(a, b) for a, b in zip(errs[:-1], errs[1:]) if a > 0 and b > 0 and b >= floor]
    pairs = pairs[-tail:]
    if len(pairs) < 3:
        raise InsufficientDataError("fewer than 3 usable error pairs in the trace")
    lx, ly = np.log(np.array(pairs)).T
    slope, intercept = np.polyfit(lx, ly, 1)
    return ConvergenceEstimate(order=float(slope), factor=float(np.exp(intercept)))
