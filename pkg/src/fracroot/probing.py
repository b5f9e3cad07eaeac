"""Finding starting points and checking how sensitive a system is near a zero.

Component indices in this module are 1-based, matching the canonical basis
vectors ``e_1 .. e_n`` (so component 4 of the receiver is the cell
efficiency ``v``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
import numpy.typing as npt

from .errors import BracketViolationError
from .mathcore import norm2
from .problems import ProblemDef

__all__ = [
    "Bracket1D",
    "BoxBracket",
    "StabilityCurve",
    "StabilityReport",
    "box_bracket_check",
    "bracket_pairs",
    "bracket_scan_1d",
    "stability_curve",
    "stability_probe",
]


@dataclass(frozen=True)
class Bracket1D:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def bracket_pairs(f: Callable[[float], float], points: Iterable[float]) -> list[Bracket1D]:
    """Sign-change brackets between consecutive sorted ``points``.

    A pair qualifies when ``f(lo) * f(hi) <= 0``, so a sample landing exactly
    on a zero produces brackets on both sides of it.
    """
    xs = np.sort(np.asarray(list(points), dtype=float))
    fs = [float(f(x)) for x in xs]
    out = []
    for i in range(len(xs) - 1):
        if xs[i] < xs[i + 1] and fs[i] * fs[i + 1] <= 0:
            out.append(Bracket1D(float(xs[i]), float(xs[i + 1]), fs[i], fs[i + 1]))
    return out


def bracket_scan_1d(
    f: Callable[[float], float],
    domain: tuple[float, float],
    n_samples: int,
    seed: int = 0,
) -> list[Bracket1D]:
    """Draw ``n_samples`` uniform points in ``domain`` (seeded PCG64) and bracket sign changes."""
    lo, hi = domain
    if not lo < hi:
        raise ValueError("domain must satisfy lo < hi")
    if n_samples < 2:
        raise ValueError("need at least two samples")
    rng = np.random.default_rng(seed)
    return bracket_pairs(f, rng.uniform(lo, hi, n_samples))


@dataclass(frozen=True)
class BoxBracket:
    X_a: np.ndarray
    X_b: np.ndarray
    component_products: np.ndarray

    @property
    def violations(self) -> list[int]:
        """1-based components whose residual does not change sign."""
        return [int(k) + 1 for k in np.flatnonzero(self.component_products > 0)]

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.X_a + self.X_b)


def box_bracket_check(
    problem: ProblemDef, X_a: npt.ArrayLike, X_b: npt.ArrayLike, *, raise_on_violation: bool = True
) -> BoxBracket:
    """Certificate ``f_k(X_a) * f_k(X_b) <= 0`` for every component ``k``.

    Raises :class:`BracketViolationError` naming the offending components
    unless ``raise_on_violation`` is false.
    """
    X_a = np.asarray(X_a, dtype=float)
    X_b = np.asarray(X_b, dtype=float)
    if X_a.shape != (problem.dim,) or X_b.shape != (problem.dim,):
        raise ValueError(f"box corners must have length {problem.dim}")
    products = np.real(problem(X_a)) * np.real(problem(X_b))
    box = BoxBracket(X_a, X_b, products)
    if raise_on_violation and not box.holds:
        raise BracketViolationError(box.violations, box)
    return box


def _unit(problem: ProblemDef, component: int) -> np.ndarray:
    if not 1 <= component <= problem.dim:
        raise ValueError(f"component must be in 1..{problem.dim}, got {component}")
    e = np.zeros(problem.dim)
    e[component - 1] = 1.0
    return e


@dataclass(frozen=True)
class StabilityReport:
    base_point: np.ndarray
    direction: int
    offsets: tuple[float, ...]
    residual_norms: tuple[float, ...]
    base_norm: float
    classification: str

    @property
    def deltas(self) -> tuple[float, ...]:
        return tuple(n - self.base_norm for n in self.residual_norms)


def stability_probe(
    problem: ProblemDef,
    base: npt.ArrayLike,
    component: int,
    offsets: Sequence[float],
) -> StabilityReport:
    """Residual norms at ``base + offset * e_component``.

    The point is classed unstable when some offset smaller than 1 in size
    moves the residual norm by 1 or more away from its value at ``base``.
    """
    base = np.asarray(base, dtype=float)
    e = _unit(problem, component)
    base_norm = norm2(problem(base))
    norms = tuple(norm2(problem(base + d * e)) for d in offsets)
    unstable = any(abs(d) < 1 and abs(n - base_norm) >= 1 for d, n in zip(offsets, norms))
    return StabilityReport(
        base_point=base,
        direction=component,
        offsets=tuple(float(d) for d in offsets),
        residual_norms=norms,
        base_norm=base_norm,
        classification="unstable" if unstable else "stable",
    )


@dataclass(frozen=True)
class StabilityCurve:
    """Residual components and norm along ``X(v) = base`` with slot ``component`` set to ``v``."""

    component: int
    v: np.ndarray
    residuals: np.ndarray
    norms: np.ndarray

    def header(self) -> list[str]:
        return ["v"] + [f"f{k}" for k in range(1, self.residuals.shape[1] + 1)] + ["norm"]

    def rows(self) -> np.ndarray:
        return np.column_stack([self.v, self.residuals, self.norms])


def stability_curve(
    problem: ProblemDef,
    base: npt.ArrayLike,
    component: int,
    value_range: tuple[float, float],
    n_points: int,
) -> StabilityCurve:
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    base = np.asarray(base, dtype=float)
    _unit(problem, component)
    v = np.linspace(value_range[0], value_range[1], n_points)
    X = np.tile(base, (n_points, 1))
    X[:, component - 1] = v
    F = problem(X)
    return StabilityCurve(component, v, np.real(F), norm2(F, axis=1))
