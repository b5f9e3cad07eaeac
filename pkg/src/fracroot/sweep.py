"""Multi-root search by sweeping the derivative order.

Started from one real point, the pseudo-Newton iteration lands on different
zeros (real or complex) for different orders. A sweep runs many orders,
keeps the converged end points and folds near-duplicates together.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt

from .fracderiv import FracOrder
from .mathcore import as_complex_vector, norm2
from .problems import ProblemDef
from .solvers import SolverConfig, Status, solve_batch

__all__ = [
    "DEFAULT_DOMAIN",
    "REAL_THRESHOLD",
    "RootRecord",
    "RootRegistry",
    "SweepPlan",
    "alpha_sweep",
    "classify_real",
    "make_record",
]

DEFAULT_DOMAIN = ((0.0, 1.0), (1.0, 2.0))
# Real zeros reached with a residual of ~1e-4 carry imaginary noise up to ~1e-5.
REAL_THRESHOLD = 1e-4


def classify_real(root: npt.ArrayLike, threshold: float = REAL_THRESHOLD) -> bool:
    """True when every component has ``|Im| <= threshold``."""
    return bool(np.all(np.abs(np.imag(np.asarray(root))) <= threshold))


@dataclass
class RootRecord:
    alpha_used: float
    root: np.ndarray
    last_step_norm: float
    residual_norm: float
    iterations: int
    is_real: bool


def make_record(
    problem: ProblemDef,
    alpha: float,
    x: npt.ArrayLike,
    *,
    last_step_norm: float,
    iterations: int,
    tol: float,
    real_threshold: float = REAL_THRESHOLD,
) -> RootRecord:
    """Package a converged end point, zeroing negligible imaginary parts.

    Imaginary parts are only dropped if the residual at the cleaned point
    still meets ``tol``; the stored ``residual_norm`` is always the residual
    at the stored root.
    """
    x = as_complex_vector(x)
    is_real = classify_real(x, real_threshold)
    root = x
    res = norm2(problem(x))
    if is_real:
        cleaned = x.real.astype(np.complex128)
        res_clean = norm2(problem(cleaned))
        if res_clean <= tol:
            root, res = cleaned, res_clean
    return RootRecord(
        alpha_used=float(alpha),
        root=root,
        last_step_norm=float(last_step_norm),
        residual_norm=float(res),
        iterations=int(iterations),
        is_real=is_real,
    )


@dataclass
class RootRegistry:
    """Distinct roots found so far; two roots closer than ``dedup_tol`` are one."""

    dedup_tol: float = 1e-3
    records: list[RootRecord] = field(default_factory=list)
    tally: Counter = field(default_factory=Counter)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def insert(self, candidate: RootRecord) -> Literal["inserted", "merged"]:
        """Add ``candidate`` or merge it into an existing root within ``dedup_tol``.

        On a merge the record with the smaller residual survives, in the
        position of the existing one. Replacing a record moves its root, which
        may bring it within ``dedup_tol`` of another record; such records are
        folded together the same way, so stored roots stay pairwise further
        apart than ``dedup_tol``.
        """
        for i, rec in enumerate(self.records):
            if norm2(rec.root - candidate.root) <= self.dedup_tol:
                if candidate.residual_norm < rec.residual_norm:
                    self.records[i] = candidate
                    self._settle(i)
                return "merged"
        self.records.append(candidate)
        return "inserted"

    def _settle(self, i: int) -> None:
        while True:
            moved = self.records[i]
            clash = next(
                (j for j, rec in enumerate(self.records)
                 if j != i and norm2(rec.root - moved.root) <= self.dedup_tol),
                None,
            )
            if clash is None:
                return
            keep, drop = min(i, clash), max(i, clash)
            if self.records[clash].residual_norm < moved.residual_norm:
                self.records[keep] = self.records[clash]
            else:
                self.records[keep] = moved
            del self.records[drop]
            i = keep

    def roots(self) -> np.ndarray:
        if not self.records:
            return np.empty((0, 0), dtype=np.complex128)
        return np.array([r.root for r in self.records])

    def nearest(self, point: npt.ArrayLike) -> tuple[RootRecord | None, float]:
        """Record closest to ``point`` and its distance (``None, inf`` if empty)."""
        point = as_complex_vector(point)
        best, dist = None, np.inf
        for rec in self.records:
            d = norm2(rec.root - point)
            if d < dist:
                best, dist = rec, d
        return best, float(dist)


@dataclass(frozen=True)
class SweepPlan:
    """Which orders to try and how to run and merge them.

    Orders come either from a uniform grid with spacing ``grid_step`` or from
    ``samples`` uniform draws (seeded PCG64). Both cover ``domain`` shrunk by
    ``margin`` at every interval end.
    """

    x0: tuple[complex, ...]
    base_config: SolverConfig
    samples: int = 2000
    seed: int = 0
    grid_step: float | None = None
    domain: tuple[tuple[float, float], ...] = DEFAULT_DOMAIN
    margin: float = 1e-3
    dedup_tol: float = 1e-3
    real_threshold: float = REAL_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "x0", tuple(complex(v) for v in self.x0))
        object.__setattr__(self, "domain", tuple((float(lo), float(hi)) for lo, hi in self.domain))
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")
        if self.grid_step is not None and not self.grid_step > 0:
            raise ValueError("grid_step must be positive")
        for lo, hi in self._shrunk():
            if not lo < hi:
                raise ValueError(f"domain interval too short after margin: ({lo}, {hi})")
            FracOrder(lo)
            FracOrder(hi)
            if lo < 1.0 < hi:
                raise ValueError("domain intervals must not straddle alpha = 1")

    def _shrunk(self):
        return [(lo + self.margin, hi - self.margin) for lo, hi in self.domain]

    def alphas(self) -> np.ndarray:
        """Sorted orders of this plan."""
        intervals = self._shrunk()
        if self.grid_step is not None:
            # arange can overshoot by one step; clip back into the interval
            parts = [
                np.clip(np.arange(lo, hi + 0.5 * self.grid_step, self.grid_step), lo, hi)
                for lo, hi in intervals
            ]
            return np.unique(np.concatenate(parts))
        if self.samples == 0:
            return np.empty(0)
        lengths = np.array([hi - lo for lo, hi in intervals])
        rng = np.random.default_rng(self.seed)
        u = rng.uniform(0.0, lengths.sum(), self.samples)
        edges = np.concatenate([[0.0], np.cumsum(lengths)])
        which = np.clip(np.searchsorted(edges, u, side="right") - 1, 0, len(intervals) - 1)
        starts = np.array([lo for lo, _ in intervals])
        out = starts[which] + (u - edges[which])
        highs = np.array([hi for _, hi in intervals])
        return np.sort(np.minimum(out, highs[which]))


def alpha_sweep(problem: ProblemDef, plan: SweepPlan) -> RootRegistry:
    """Solve from ``plan.x0`` for every order of the plan and collect distinct roots.

    Runs are evaluated together (see :func:`fracroot.solvers.solve_batch`)
    and merged in ascending order of alpha. ``registry.tally`` counts run
    outcomes by status.
    """
    alphas = plan.alphas()
    cfg = plan.base_config
    registry = RootRegistry(dedup_tol=plan.dedup_tol)
    registry.tally.update({s.value: 0 for s in Status})
    if alphas.size == 0:
        return registry
    batch = solve_batch(problem, plan.x0, alphas, cfg)
    for i, status in enumerate(batch.status):
        registry.tally[status.value] += 1
        if status is not Status.CONVERGED:
            continue
        rec = make_record(
            problem,
            batch.alphas[i],
            batch.final_iterates[i],
            last_step_norm=batch.last_step_norms[i],
            iterations=batch.iterations[i],
            tol=cfg.tol_residual,
            real_threshold=plan.real_threshold,
        )
        registry.insert(rec)
    return registry
