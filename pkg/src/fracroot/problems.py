"""Built-in test systems and the hybrid CPV-TEG solar receiver model.

Every residual is written against arrays of shape ``(..., n)`` so a batch of
iterates (one per derivative order in a sweep) is evaluated in one call.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from os import PathLike
from typing import Callable

import numpy as np

__all__ = [
    "ProblemDef",
    "ReceiverCoefficients",
    "ReceiverParams",
    "available_problems",
    "example1",
    "example2",
    "example3",
    "get_problem",
    "load_receiver_params",
    "receiver_coefficients",
    "receiver_problem",
]

Residual = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ProblemDef:
    """A square system ``f: C^n -> C^n`` plus metadata for running it.

    ``residual`` must be stateless and accept arrays of shape ``(..., dim)``.
    ``default_epsilon``, ``default_tol`` and ``default_max_iter`` reproduce
    the reference runs for the system.
    """

    name: str
    dim: int
    residual: Residual = field(repr=False)
    sampling_box: tuple[tuple[float, float], ...]
    reference_x0: tuple[float, ...] | None = None
    default_epsilon: float = 1e-3
    default_tol: float = 1e-4
    default_max_iter: int = 2000

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if len(self.sampling_box) != self.dim:
            raise ValueError("sampling_box needs one interval per component")
        if self.reference_x0 is not None and len(self.reference_x0) != self.dim:
            raise ValueError("reference_x0 has the wrong dimension")

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128)
        if x.shape[-1:] != (self.dim,):
            raise ValueError(f"{self.name} expects vectors of length {self.dim}, got shape {x.shape}")
        with np.errstate(all="ignore"):
            return np.asarray(self.residual(x), dtype=np.complex128)


def _stack(*components) -> np.ndarray:
    return np.stack(np.broadcast_arrays(*components), axis=-1)


# -- benchmark systems ---------------------------------------------------

def _example1_residual(x):
    x1, x2 = x[..., 0], x[..., 1]
    e, pi = math.e, math.pi
    return _stack(
        0.5 * np.sin(x1 * x2) - x2 / (4 * pi) - x1 / 2,
        (1 - 1 / (4 * pi)) * (np.exp(2 * x1) - e) + e / pi * x2 - 2 * e * x1,
    )


def example1() -> ProblemDef:
    return ProblemDef(
        name="example1",
        dim=2,
        residual=_example1_residual,
        sampling_box=((-2.0, 2.0), (-2.0, 2.0)),
        reference_x0=(1.03, 1.03),
        default_epsilon=1e-3,
    )


def _example2_residual(x):
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    return _stack(
        -3.6 * x3 * (x1**3 * x2 + 1) - 3.6 * np.cos(x2**2) + 10.8,
        -1.6 * x1 * (x1 + x2**3 * x3) - 1.6 * np.sinh(x3) + 6.4,
        -4 * x2 * (x1 * x3**3 + 1) - 4 * np.cosh(x1) + 24,
    )


def example2() -> ProblemDef:
    return ProblemDef(
        name="example2",
        dim=3,
        residual=_example2_residual,
        sampling_box=((-2.0, 2.0),) * 3,
        reference_x0=(1.12, 1.12, 1.12),
        default_epsilon=1e-3,
    )


EXAMPLE3_MATRIX = np.array([[5.0, -4.0, 3.0], [2.0, 5.0, -6.0], [-2.0, 7.0, 12.0]])
EXAMPLE3_RHS = np.array([18.0, 24.0, 30.0])


def _example3_residual(x):
    return x @ EXAMPLE3_MATRIX.T - EXAMPLE3_RHS


def example3() -> ProblemDef:
    return ProblemDef(
        name="example3",
        dim=3,
        residual=_example3_residual,
        sampling_box=((0.0, 10.0),) * 3,
        reference_x0=(0.64, 0.64, 0.64),
        default_epsilon=1e-3,
    )


# -- hybrid solar receiver -----------------------------------------------------

@dataclass(frozen=True)
class ReceiverParams:
    """Physical constants of the CPV-TEG receiver (SI units, temperatures in degC)."""

    eta_opt: float = 0.85
    C_g: float = 800.0
    DNI: float = 900.0
    r_cell: float = 3e-6
    r_sol: float = 1.603e-6
    r_cop: float = 7.5e-7
    r_cer: float = 8e-6
    k_TEG: float = 1.5
    r_intercon: float = 2.331e-7
    A_cell: float = 9e-6
    A_TEG: float = 5.04e-5
    f_star: float = 0.7
    b: float = 5e-4
    l: float = 5e-4
    T_air: float = 20.0
    R_heat_exch: float = 0.5
    eta_cell_ref: float = 0.43
    gamma_cell: float = 4.6e-4
    ZT: float = 1.0

    def __post_init__(self):
        positive = (
            "eta_opt", "C_g", "DNI", "r_cell", "r_sol", "r_cop", "r_cer", "k_TEG",
            "r_intercon", "A_cell", "A_TEG", "b", "l", "R_heat_exch",
        )
        bad = [name for name in positive if not getattr(self, name) > 0]
        if bad:
            raise ValueError(f"receiver parameters must be positive: {', '.join(bad)}")
        if not 0 < self.f_star <= 1:
            raise ValueError("f_star must lie in (0, 1]")
        if self.ZT < 0:
            raise ValueError("ZT must be nonnegative")

    @classmethod
    def from_mapping(cls, data: dict) -> "ReceiverParams":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown receiver parameters: {', '.join(unknown)}")
        return replace(cls(), **{k: float(v) for k, v in data.items()})

    def to_dict(self) -> dict:
        return asdict(self)


def load_receiver_params(path: str | PathLike) -> ReceiverParams:
    """Read a JSON object of parameter overrides; missing keys keep their defaults."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("receiver config must be a JSON object")
    return ReceiverParams.from_mapping(data)


@dataclass(frozen=True)
class ReceiverCoefficients:
    a1: float
    a2: float
    a3: float
    a4: float
    a5: float
    a6: float
    a7: float
    a8: float
    a9: float

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, f"a{i}") for i in range(1, 10))


def receiver_coefficients(params: ReceiverParams | None = None) -> ReceiverCoefficients:
    p = params or ReceiverParams()
    # thermal spreading through the interconnect
    spread = 0.5 * math.sqrt(p.f_star * p.A_TEG) * (p.b * math.sqrt(p.f_star) + math.sqrt(p.A_TEG))
    return ReceiverCoefficients(
        a1=p.eta_opt * p.C_g * p.DNI,
        a2=p.r_cell + p.r_sol + p.A_cell * ((p.r_cop + p.r_cer) / p.A_TEG + p.r_intercon / spread),
        a3=p.A_cell * p.l / (p.f_star * p.A_TEG * p.k_TEG),
        a4=p.T_air,
        a5=p.A_cell * (p.r_intercon / spread + p.r_cer / p.A_TEG + p.R_heat_exch),
        a6=-p.eta_cell_ref * p.gamma_cell,
        a7=p.eta_cell_ref * (1 + 25 * p.gamma_cell),
        a8=math.sqrt(1 + p.ZT),
        a9=273.15,
    )


def receiver_problem(params: ReceiverParams | None = None) -> ProblemDef:
    """Residual of the receiver balance in ``X = (T_cell, T_hot, T_cold, eta_cell, eta_TEG)``.

    The Kelvin offset ``a9`` enters only through the TEG temperature ratio. A
    vanishing ``T_hot + a9`` or ratio denominator yields non-finite output,
    which the solvers report as a numeric error.
    """
    c = receiver_coefficients(params)

    def residual(X):
        x, y, z, v, w = (X[..., k] for k in range(5))
        ratio = (z + c.a9) / (y + c.a9)
        return _stack(
            -x + y + c.a1 * c.a2 * (1 - v),
            -y + z + c.a1 * c.a3 * (1 - v) * (1 - w),
            -z + c.a4 + c.a1 * c.a5 * (1 - v) * (1 - w),
            -v + c.a6 * x + c.a7,
            -w + (c.a8 - 1) * (1 - ratio) / (c.a8 + ratio),
        )

    return ProblemDef(
        name="receiver",
        dim=5,
        residual=residual,
        sampling_box=((53.0, 54.0), (51.0, 52.0), (22.0, 23.0), (0.0, 1.0), (0.0, 1.0)),
        reference_x0=(53.8, 51.6, 22.1, 0.4, 0.1),
        default_epsilon=1e-4,
        # the reference receiver run stops once the residual drops below 5e-3
        default_tol=5e-3,
        # contraction per step is ~0.9997 for orders just above 1
        default_max_iter=20000,
    )


_BUILTINS = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
    "receiver": receiver_problem,
}


def available_problems() -> list[str]:
    return sorted(_BUILTINS)


def get_problem(name: str, receiver_params: ReceiverParams | None = None) -> ProblemDef:
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; choose from {available_problems()}") from None
    if name == "receiver":
        return factory(receiver_params)
    return factory()
