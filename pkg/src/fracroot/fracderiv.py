"""Closed-form Riemann-Liouville derivatives (lower limit 0) and the diagonal
pseudo-Jacobian used by the fractional pseudo-Newton iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import DomainError
from .mathcore import as_complex_vector, cpow, gamma_real

__all__ = [
    "ALPHA_MARGIN",
    "FracOrder",
    "PseudoJacobianDiag",
    "beta_switch",
    "diag_entries",
    "pseudo_jacobian_diag",
    "rl_deriv_const",
    "rl_deriv_monomial",
]

ALPHA_MARGIN = 1e-4


@dataclass(frozen=True)
class FracOrder:
    """A derivative order in ``[0, 2]`` kept at least ``margin`` away from 0, 1 and 2."""

    alpha: float
    margin: float = ALPHA_MARGIN

    def __post_init__(self):
        a = float(self.alpha)
        object.__setattr__(self, "alpha", a)
        if not np.isfinite(a) or not 0.0 <= a <= 2.0:
            raise ValueError(f"alpha must lie in [0, 2], got {a}")
        if min(abs(a - n) for n in (0.0, 1.0, 2.0)) < self.margin:
            raise ValueError(
                f"alpha={a} is within {self.margin} of an integer; "
                "the order must be non-integer"
            )

    def __float__(self):
        return self.alpha

    @classmethod
    def coerce(cls, value: "FracOrder | float") -> "FracOrder":
        return value if isinstance(value, cls) else cls(value)


@dataclass(frozen=True)
class PseudoJacobianDiag:
    entries: np.ndarray
    epsilon: float
    alpha: FracOrder


def rl_deriv_monomial(mu: float, alpha: float, x: npt.ArrayLike) -> complex | np.ndarray:
    """Order-``alpha`` derivative of ``x**mu``:
    ``Gamma(mu + 1) / Gamma(mu - alpha + 1) * x**(mu - alpha)``.

    Complex and negative ``x`` use the principal branch.
    """
    if not mu > -1:
        raise ValueError(f"mu must be > -1, got {mu}")
    expo = mu - alpha
    coef = gamma_real(mu + 1.0) / gamma_real(expo + 1.0)
    x = np.asarray(x, dtype=np.complex128)
    if expo < 0 and np.any(x == 0):
        raise DomainError("derivative of x**mu is singular at x = 0 for mu < alpha")
    out = coef * np.asarray(cpow(x, expo))
    return complex(out) if out.ndim == 0 else out


def rl_deriv_const(c: float, alpha: float, x: npt.ArrayLike) -> complex | np.ndarray:
    """Order-``alpha`` derivative of the constant ``c``: ``c * x**(-alpha) / Gamma(1 - alpha)``.

    Exactly ``alpha == 1`` gives 0, the classical derivative of a constant.
    """
    x = np.asarray(x, dtype=np.complex128)
    if alpha == 1.0:
        out = np.zeros_like(x)
    else:
        if np.any(x == 0):
            raise DomainError("derivative of a constant is singular at x = 0")
        out = (c / gamma_real(1.0 - alpha)) * np.asarray(cpow(x, -alpha))
    return complex(out) if out.ndim == 0 else out


def beta_switch(alpha: FracOrder | float, xk: complex) -> float:
    """Order actually applied to component ``xk``: ``alpha``, or 1 when ``xk`` is exactly 0."""
    return 1.0 if xk == 0 else float(alpha)


def diag_entries(x: np.ndarray, alpha: npt.ArrayLike, epsilon: float) -> np.ndarray:
    """Vectorised diagonal of the pseudo-Jacobian.

    ``x`` has shape ``(..., n)``; ``alpha`` broadcasts against ``x[..., :1]``
    (a scalar, or shape ``(m, 1)`` for a batch of orders). Zero components get
    exactly ``epsilon``.
    """
    x = np.asarray(x, dtype=np.complex128)
    alpha = np.asarray(alpha, dtype=np.float64)
    rgam = 1.0 / np.asarray(gamma_real(1.0 - alpha))
    zero = x == 0
    safe = np.where(zero, 1.0 + 0j, x)
    frac = np.asarray(cpow(safe, -alpha)) * rgam
    return np.where(zero, 0j, frac) + epsilon


def pseudo_jacobian_diag(
    x: npt.ArrayLike, alpha: FracOrder | float, epsilon: float
) -> PseudoJacobianDiag:
    """Diagonal of ``P`` at ``x``: ``D^beta 1 + epsilon`` per component.

    Off-diagonal entries vanish identically, so only the diagonal is built.
    """
    order = FracOrder.coerce(alpha)
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    x = as_complex_vector(x)
    return PseudoJacobianDiag(diag_entries(x, order.alpha, epsilon), float(epsilon), order)
