"""Scalar and vector numerics shared by the solvers.

Complex vectors are plain one-dimensional ``complex128`` numpy arrays. The
functions here accept scalars or arrays and broadcast like numpy ufuncs, which
lets the sweep engine push many iterates through the same code path at once.
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt

from .errors import DomainError, PoleError

__all__ = [
    "as_complex_vector",
    "complex_elementary",
    "cpow",
    "gamma_real",
    "norm2",
    "sinpi",
]

ArrayLike = npt.ArrayLike

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

POLE_TOL = 1e-12


def as_complex_vector(values: ArrayLike) -> np.ndarray:
    """Return ``values`` as a fresh 1-D complex128 array with at least one entry."""
    v = np.array(values, dtype=np.complex128, ndmin=1)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a non-empty 1-D vector, got shape {v.shape}")
    return v


def sinpi(x: ArrayLike) -> np.ndarray:
    """``sin(pi * x)`` with exact argument reduction, so zeros at integers are exact."""
    x = np.asarray(x, dtype=np.float64)
    r = np.fmod(x, 2.0)  # exact
    r = np.where(r > 1.0, r - 2.0, r)
    r = np.where(r < -1.0, r + 2.0, r)
    # fold into [-0.5, 0.5] where sin is best conditioned
    r = np.where(r > 0.5, 1.0 - r, r)
    r = np.where(r < -0.5, -1.0 - r, r)
    return np.sin(np.pi * r)


def _lanczos(x: np.ndarray) -> np.ndarray:
    # valid for x >= 0.5
    xm = x - 1.0
    acc = np.full_like(xm, _LANCZOS_COEF[0])
    for i in range(1, _LANCZOS_COEF.size):
        acc = acc + _LANCZOS_COEF[i] / (xm + i)
    t = xm + _LANCZOS_G + 0.5
    # split the power so that t**(xm+0.5) does not overflow before exp(-t) damps it
    half = t ** (0.5 * (xm + 0.5))
    return _SQRT_2PI * half * (half * np.exp(-t)) * acc


def gamma_real(x: ArrayLike) -> float | np.ndarray:
    """Gamma function of real argument.

    Uses a Lanczos approximation (g = 7, 9 terms) for ``x >= 0.5`` and the
    reflection formula ``Gamma(x) Gamma(1 - x) = pi / sin(pi x)`` below that.
    Relative error is at the 1e-14 level for ``|x| <= 30``.

    Raises
    ------
    PoleError
        If any ``x`` lies within ``1e-12`` of a nonpositive integer.

    Examples
    --------
    >>> gamma_real(5.0)
    24.0
    >>> round(gamma_real(0.5) ** 2, 12)
    3.14159265359
    """
    arr = np.asarray(x, dtype=np.float64)
    near_int = np.abs(arr - np.round(arr)) <= POLE_TOL
    if np.any(near_int & (np.round(arr) <= 0)):
        raise PoleError(f"gamma has a pole at nonpositive integers, got {x!r}")

    reflect = arr < 0.5
    direct_arg = np.where(reflect, 1.0 - arr, arr)
    g = _lanczos(direct_arg)
    with np.errstate(over="ignore", divide="ignore"):
        out = np.where(reflect, np.pi / (sinpi(arr) * g), g)
    # Gamma(n) for small positive integers is exact in double precision
    is_int = (arr == np.round(arr)) & (arr >= 1) & (arr <= 23)
    if np.any(is_int):
        fact = np.array([math.factorial(int(n) - 1) for n in np.round(arr[is_int])], dtype=float)
        out = np.array(out, copy=True)
        out[is_int] = fact
    if out.ndim == 0:
        return float(out)
    return out


def cpow(z: ArrayLike, w: ArrayLike) -> complex | np.ndarray:
    """Principal-branch complex power ``z ** w`` for real ``w``.

    The argument of ``z`` is taken in ``(-pi, pi]``; in particular a negative
    real base with a signed-zero imaginary part maps to ``+pi``, so
    ``cpow(-1, -0.5) == -1j``.

    >>> cpow(-1.0, 0.5)
    (6.123233995736766e-17+1j)
    """
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.float64)
    is_zero = z == 0
    if np.any(is_zero & (np.broadcast_to(w, np.broadcast(z, w).shape) < 0)):
        raise DomainError("0 raised to a negative power")
    arg = np.angle(z)
    arg = np.where(arg == -np.pi, np.pi, arg)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        log_mod = np.log(np.abs(z))
        expo = w * log_mod
        phase = w * arg
        mag = np.exp(expo)
        out = mag * np.cos(phase) + 1j * (mag * np.sin(phase))
    out = np.where(is_zero, np.where(w == 0, 1.0 + 0j, 0j), out)
    if out.ndim == 0:
        return complex(out)
    return out


def norm2(v: ArrayLike, axis: int = -1) -> float | np.ndarray:
    """Euclidean norm built on the complex modulus, ``sqrt(sum |v_k|^2)``."""
    arr = np.asarray(v)
    if arr.ndim == 0:
        return float(abs(arr))
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.sqrt(np.sum(np.abs(arr) ** 2, axis=axis))
    if np.ndim(out) == 0:
        return float(out)
    return out


_ELEMENTARY = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sinh": np.sinh,
    "cosh": np.cosh,
}


def complex_elementary(name: str, z: ArrayLike) -> complex | np.ndarray:
    """Evaluate one of ``sin, cos, exp, sinh, cosh`` on complex input."""
    try:
        fn = _ELEMENTARY[name]
    except KeyError:
        raise ValueError(f"unknown elementary function {name!r}") from None
    out = fn(np.asarray(z, dtype=np.complex128))
    if out.ndim == 0:
        return complex(out)
    return out
