"""
Richardson-extrapolated radial derivatives
"""

from typing import Callable, Tuple

import numpy as np

from ..models.errors import DerivativeBreakdownError, InvalidParameterError

DEFAULT_STEP_FACTOR = 1e-4


def radial_step(s: np.ndarray, step_factor: float = DEFAULT_STEP_FACTOR) -> np.ndarray:
    """Step h = max(s, 1) * step_factor"""
    return np.maximum(np.asarray(s, dtype=float), 1.0) * step_factor


def _central(func, s, h, order):
    if order == 1:
        return (func(s + h) - func(s - h)) / (2.0 * h)
    return (func(s + h) - 2.0 * func(s) + func(s - h)) / (h * h)


def _forward(func, s, h, order):
    if order == 1:
        return (-3.0 * func(s) + 4.0 * func(s + h) - func(s + 2.0 * h)) / (2.0 * h)
    return (
        2.0 * func(s) - 5.0 * func(s + h) + 4.0 * func(s + 2.0 * h) - func(s + 3.0 * h)
    ) / (h * h)


def _extrapolated(stencil, func, s, h, order):
    coarse = stencil(func, s, h, order)
    fine = stencil(func, s, 0.5 * h, order)
    return (4.0 * fine - coarse) / 3.0


def richardson_derivative(
    func: Callable[[np.ndarray], np.ndarray],
    s,
    order: int,
    step_factor: float = DEFAULT_STEP_FACTOR,
    strict: bool = False,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Derivative d^k f / ds^k by one Richardson extrapolation of FD quotients

    Central quotients are used where s >= h; closer to s = 0 one-sided
    second-order quotients keep every abscissa nonnegative.

    Args:
        func: Vectorised function of s (may broadcast against other axes)
        s: Abscissae (>= 0)
        order: 1 or 2
        step_factor: Relative step, h = max(s, 1) * step_factor
        strict: Raise DerivativeBreakdownError instead of flagging points

    Returns:
        Tuple (derivative, breakdown mask); flagged points hold nan
    """
    if order not in (1, 2):
        raise InvalidParameterError(f"finite-difference order must be 1 or 2, got {order}")
    s = np.asarray(s, dtype=float)
    h = radial_step(s, step_factor)

    with np.errstate(over="ignore", invalid="ignore"):
        interior = s >= h
        central = _extrapolated(_central, func, np.where(interior, s, h), h, order)
        if np.all(interior):
            values = central
        else:
            forward = _extrapolated(_forward, func, s, h, order)
            values = np.where(interior, central, forward)

    underflow = np.broadcast_to((s + 0.5 * h) == s, np.shape(values))
    breakdown = underflow | ~np.isfinite(values)
    if np.any(breakdown):
        if strict:
            raise DerivativeBreakdownError(
                f"finite-difference derivative broke down at {int(breakdown.sum())} points"
            )
        values = np.where(breakdown, np.nan, values)
    return values, breakdown


def derivative_agreement(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """
    Largest deviation between two derivative samples, relative to the largest
    analytic magnitude

    Args:
        analytic: Closed-form derivative samples
        numeric: Finite-difference samples at the same points

    Returns:
        max |analytic - numeric| / max |analytic|
    """
    scale = float(np.max(np.abs(analytic)))
    diff = float(np.max(np.abs(analytic - numeric)))
    if scale == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return diff / scale
