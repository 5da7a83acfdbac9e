"""
Vector Fourier symbols of the boundary-driven solution

For boundary data phi the solution on the Fourier side is

    u'_hat(xi, y)  = U(xi, y) phi_hat(xi)
    u_d_hat(xi, y) = (i xi m0) . phi_hat(xi)
    pi_hat(xi, y)  = (-i xi/|xi| P exp(-y |xi|)) . phi_hat(xi)

with U = -dy m0 xi xi^T/|xi|^2 + m4 (Id - xi xi^T/|xi|^2). Each function
accepts xi with the tangential components on its last axis and y
broadcastable against xi[..., 0]. The ``order`` argument returns the exact
normal derivative d^k/dy^k of the symbol.
"""

import numpy as np

from ..models.errors import InvalidParameterError, ShapeMismatchError
from ..models.params import KernelPoint, ResolventParams
from . import scalar


def _radial(params: ResolventParams, xi, y):
    xi = np.asarray(xi, dtype=float)
    if xi.ndim == 0 or xi.shape[-1] != params.tdim:
        raise ShapeMismatchError(
            f"xi must have {params.tdim} tangential components on its last axis, "
            f"got shape {xi.shape}"
        )
    s = np.sqrt(np.sum(xi * xi, axis=-1))
    point = KernelPoint(s, y)
    xi = np.broadcast_to(xi, point.shape + (params.tdim,))
    # direction xi/|xi|, zero where xi = 0
    safe = np.where(point.s > 0.0, point.s, 1.0)
    direction = np.where(point.s[..., None] > 0.0, xi / safe[..., None], 0.0)
    return xi, point, direction


def _check_order(order: int) -> None:
    if order < 0:
        raise InvalidParameterError(f"derivative order must be >= 0, got {order}")


def u_prime_symbol(params: ResolventParams, xi, y, order: int = 0) -> np.ndarray:
    """
    Tangential velocity symbol, a symmetric (d-1)x(d-1) matrix per point

    At xi = 0 the continuous extension m4(0, y) Id is returned.

    Args:
        params: Resolvent parameters
        xi: Tangential frequencies, shape (..., d-1)
        y: Wall distance(s)
        order: Normal derivative order

    Returns:
        Complex array of shape (..., d-1, d-1)
    """
    _check_order(order)
    _, point, direction = _radial(params, xi, y)
    q = scalar.sqrt_shifted(params, point.s)

    along = -scalar.dy_m0(params, point, order=order + 1)
    across = (-q) ** order * scalar.m4(params, point)
    # at s = 0 both coefficients equal m4, so the zero direction is harmless
    along = np.where(point.s > 0.0, along, across)

    projector = direction[..., :, None] * direction[..., None, :]
    identity = np.eye(params.tdim)
    return along[..., None, None] * projector + across[..., None, None] * (
        identity - projector
    )


def u_d_symbol(params: ResolventParams, xi, y, order: int = 0) -> np.ndarray:
    """
    Normal velocity symbol i xi d^k m0, a row vector of length d-1

    Args:
        params: Resolvent parameters
        xi: Tangential frequencies, shape (..., d-1)
        y: Wall distance(s)
        order: Normal derivative order

    Returns:
        Complex array of shape (..., d-1)
    """
    _check_order(order)
    xi, point, _ = _radial(params, xi, y)
    return 1j * xi * scalar.dy_m0(params, point, order=order)[..., None]


def pressure_symbol(params: ResolventParams, xi, y, order: int = 0) -> np.ndarray:
    """
    Pressure symbol in reduced form -i (xi/|xi|) P (-s)^k exp(-y s)

    Applying (lambda + s^2 - dy^2) dy to m0 annihilates the exp(-y q) branch
    and maps exp(-y s) to lambda exp(-y s), which leaves this single
    exponential. The xi = 0 mode is zero (zero tangential-mean gauge).

    Args:
        params: Resolvent parameters
        xi: Tangential frequencies, shape (..., d-1)
        y: Wall distance(s)
        order: Normal derivative order

    Returns:
        Complex array of shape (..., d-1)
    """
    _check_order(order)
    _, point, direction = _radial(params, xi, y)
    radial = (
        scalar.p_factor(params, point)
        * (-point.s) ** order
        * np.exp(-point.y * point.s)
    )
    return -1j * direction * radial[..., None]
