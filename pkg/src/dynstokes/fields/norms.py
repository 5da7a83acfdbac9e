"""
Lp and Sobolev quadrature norms for dynstokes

Tangential quadrature uses the uniform weight (L/n)^tdim per point, the
wall-normal quadrature the composite trapezoid rule over the levels. The
pointwise magnitude of a vector field is its Euclidean norm over components
(Frobenius norm for gradients).
"""

import math
from typing import List, Optional

import numpy as np

from ..models.errors import InvalidParameterError, ShapeMismatchError
from .containers import BoundaryField, SpectralField, _VolumeField
from .transforms import inverse_dft, to_physical, to_spectral


def _check_p(p: float) -> float:
    p = float(p)
    if not (1.0 < p < math.inf):
        raise InvalidParameterError(f"p must lie in (1, inf), got {p}")
    return p


def _volume_integral(magnitude: np.ndarray, tgrid, wgrid) -> float:
    """Integrate a nonnegative array shaped (tangential..., levels)"""
    tangential = magnitude.reshape(-1, wgrid.levels.size).sum(axis=0)
    return float(tgrid.cell_volume * np.dot(wgrid.trapezoid_weights(), tangential))


def _magnitude_p(values: np.ndarray, p: float) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(values) ** 2, axis=-1)) ** p


def lp_integral_omega(field: _VolumeField, p: float) -> float:
    """
    Integral of |u|^p over the truncated half-space (the p-th power of the norm)

    Args:
        field: Physical or spectral volume field
        p: Exponent in (1, inf)

    Returns:
        Nonnegative float
    """
    p = _check_p(p)
    physical = to_physical(field)
    return _volume_integral(_magnitude_p(physical.values, p), field.tgrid, field.wgrid)


def lp_norm_omega(field: _VolumeField, p: float) -> float:
    """
    Lp norm of a volume field over the truncated half-space

    Args:
        field: Physical or spectral volume field
        p: Exponent in (1, inf)

    Returns:
        Nonnegative float
    """
    return lp_integral_omega(field, p) ** (1.0 / _check_p(p))


def lp_norm_gamma(field: BoundaryField, p: float) -> float:
    """
    Lp norm of a boundary field over the tangential torus

    Args:
        field: Physical or spectral boundary field
        p: Exponent in (1, inf)

    Returns:
        Nonnegative float
    """
    p = _check_p(p)
    if not isinstance(field, BoundaryField):
        raise ShapeMismatchError("lp_norm_gamma expects a BoundaryField")
    physical = to_physical(field)
    integral = field.tgrid.cell_volume * float(np.sum(_magnitude_p(physical.values, p)))
    return integral ** (1.0 / p)


def spectral_l2_norm(field) -> float:
    """
    L2 norm computed from DFT coefficients (Parseval)

    Args:
        field: SpectralField or spectral BoundaryField

    Returns:
        Nonnegative float, equal to the physical L2 quadrature norm
    """
    if not field.spectral:
        raise ShapeMismatchError("spectral_l2_norm expects spectral coefficients")
    tgrid = field.tgrid
    scale = tgrid.cell_volume / tgrid.size
    squares = np.sum(np.abs(field.values) ** 2, axis=-1)
    if isinstance(field, BoundaryField):
        return math.sqrt(scale * float(np.sum(squares)))
    return math.sqrt(scale * _volume_integral(squares, tgrid, field.wgrid))


def _require_spectral_pair(*fields) -> None:
    first = fields[0]
    for field in fields:
        if not isinstance(field, SpectralField):
            raise ShapeMismatchError("derivative norms expect SpectralField inputs")
        if field.values.shape != first.values.shape or field.wgrid != first.wgrid:
            raise ShapeMismatchError("derivative fields must match the field shape")


def _tangential_derivatives(
    spectral: SpectralField, workers: Optional[int]
) -> List[np.ndarray]:
    xi = spectral.tgrid.derivative_xi()
    out = []
    for axis in range(spectral.tgrid.tdim):
        factor = 1j * xi[..., axis][..., None, None]
        out.append(inverse_dft(spectral.with_values(factor * spectral.values), workers).values)
    return out


def gradient_lp_norm(
    spectral: SpectralField,
    dy_spectral: SpectralField,
    p: float,
    workers: Optional[int] = None,
) -> float:
    """
    Lp norm of the full gradient of a field

    Tangential derivatives are spectral (multiplication by i xi), the normal
    derivative is supplied as analytic samples.

    Args:
        spectral: Field coefficients
        dy_spectral: Coefficients of the normal derivative
        p: Exponent in (1, inf)
        workers: Worker threads for scipy.fft (optional)

    Returns:
        Nonnegative float
    """
    p = _check_p(p)
    _require_spectral_pair(spectral, dy_spectral)
    parts = _tangential_derivatives(spectral, workers)
    parts.append(inverse_dft(dy_spectral, workers).values)
    jacobian = np.concatenate(parts, axis=-1)
    return _volume_integral(
        _magnitude_p(jacobian, p), spectral.tgrid, spectral.wgrid
    ) ** (1.0 / p)


def sobolev_w1p_norm(
    spectral: SpectralField,
    dy_spectral: SpectralField,
    p: float,
    workers: Optional[int] = None,
) -> float:
    """
    W^{1,p} norm (||u||_p^p + ||grad u||_p^p)^(1/p)

    Args:
        spectral: Field coefficients
        dy_spectral: Coefficients of the analytic normal derivative
        p: Exponent in (1, inf)
        workers: Worker threads for scipy.fft (optional)

    Returns:
        Nonnegative float
    """
    p = _check_p(p)
    value = lp_integral_omega(inverse_dft(spectral, workers), p)
    gradient = gradient_lp_norm(spectral, dy_spectral, p, workers) ** p
    return (value + gradient) ** (1.0 / p)


def hessian_lp_norm(
    spectral: SpectralField,
    dy_spectral: SpectralField,
    dy2_spectral: SpectralField,
    p: float,
    workers: Optional[int] = None,
) -> float:
    """
    Lp norm of all second derivatives of a field

    Tangential-tangential entries are -xi_a xi_b u_hat, mixed entries
    i xi_a dy u_hat, and the normal-normal entry the analytic dy^2 u_hat.

    Args:
        spectral: Field coefficients
        dy_spectral: Coefficients of dy u
        dy2_spectral: Coefficients of dy^2 u
        p: Exponent in (1, inf)
        workers: Worker threads for scipy.fft (optional)

    Returns:
        Nonnegative float
    """
    p = _check_p(p)
    _require_spectral_pair(spectral, dy_spectral, dy2_spectral)
    tgrid = spectral.tgrid
    xi = tgrid.derivative_xi()
    parts = []
    for a in range(tgrid.tdim):
        for b in range(tgrid.tdim):
            factor = -(xi[..., a] * xi[..., b])[..., None, None]
            # symmetric entries counted twice, as in the Frobenius norm
            parts.append(
                inverse_dft(spectral.with_values(factor * spectral.values), workers).values
            )
    mixed = _tangential_derivatives(dy_spectral, workers)
    parts.extend(mixed)
    parts.extend(mixed)
    parts.append(inverse_dft(dy2_spectral, workers).values)
    hessian = np.concatenate(parts, axis=-1)
    return _volume_integral(_magnitude_p(hessian, p), tgrid, spectral.wgrid) ** (
        1.0 / p
    )


def boundary_w1p_norm(
    field: BoundaryField, p: float, workers: Optional[int] = None
) -> float:
    """
    Discrete W^{1,p} norm of a boundary field with spectral tangential gradient

    Args:
        field: Physical or spectral boundary field
        p: Exponent in (1, inf)
        workers: Worker threads for scipy.fft (optional)

    Returns:
        Nonnegative float
    """
    p = _check_p(p)
    spectral = to_spectral(field, workers)
    xi = field.tgrid.derivative_xi()
    parts = []
    for axis in range(field.tgrid.tdim):
        factor = 1j * xi[..., axis][..., None]
        derivative = spectral.with_values(factor * spectral.values)
        parts.append(inverse_dft(derivative, workers).values)
    gradient = np.concatenate(parts, axis=-1)
    cell = field.tgrid.cell_volume
    value = lp_norm_gamma(field, p) ** p
    grad_part = cell * float(np.sum(_magnitude_p(gradient, p)))
    return (value + grad_part) ** (1.0 / p)
