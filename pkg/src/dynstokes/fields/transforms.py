"""
Tangential discrete Fourier transforms for dynstokes

Convention: the forward transform is the unnormalized sum
u_hat(k) = sum_j u(x_j) exp(-i xi_k . x_j); the inverse divides by n^tdim.
"""

from typing import Optional, Union

import scipy.fft

from ..models.errors import ShapeMismatchError
from .containers import BoundaryField, PhysicalField, SpectralField

DFT_CONVENTION = "forward-unnormalized/inverse-divides-by-n^tdim"


def _axes(tdim: int):
    return tuple(range(tdim))


def forward_dft(
    field: Union[PhysicalField, BoundaryField], workers: Optional[int] = None
) -> Union[SpectralField, BoundaryField]:
    """
    Transform a physical field to tangential Fourier coefficients

    Args:
        field: PhysicalField or physical BoundaryField
        workers: Worker threads for scipy.fft (optional)

    Returns:
        SpectralField, or spectral BoundaryField for boundary input
    """
    if isinstance(field, BoundaryField):
        if field.spectral:
            raise ShapeMismatchError("boundary field is already spectral")
        values = scipy.fft.fftn(
            field.values, axes=_axes(field.tgrid.tdim), workers=workers
        )
        return BoundaryField(field.tgrid, values, spectral=True)
    if not isinstance(field, PhysicalField):
        raise ShapeMismatchError(
            f"forward_dft expects a physical field, got {type(field).__name__}"
        )
    values = scipy.fft.fftn(field.values, axes=_axes(field.tgrid.tdim), workers=workers)
    return SpectralField(field.tgrid, field.wgrid, values)


def inverse_dft(
    field: Union[SpectralField, BoundaryField], workers: Optional[int] = None
) -> Union[PhysicalField, BoundaryField]:
    """
    Transform tangential Fourier coefficients back to physical samples

    Args:
        field: SpectralField or spectral BoundaryField
        workers: Worker threads for scipy.fft (optional)

    Returns:
        PhysicalField, or physical BoundaryField for boundary input
    """
    if isinstance(field, BoundaryField):
        if not field.spectral:
            raise ShapeMismatchError("boundary field is already physical")
        values = scipy.fft.ifftn(
            field.values, axes=_axes(field.tgrid.tdim), workers=workers
        )
        return BoundaryField(field.tgrid, values, spectral=False)
    if not isinstance(field, SpectralField):
        raise ShapeMismatchError(
            f"inverse_dft expects a spectral field, got {type(field).__name__}"
        )
    values = scipy.fft.ifftn(field.values, axes=_axes(field.tgrid.tdim), workers=workers)
    return PhysicalField(field.tgrid, field.wgrid, values)


def to_physical(field, workers: Optional[int] = None):
    """Return the physical representation of any field"""
    return inverse_dft(field, workers) if field.spectral else field


def to_spectral(field, workers: Optional[int] = None):
    """Return the spectral representation of any field"""
    return field if field.spectral else forward_dft(field, workers)
