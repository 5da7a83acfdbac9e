"""
Seeded boundary data for scaling experiments
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ..fields.containers import BoundaryField
from ..fields.grids import TangentialGrid
from ..fields.transforms import inverse_dft, to_spectral
from ..models.errors import InvalidParameterError, ShapeMismatchError

logger = logging.getLogger(__name__)


def _mode_radius(tgrid: TangentialGrid) -> np.ndarray:
    k = tgrid.wavenumbers().astype(float)
    axes = np.meshgrid(*([k] * tgrid.tdim), indexing="ij")
    return np.sqrt(sum(axis * axis for axis in axes))


def band_limited_phi(
    tgrid: TangentialGrid,
    components: int,
    seed: int,
    band: Optional[float] = None,
    envelope_width: Optional[float] = None,
    amplitude: float = 1.0,
) -> BoundaryField:
    """
    Real random boundary field supported on modes |k| <= band

    Complex normal coefficients are drawn on the band, damped by the
    Gaussian envelope exp(-|k|^2 / (2 w^2)), and the real part of the
    inverse transform is normalized to RMS amplitude. The band stays below
    the Nyquist mode, so the field has no unpaired coefficient.

    Args:
        tgrid: Tangential grid
        components: Number of components (d - 1 for boundary data)
        seed: Seed of numpy's default generator
        band: Largest mode radius |k| (default n/4)
        envelope_width: Envelope width w in mode units (default n/16)
        amplitude: Root-mean-square value of the field

    Returns:
        Physical BoundaryField with real values
    """
    if components < 1:
        raise InvalidParameterError("boundary data needs at least one component")
    band = tgrid.n / 4 if band is None else float(band)
    if not 0.0 <= band < tgrid.n / 2:
        raise InvalidParameterError(
            f"band must lie in [0, n/2) = [0, {tgrid.n // 2}), got {band}"
        )
    width = max(tgrid.n / 16, 1.0) if envelope_width is None else float(envelope_width)

    rng = np.random.default_rng(seed)
    shape = tgrid.shape + (components,)
    coefficients = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    radius = _mode_radius(tgrid)
    envelope = np.where(radius <= band, np.exp(-0.5 * (radius / width) ** 2), 0.0)
    spectral = BoundaryField(tgrid, coefficients * envelope[..., None], spectral=True)

    values = inverse_dft(spectral).values.real
    rms = float(np.sqrt(np.mean(values**2)))
    if rms > 0.0:
        values = values * (amplitude / rms)
    return BoundaryField(tgrid, values)


def phi_family(
    tgrid: TangentialGrid,
    components: int,
    count: int,
    seed: int,
    band: Optional[float] = None,
) -> List[BoundaryField]:
    """
    Independent band-limited fields from child seeds of one seed

    Args:
        tgrid: Tangential grid
        components: Number of components
        count: Number of fields
        seed: Root seed
        band: Largest mode radius (default n/4)

    Returns:
        List of physical BoundaryFields
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [
        band_limited_phi(
            tgrid, components, int(child.generate_state(1)[0]), band=band
        )
        for child in children
    ]


def harmonic_phi(
    tgrid: TangentialGrid,
    mode: Sequence[int],
    amplitude: Sequence[float],
    real: bool = True,
) -> BoundaryField:
    """
    Single harmonic a cos(xi . x), or a exp(i xi . x) when real is False

    Args:
        tgrid: Tangential grid
        mode: Integer mode numbers (one per tangential axis)
        amplitude: Vector a (one entry per component)
        real: Return the cosine instead of the complex exponential

    Returns:
        Physical BoundaryField
    """
    mode = np.asarray(mode, dtype=float)
    if mode.shape != (tgrid.tdim,):
        raise ShapeMismatchError(f"mode needs {tgrid.tdim} entries, got {mode.shape}")
    xi = 2.0 * np.pi * mode / tgrid.box_length
    phase = np.tensordot(tgrid.points(), xi, axes=([-1], [0]))
    wave = np.cos(phase) if real else np.exp(1j * phase)
    return BoundaryField(tgrid, wave[..., None] * np.asarray(amplitude)[None, :])


def resample_boundary(field: BoundaryField, tgrid: TangentialGrid) -> BoundaryField:
    """
    Move a field to a finer grid of the same period by spectral zero padding

    Exact for fields without Nyquist content.

    Args:
        field: Boundary field on the coarse grid
        tgrid: Finer grid (same tdim and period, n_fine >= n)

    Returns:
        Physical BoundaryField on tgrid
    """
    coarse = field.tgrid
    if tgrid.tdim != coarse.tdim or tgrid.box_length != coarse.box_length:
        raise ShapeMismatchError("resampling needs grids with the same tdim and period")
    if tgrid.n < coarse.n:
        raise ShapeMismatchError("resampling only refines")
    spectral = to_spectral(field).values
    k = coarse.wavenumbers()
    index = np.where(k < 0, k + tgrid.n, k)
    target = np.zeros(tgrid.shape + (field.components,), dtype=complex)
    target[np.ix_(*([index] * coarse.tdim))] = spectral
    target *= (tgrid.n / coarse.n) ** coarse.tdim
    return inverse_dft(BoundaryField(tgrid, target, spectral=True))
