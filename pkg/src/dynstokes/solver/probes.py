"""
Solenoidal test fields for the integral formulation
"""

from typing import Optional

import numpy as np

from ..fields.containers import BoundaryField, PhysicalField, SpectralField
from ..fields.grids import TangentialGrid, WallGrid
from ..fields.transforms import inverse_dft, to_spectral
from ..models.errors import InvalidParameterError, ShapeMismatchError


class SolenoidalProbe:
    """
    Divergence-free test field with zero normal trace

    Built from tangential coefficients b_hat and the profile
    g(y) = y exp(-kappa y):

        v'_hat  = -b_hat g'(y)
        v_d_hat = (i xi . b_hat) g(y)

    so i xi . v'_hat + dy v_d_hat = 0 and v_d(0) = 0.
    """

    def __init__(
        self,
        tgrid: TangentialGrid,
        wgrid: WallGrid,
        b: BoundaryField,
        kappa: Optional[float] = None,
    ):
        """
        Initialize the probe

        Args:
            tgrid: Tangential grid
            wgrid: Wall grid the probe is sampled on
            b: Tangential generator with d-1 components
            kappa: Decay rate of the profile; defaults to 30 / Y so the probe
                is negligible at the truncation length
        """
        if b.tgrid != tgrid:
            raise ShapeMismatchError("probe generator lives on a different grid")
        if b.components != tgrid.tdim:
            raise ShapeMismatchError(
                f"probe generator needs {tgrid.tdim} components, got {b.components}"
            )
        if kappa is None:
            kappa = 30.0 / wgrid.truncation
        if not kappa > 0.0:
            raise InvalidParameterError(f"probe decay rate must be > 0, got {kappa}")
        self.tgrid = tgrid
        self.wgrid = wgrid
        self.kappa = float(kappa)
        self.b_hat = to_spectral(b).values

    def profile(self, order: int) -> np.ndarray:
        """
        Normal derivative of the profile g at the wall levels

        Args:
            order: 0, 1 or 2

        Returns:
            Float array of length M + 1
        """
        y = self.wgrid.levels
        k = self.kappa
        decay = np.exp(-k * y)
        if order == 0:
            return y * decay
        if order == 1:
            return (1.0 - k * y) * decay
        if order == 2:
            return (k * k * y - 2.0 * k) * decay
        if order == 3:
            return (3.0 * k * k - k**3 * y) * decay
        raise InvalidParameterError(f"profile order must be 0..3, got {order}")

    def velocity_hat(self, order: int = 0) -> SpectralField:
        """
        Coefficients of d^order/dy^order of the probe, d components

        Args:
            order: Normal derivative order (0..2)

        Returns:
            SpectralField
        """
        xi = self.tgrid.xi()
        div_b = 1j * np.sum(xi * self.b_hat, axis=-1)
        tangential = -self.b_hat[..., None, :] * self.profile(order + 1)[:, None]
        normal = div_b[..., None, None] * self.profile(order)[:, None]
        return SpectralField(
            self.tgrid, self.wgrid, np.concatenate([tangential, normal], axis=-1)
        )

    def velocity(self, order: int = 0) -> PhysicalField:
        return inverse_dft(self.velocity_hat(order))

    def trace_hat(self) -> BoundaryField:
        """Spectral tangential trace v'(0) = -b_hat"""
        return BoundaryField(self.tgrid, -self.b_hat, spectral=True)
