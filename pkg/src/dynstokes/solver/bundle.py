"""
Solution bundle for dynstokes
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..fields.containers import (
    BoundaryField,
    PhysicalField,
    SpectralField,
    stack_components,
)
from ..fields.grids import TangentialGrid, WallGrid
from ..fields.transforms import inverse_dft
from ..models.errors import ShapeMismatchError
from ..models.params import ResolventParams

FIELD_NAMES = ("u_prime", "u_d", "pressure")


@dataclass(frozen=True)
class SolutionBundle:
    """
    Velocity, pressure, traces and normal derivatives of one solve

    Spectral coefficients are kept for every computed normal derivative order
    (index = order) and hold the symbol response at TangentialGrid.xi().
    Physical fields are grid samples: at modes with a k = -n/2 component the
    symbol is averaged over the sign of that component (nyquist_hat), so real
    data and a real lambda give real fields. They are materialized for orders
    0 and 1.

    Attributes:
        params: Resolvent parameters of the solve
        tgrid: Tangential grid
        wgrid: Wall grid
        phi_hat: Spectral boundary data
        u_prime_hat: Tangential velocity coefficients per derivative order
        u_d_hat: Normal velocity coefficients per derivative order
        pressure_hat: Pressure coefficients per derivative order
        nyquist_hat: Sign-averaged coefficients at the modes of
            TangentialGrid.nyquist_mask(), per field and derivative order
        u_prime: Tangential velocity (d-1 components)
        u_d: Normal velocity (1 component)
        pressure: Pressure (1 component)
        trace_u_prime: Tangential velocity at y = 0
        dy_u_prime: Analytic dy of u_prime
        dy_u_d: Analytic dy of u_d
        dy_pressure: Analytic dy of the pressure
    """

    params: ResolventParams
    tgrid: TangentialGrid
    wgrid: WallGrid
    phi_hat: BoundaryField
    u_prime_hat: Tuple[SpectralField, ...]
    u_d_hat: Tuple[SpectralField, ...]
    pressure_hat: Tuple[SpectralField, ...]
    nyquist_hat: Dict[str, Tuple[np.ndarray, ...]]
    u_prime: PhysicalField
    u_d: PhysicalField
    pressure: PhysicalField
    trace_u_prime: BoundaryField
    dy_u_prime: PhysicalField
    dy_u_d: PhysicalField
    dy_pressure: PhysicalField

    def spectral(self, name: str, order: int = 0) -> SpectralField:
        """
        Spectral coefficients of a normal derivative of one output

        Args:
            name: One of 'u_prime', 'u_d', 'pressure'
            order: Normal derivative order

        Returns:
            SpectralField
        """
        if name not in FIELD_NAMES:
            raise ShapeMismatchError(f"unknown bundle field {name!r}")
        fields = getattr(self, f"{name}_hat")
        if not 0 <= order < len(fields):
            raise ShapeMismatchError(
                f"{name} was solved with normal derivatives up to order "
                f"{len(fields) - 1}, order {order} requested"
            )
        return fields[order]

    def sampled(self, name: str, order: int = 0) -> SpectralField:
        """
        Coefficients of the grid samples of one output

        Equal to spectral() away from the Nyquist modes.

        Args:
            name: One of 'u_prime', 'u_d', 'pressure'
            order: Normal derivative order

        Returns:
            SpectralField
        """
        exact = self.spectral(name, order)
        return sample_coefficients(
            exact, self.tgrid.nyquist_mask(), self.nyquist_hat[name][order]
        )

    def physical(self, name: str, order: int = 0, workers: Optional[int] = None):
        """
        Physical samples of a normal derivative of one output

        Args:
            name: One of 'u_prime', 'u_d', 'pressure'
            order: Normal derivative order
            workers: Worker threads for scipy.fft (optional)

        Returns:
            PhysicalField
        """
        if order == 0:
            return getattr(self, name)
        if order == 1:
            return getattr(self, f"dy_{name}")
        return inverse_dft(self.sampled(name, order), workers)

    def velocity_hat(self, order: int = 0) -> SpectralField:
        """Full velocity (u', u_d) coefficients, d components"""
        return stack_components(
            [self.spectral("u_prime", order), self.spectral("u_d", order)]
        )

    def sampled_velocity_hat(self, order: int = 0) -> SpectralField:
        """Coefficients of the full velocity samples, d components"""
        return stack_components(
            [self.sampled("u_prime", order), self.sampled("u_d", order)]
        )

    def velocity(self, order: int = 0, workers: Optional[int] = None) -> PhysicalField:
        """Full velocity (u', u_d) samples, d components"""
        return stack_components(
            [
                self.physical("u_prime", order, workers),
                self.physical("u_d", order, workers),
            ]
        )

    def trace_velocity(self) -> BoundaryField:
        """Full velocity at y = 0 (normal component included)"""
        return self.velocity().trace()

    @property
    def max_orders(self) -> Dict[str, int]:
        return {name: len(getattr(self, f"{name}_hat")) - 1 for name in FIELD_NAMES}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "tangential": self.tgrid.to_dict(),
            "wall": {
                "intervals": self.wgrid.intervals,
                "truncation": self.wgrid.truncation,
                "first_step": self.wgrid.first_step,
            },
            "max_orders": self.max_orders,
        }


def sample_coefficients(
    exact: SpectralField, mask: np.ndarray, nyquist: np.ndarray
) -> SpectralField:
    """
    Replace the coefficients at the masked modes

    Args:
        exact: Per-mode coefficients
        mask: Boolean mode mask, shape (n,)*tdim
        nyquist: Replacement values, shape (count(mask), L, components)

    Returns:
        SpectralField
    """
    values = exact.values.copy()
    values[mask] = nyquist
    return exact.with_values(values)
