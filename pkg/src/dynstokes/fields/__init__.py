"""
Discretization substrate for dynstokes
"""

from .containers import (
    BoundaryField,
    PhysicalField,
    SpectralField,
    require_components,
    stack_components,
)
from .dump import load_field, save_field
from .grids import TangentialGrid, WallGrid
from .norms import (
    boundary_w1p_norm,
    gradient_lp_norm,
    hessian_lp_norm,
    lp_integral_omega,
    lp_norm_gamma,
    lp_norm_omega,
    sobolev_w1p_norm,
    spectral_l2_norm,
)
from .transforms import forward_dft, inverse_dft, to_physical, to_spectral

__all__ = [
    "BoundaryField",
    "PhysicalField",
    "SpectralField",
    "TangentialGrid",
    "WallGrid",
    "boundary_w1p_norm",
    "forward_dft",
    "gradient_lp_norm",
    "hessian_lp_norm",
    "inverse_dft",
    "load_field",
    "lp_integral_omega",
    "lp_norm_gamma",
    "lp_norm_omega",
    "require_components",
    "save_field",
    "sobolev_w1p_norm",
    "spectral_l2_norm",
    "stack_components",
    "to_physical",
    "to_spectral",
]
