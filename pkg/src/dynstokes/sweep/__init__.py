"""
Scaling experiments for dynstokes
"""

from .experiments import (
    DEFAULT_ALPHAS,
    alpha_uniformity,
    gradient_estimate,
    resolvent_decay,
    second_order_proxy,
    truncation_length,
    wall_grid_for,
)
from .reports import (
    TABLE_COLUMNS,
    AlphaUniformityReport,
    DecayReport,
    DecaySample,
    LogLogFit,
    RatioReport,
    RatioSample,
    fit_loglog,
)
from .sampler import band_limited_phi, harmonic_phi, phi_family, resample_boundary

__all__ = [
    "DEFAULT_ALPHAS",
    "TABLE_COLUMNS",
    "AlphaUniformityReport",
    "DecayReport",
    "DecaySample",
    "LogLogFit",
    "RatioReport",
    "RatioSample",
    "alpha_uniformity",
    "band_limited_phi",
    "fit_loglog",
    "gradient_estimate",
    "harmonic_phi",
    "phi_family",
    "resample_boundary",
    "resolvent_decay",
    "second_order_proxy",
    "truncation_length",
    "wall_grid_for",
]
