"""
Multiplier solver and residual verifiers for dynstokes
"""

from .assemble import modal_response, solve_boundary_driven
from .bundle import SolutionBundle
from .probes import SolenoidalProbe
from .records import ResidualMeasure, ResidualRecord, WeakFormDefect, WeakFormStudy
from .residuals import (
    biharmonic_check,
    fd_derivative_agreement,
    residual_boundary,
    residual_interior,
    weak_form_check,
    weak_form_refinement,
)

__all__ = [
    "ResidualMeasure",
    "ResidualRecord",
    "SolenoidalProbe",
    "SolutionBundle",
    "WeakFormDefect",
    "WeakFormStudy",
    "biharmonic_check",
    "fd_derivative_agreement",
    "modal_response",
    "residual_boundary",
    "residual_interior",
    "solve_boundary_driven",
    "weak_form_check",
    "weak_form_refinement",
]
