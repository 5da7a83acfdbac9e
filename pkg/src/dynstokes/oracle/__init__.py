"""
Finite-difference mode oracle for dynstokes
"""

from .banded import BandedSolution, solve_banded_system, to_banded
from .compare import (
    ConvergenceRecord,
    ModeComparison,
    compare_mode,
    compare_vprime_mode,
    convergence_ratio,
    default_phi_hat,
)
from .config import DecayCondition, OdeOracleConfig, characteristic_roots
from .mode import OracleSolution, solve_mode_fd, solve_vprime_mode_fd

__all__ = [
    "BandedSolution",
    "ConvergenceRecord",
    "DecayCondition",
    "ModeComparison",
    "OdeOracleConfig",
    "OracleSolution",
    "characteristic_roots",
    "compare_mode",
    "compare_vprime_mode",
    "convergence_ratio",
    "default_phi_hat",
    "solve_banded_system",
    "solve_mode_fd",
    "solve_vprime_mode_fd",
    "to_banded",
]
