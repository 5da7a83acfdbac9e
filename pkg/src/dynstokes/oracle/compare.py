"""
Comparison of oracle solutions with the closed-form kernels
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..kernels.scalar import m0, m4
from ..models.errors import OracleError
from ..models.params import KernelPoint, ResolventParams
from .config import OdeOracleConfig
from .mode import solve_mode_fd, solve_vprime_mode_fd

logger = logging.getLogger(__name__)


@dataclass
class ModeComparison:
    """
    Deviation between the oracle and the kernels for one mode

    Attributes:
        xi: Mode frequency vector
        s: |xi|
        deviation: max_j |oracle - kernel| / max_j |kernel| over the FD grid
        solve_residual: Backward error of the oracle's linear solve
        config: Oracle configuration used
        target: 'u_d' or 'v_prime'
    """

    xi: np.ndarray
    s: float
    deviation: float
    solve_residual: float
    config: OdeOracleConfig
    target: str = "u_d"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "xi": self.xi,
            "s": self.s,
            "deviation": self.deviation,
            "solve_residual": self.solve_residual,
            "config": self.config.to_dict(),
        }


@dataclass
class ConvergenceRecord:
    """
    Oracle deviations at N and 2N steps

    Attributes:
        coarse: Comparison at N steps
        fine: Comparison at 2N steps
    """

    coarse: ModeComparison
    fine: ModeComparison

    @property
    def ratio(self) -> float:
        if self.fine.deviation == 0.0:
            return float("inf")
        return self.coarse.deviation / self.fine.deviation

    @property
    def observed_order(self) -> float:
        return float(np.log2(self.ratio))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coarse": self.coarse.to_dict(),
            "fine": self.fine.to_dict(),
            "ratio": self.ratio,
            "observed_order": self.observed_order,
        }


def _relative_deviation(approx: np.ndarray, exact: np.ndarray) -> float:
    scale = float(np.max(np.abs(exact)))
    diff = float(np.max(np.abs(approx - exact)))
    if scale == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return diff / scale


def default_phi_hat(xi: np.ndarray) -> np.ndarray:
    """Unit boundary coefficient along xi/|xi| (phi_hat = 1 in d = 2 for xi > 0)"""
    return (xi / np.sqrt(np.dot(xi, xi))).astype(complex)


def compare_mode(
    params: ResolventParams,
    xi,
    cfg: Optional[OdeOracleConfig] = None,
    phi_hat=None,
    steps: int = 4096,
) -> ModeComparison:
    """
    Compare the oracle's u_d with i xi . phi_hat m0 on the oracle grid

    Args:
        params: Resolvent parameters
        xi: Mode frequency vector of length d-1 (nonzero)
        cfg: Oracle configuration (chosen per mode when omitted)
        phi_hat: Boundary coefficients (unit vector along xi when omitted)
        steps: FD intervals used when cfg is omitted

    Returns:
        ModeComparison
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    s = float(np.sqrt(np.dot(xi, xi)))
    if s == 0.0:
        raise OracleError("compare_mode rejects the xi = 0 mode (precondition |xi| > 0)")
    if cfg is None:
        cfg = OdeOracleConfig.for_mode(params, s, steps=steps)
    phi = default_phi_hat(xi) if phi_hat is None else np.asarray(phi_hat, complex)

    oracle = solve_mode_fd(params, xi, phi, cfg)
    exact = 1j * np.dot(xi, phi) * m0(params, KernelPoint(s, oracle.y))
    deviation = _relative_deviation(oracle.values, exact)
    logger.debug(f"compare_mode s={s:g} N={cfg.steps}: deviation {deviation:.3e}")
    return ModeComparison(
        xi=xi,
        s=s,
        deviation=deviation,
        solve_residual=oracle.residual,
        config=cfg,
    )


def compare_vprime_mode(
    params: ResolventParams,
    xi,
    cfg: Optional[OdeOracleConfig] = None,
    h_hat=None,
    steps: int = 4096,
) -> ModeComparison:
    """
    Compare the oracle's correction field with h_hat m4 on the oracle grid

    Args:
        params: Resolvent parameters
        xi: Mode frequency vector of length d-1 (zero allowed)
        cfg: Oracle configuration (chosen per mode when omitted)
        h_hat: Boundary coefficients (all ones when omitted)
        steps: FD intervals used when cfg is omitted

    Returns:
        ModeComparison with target 'v_prime'
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    s = float(np.sqrt(np.dot(xi, xi)))
    if cfg is None:
        q = np.sqrt(params.lam + s * s + 0j)
        cfg = OdeOracleConfig(truncation_length=25.0 / q.real, steps=steps)
    h_vec = np.ones(params.tdim, complex) if h_hat is None else np.asarray(h_hat, complex)

    oracle = solve_vprime_mode_fd(params, xi, h_vec, cfg)
    exact = m4(params, KernelPoint(s, oracle.y))[:, None] * h_vec[None, :]
    return ModeComparison(
        xi=xi,
        s=s,
        deviation=_relative_deviation(oracle.values, exact),
        solve_residual=oracle.residual,
        config=cfg,
        target="v_prime",
    )


def convergence_ratio(
    params: ResolventParams,
    xi,
    cfg: Optional[OdeOracleConfig] = None,
    steps: int = 4096,
) -> ConvergenceRecord:
    """
    Deviation of compare_mode at N and 2N steps on the same interval

    Args:
        params: Resolvent parameters
        xi: Mode frequency vector (nonzero)
        cfg: Oracle configuration at N steps (chosen per mode when omitted)
        steps: N when cfg is omitted

    Returns:
        ConvergenceRecord (ratio close to 4 for second-order convergence)
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if cfg is None:
        s = float(np.sqrt(np.dot(xi, xi)))
        if s == 0.0:
            raise OracleError("the xi = 0 mode is excluded from the oracle")
        cfg = OdeOracleConfig.for_mode(params, s, steps=steps)
    coarse = compare_mode(params, xi, cfg)
    fine = compare_mode(params, xi, cfg.refined())
    return ConvergenceRecord(coarse=coarse, fine=fine)
