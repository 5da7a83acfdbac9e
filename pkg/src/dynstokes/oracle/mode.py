"""
Finite-difference solves of single Fourier modes

The mode equations are discretized directly on a uniform grid of [0, Y]
with second-order stencils; nothing here evaluates the closed-form kernels.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from ..models.errors import OracleError, ShapeMismatchError
from ..models.params import ResolventParams
from .banded import solve_banded_system
from .config import DecayCondition, OdeOracleConfig, characteristic_roots

logger = logging.getLogger(__name__)


@dataclass
class OracleSolution:
    """
    Sampled oracle solution of one mode

    Attributes:
        y: Uniform FD grid
        values: Solution samples, shape (N + 1,) or (N + 1, components)
        auxiliary: Second unknown of the factored system (w = (s^2 - dy^2) u_d),
            or None
        residual: Backward error of the linear solve
        config: Oracle configuration used
    """

    y: np.ndarray
    values: np.ndarray
    auxiliary: Any
    residual: float
    config: OdeOracleConfig

    def to_dict(self) -> Dict[str, Any]:
        return {"residual": self.residual, "config": self.config.to_dict()}


def _mode_vector(params: ResolventParams, xi, name: str) -> np.ndarray:
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if xi.shape != (params.tdim,):
        raise ShapeMismatchError(
            f"{name} must have {params.tdim} components, got shape {xi.shape}"
        )
    return xi


def solve_mode_fd(
    params: ResolventParams, xi, rhs_phi_hat, cfg: OdeOracleConfig
) -> OracleSolution:
    """
    Solve the fourth-order normal-velocity equation of one mode

    The equation (lambda + s^2 - dy^2)(s^2 - dy^2) u = 0 is split into
    w = (s^2 - dy^2) u and (lambda + s^2 - dy^2) w = 0; unknowns are
    interleaved (u_j at 2j, w_j at 2j + 1) so the system is banded with
    four sub- and three superdiagonals. At y = 0: u = 0 and
    (lambda + alpha) dy u + w = -i xi . phi_hat (using dy^2 u = -w there).
    At Y either u = w = 0, or the exact decay relations
    (dy + s) u = w / (q + s) and (dy + q) w = 0.

    The asymptotic rows are the far-field condition (dy + s) u(Y) = 0 of the
    decaying e^{-s y} branch, extended exactly to the e^{-q y} branch: every
    decaying u = A e^{-s y} + B e^{-q y} has w = B (s^2 - q^2) e^{-q y} and
    (dy + s) u = B (s - q) e^{-q y} = w / (q + s). With B = 0 the first row
    is (dy + s) u(Y) = 0 itself; the rows admit no growing solution, so they
    add no truncation error.

    Args:
        params: Resolvent parameters
        xi: Mode frequency vector of length d-1 (nonzero)
        rhs_phi_hat: Boundary coefficient vector of length d-1
        cfg: Oracle configuration

    Returns:
        OracleSolution with values = u_d samples and auxiliary = w samples
    """
    xi = _mode_vector(params, xi, "xi")
    phi = np.atleast_1d(np.asarray(rhs_phi_hat, dtype=complex))
    if phi.shape != (params.tdim,):
        raise ShapeMismatchError(
            f"phi_hat must have {params.tdim} components, got shape {phi.shape}"
        )
    s = float(np.sqrt(np.dot(xi, xi)))
    if s == 0.0:
        raise OracleError("the xi = 0 mode of u_d vanishes identically and is excluded")
    cfg.require_adequate(params, s)

    _, q = characteristic_roots(params, s)
    lam, shift = params.lam, params.lam + params.alpha
    n, h = cfg.steps, cfg.step
    inv_h2 = 1.0 / (h * h)
    size = 2 * (n + 1)

    rows, cols, vals = [], [], []

    def add(r, c, v):
        rows.append(r)
        cols.append(c)
        vals.append(v)

    j = np.arange(1, n)
    ones = np.ones(j.size)
    # u rows: s^2 u - (u_{j-1} - 2 u_j + u_{j+1}) / h^2 - w_j = 0
    add(2 * j, 2 * j - 2, -inv_h2 * ones)
    add(2 * j, 2 * j, (s * s + 2.0 * inv_h2) * ones)
    add(2 * j, 2 * j + 2, -inv_h2 * ones)
    add(2 * j, 2 * j + 1, -ones)
    # w rows: (lambda + s^2) w - (w_{j-1} - 2 w_j + w_{j+1}) / h^2 = 0
    add(2 * j + 1, 2 * j - 1, -inv_h2 * ones)
    add(2 * j + 1, 2 * j + 1, (lam + s * s + 2.0 * inv_h2) * ones)
    add(2 * j + 1, 2 * j + 3, -inv_h2 * ones)

    # wall rows
    add([0], [0], [1.0])
    robin = shift / (2.0 * h)
    add([1, 1, 1, 1], [0, 2, 4, 1], [-3.0 * robin, 4.0 * robin, -robin, 1.0])

    # truncation rows
    last_u, last_w = 2 * n, 2 * n + 1
    if cfg.decay_bc is DecayCondition.DIRICHLET_PAIR:
        add([last_u, last_w], [last_u, last_w], [1.0, 1.0])
    else:
        back = 1.0 / (2.0 * h)
        add(
            [last_u] * 4,
            [last_u, last_u - 2, last_u - 4, last_w],
            [3.0 * back + s, -4.0 * back, back, -1.0 / (q + s)],
        )
        add(
            [last_w] * 3,
            [last_w, last_w - 2, last_w - 4],
            [3.0 * back + q, -4.0 * back, back],
        )

    rhs = np.zeros(size, dtype=complex)
    rhs[1] = -1j * np.dot(xi, phi)

    solution = solve_banded_system(
        np.concatenate([np.atleast_1d(r) for r in rows]),
        np.concatenate([np.atleast_1d(c) for c in cols]),
        np.concatenate([np.atleast_1d(np.asarray(v, dtype=complex)) for v in vals]),
        rhs,
        lower=4,
        upper=3,
    )
    logger.debug(
        f"Oracle mode s={s:g} N={n} Y={cfg.truncation_length:g} "
        f"({cfg.decay_bc.value}): backward error {solution.residual:.2e}"
    )
    return OracleSolution(
        y=cfg.grid(),
        values=solution.x[0::2],
        auxiliary=solution.x[1::2],
        residual=solution.residual,
        config=cfg,
    )


def solve_vprime_mode_fd(
    params: ResolventParams, xi, h_hat, cfg: OdeOracleConfig
) -> OracleSolution:
    """
    Solve the correction system of one mode

    (lambda + s^2 - dy^2) v = 0 with (lambda + alpha) v(0) - dy v(0) = h_hat
    and v(Y) = 0 or (dy + q) v(Y) = 0, for every tangential component.

    Args:
        params: Resolvent parameters
        xi: Mode frequency vector of length d-1 (may be zero)
        h_hat: Boundary coefficient vector of length d-1
        cfg: Oracle configuration

    Returns:
        OracleSolution with values of shape (N + 1, d-1)
    """
    xi = _mode_vector(params, xi, "xi")
    h_vec = np.atleast_1d(np.asarray(h_hat, dtype=complex))
    if h_vec.shape != (params.tdim,):
        raise ShapeMismatchError(
            f"h_hat must have {params.tdim} components, got shape {h_vec.shape}"
        )
    s = float(np.sqrt(np.dot(xi, xi)))
    _, q = characteristic_roots(params, s)
    if (
        cfg.decay_bc is DecayCondition.DIRICHLET_PAIR
        and q.real * cfg.truncation_length < np.log(1e10)
    ):
        raise OracleError(
            f"insufficient truncation Y={cfg.truncation_length:g} for Re q={q.real:g}"
        )

    n, h = cfg.steps, cfg.step
    inv_h2 = 1.0 / (h * h)
    shift = params.lam + params.alpha

    j = np.arange(1, n)
    ones = np.ones(j.size)
    rows = [j, j, j]
    cols = [j - 1, j, j + 1]
    vals = [-inv_h2 * ones, (params.lam + s * s + 2.0 * inv_h2) * ones, -inv_h2 * ones]

    back = 1.0 / (2.0 * h)
    rows.append(np.array([0, 0, 0]))
    cols.append(np.array([0, 1, 2]))
    vals.append(np.array([shift + 3.0 * back, -4.0 * back, back], dtype=complex))

    if cfg.decay_bc is DecayCondition.DIRICHLET_PAIR:
        rows.append(np.array([n]))
        cols.append(np.array([n]))
        vals.append(np.array([1.0], dtype=complex))
    else:
        rows.append(np.array([n, n, n]))
        cols.append(np.array([n, n - 1, n - 2]))
        vals.append(np.array([3.0 * back + q, -4.0 * back, back], dtype=complex))

    rhs = np.zeros((n + 1, params.tdim), dtype=complex)
    rhs[0] = h_vec

    solution = solve_banded_system(
        np.concatenate(rows),
        np.concatenate(cols),
        np.concatenate([np.asarray(v, dtype=complex) for v in vals]),
        rhs,
        lower=2,
        upper=2,
    )
    return OracleSolution(
        y=cfg.grid(),
        values=solution.x,
        auxiliary=None,
        residual=solution.residual,
        config=cfg,
    )
