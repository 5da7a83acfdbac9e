"""
Pointwise kernel inequalities checked over certification grids

Re q >= s and |E| <= sqrt|lambda| y exp(-s y) rest on Re lambda >= 0; on
sectors reaching into the left half-plane they fail at some points.
Every report therefore splits its violations by the sign of Re lambda.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..kernels.scalar import big_e, denominator, ds_sE, dy_m0, m0, m1, m3, sqrt_shifted
from ..models.errors import InvalidParameterError
from ..models.params import KernelPoint, ResolventParams
from .checker import DEFAULT_DELTA, default_sector_grid, map_ordered
from .derivatives import richardson_derivative
from .grids import FrequencyWallGrid, SectorSampleGrid

logger = logging.getLogger(__name__)

RIGHT = "re_lambda_nonnegative"
LEFT = "re_lambda_negative"
FD_AGREEMENT = 1e-6
# below this scale the kernels lose relative precision to gradual underflow
IDENTITY_SCALE_FLOOR = 1e-280


@dataclass
class InequalityReport:
    """
    Outcome of one pointwise inequality over the grids

    Attributes:
        name: Inequality name
        points: Number of (lambda, s[, y]) points checked
        violations: Number of points violating the inequality beyond slack
        slack: Relative slack allowed
        violations_by_half_plane: Violations split by the sign of Re lambda
        worst: Location and values of the largest violation (or of the
            tightest point when nothing is violated)
        constants: Empirical constants derived from the sweep
        grid: Grid provenance
    """

    name: str
    points: int
    violations: int
    slack: float
    violations_by_half_plane: Dict[str, int]
    worst: Optional[Dict[str, Any]]
    constants: Dict[str, float] = field(default_factory=dict)
    grid: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "points": self.points,
            "violations": self.violations,
            "slack": self.slack,
            "violations_by_half_plane": self.violations_by_half_plane,
            "worst": self.worst,
            "constants": self.constants,
            "grid": self.grid,
        }


@dataclass
class _LambdaTally:
    lam: complex
    points: int
    violations: int
    # log(lhs / rhs), or s - Re q for the real-part check; largest is worst
    excess: float
    location: Dict[str, Any]
    extra: Dict[str, float]


def _half_plane(lam: complex) -> str:
    return RIGHT if lam.real >= 0.0 else LEFT


def _grid_dict(sector_grid, frequency_grid, with_y: bool) -> Dict[str, Any]:
    frequency = frequency_grid.to_dict()
    if not with_y:
        frequency = {k: v for k, v in frequency.items() if not k.startswith("y_")}
    return {"sector": sector_grid.to_dict(), "frequency": frequency}


def _tally(
    params: ResolventParams,
    excess: np.ndarray,
    slack: float,
    coords: Dict[str, np.ndarray],
    values: Dict[str, np.ndarray],
    extra: Dict[str, float],
) -> _LambdaTally:
    """Count violations (excess > log(1 + slack)) and locate the worst point"""
    excess = np.where(np.isnan(excess), -np.inf, excess)
    violated = excess > math.log1p(slack)
    index = np.unravel_index(int(np.argmax(excess)), excess.shape)
    location = {"lambda": params.lam}
    for name, array in coords.items():
        location[name] = float(np.broadcast_to(array, excess.shape)[index])
    for name, array in values.items():
        location[name] = float(np.broadcast_to(array, excess.shape)[index])
    return _LambdaTally(
        lam=params.lam,
        points=int(excess.size),
        violations=int(np.count_nonzero(violated)),
        excess=float(excess[index]),
        location=location,
        extra=extra,
    )


def _collect(
    name: str,
    check: Callable[[ResolventParams], _LambdaTally],
    sector_grid: SectorSampleGrid,
    slack: float,
    grid: Dict[str, Any],
    workers: Optional[int],
    reducers: Dict[str, Callable[[List[float]], float]],
) -> InequalityReport:
    tallies = map_ordered(check, sector_grid.params(), workers)

    by_half_plane = {RIGHT: 0, LEFT: 0}
    worst: Optional[_LambdaTally] = None
    for tally in tallies:
        by_half_plane[_half_plane(tally.lam)] += tally.violations
        if worst is None or tally.excess > worst.excess:
            worst = tally

    constants = {
        key: float(reduce([t.extra[key] for t in tallies if key in t.extra]))
        for key, reduce in reducers.items()
    }
    report = InequalityReport(
        name=name,
        points=sum(t.points for t in tallies),
        violations=sum(by_half_plane.values()),
        slack=slack,
        violations_by_half_plane=by_half_plane,
        worst=None if worst is None else dict(worst.location, excess=worst.excess),
        constants=constants,
        grid=grid,
    )
    if report.passed:
        logger.info(f"{name}: no violations at {report.points} points")
    else:
        logger.warning(
            f"{name}: {report.violations} violations at {report.points} points "
            f"(Re lambda >= 0: {by_half_plane[RIGHT]}, Re lambda < 0: "
            f"{by_half_plane[LEFT]}); worst at {report.worst}"
        )
    return report


def _minimum(values: List[float]) -> float:
    return min(values) if values else float("nan")


def _maximum(values: List[float]) -> float:
    return max(values) if values else float("nan")


def check_real_part(
    sector_grid: Optional[SectorSampleGrid] = None,
    frequency_grid: Optional[FrequencyWallGrid] = None,
    slack: float = 1e-12,
    workers: Optional[int] = None,
) -> InequalityReport:
    """
    Check Re q >= s and report the constants of the weaker real-part bounds

    Constants:
        c: min Re q / (s + sqrt(omega)), the constant of Re q >= c (s + sqrt(omega))
        c_epsilon: min over s > 0 of Re q / s, so Re q >= c_epsilon s on the grid

    Args:
        sector_grid: Resolvent points (default sector pi/6, omega 1)
        frequency_grid: Grid whose s axis is swept
        slack: Absolute slack of Re q >= s - slack
        workers: Threads used across lambda samples

    Returns:
        InequalityReport
    """
    sector_grid = sector_grid or default_sector_grid()
    frequency_grid = frequency_grid or FrequencyWallGrid()
    s = frequency_grid.s_values
    root_omega = math.sqrt(sector_grid.sector.omega)
    positive = s > 0.0

    def check(params: ResolventParams) -> _LambdaTally:
        re_q = sqrt_shifted(params, s).real
        # absolute slack: violated where s - Re q > slack
        excess = np.where(s - re_q > slack, np.inf, -np.inf)
        extra = {"c": float(np.min(re_q / (s + root_omega)))}
        if np.any(positive):
            extra["c_epsilon"] = float(np.min(re_q[positive] / s[positive]))
        tally = _tally(params, excess, 0.0, {"s": s}, {"re_q": re_q}, extra)
        # the worst point is the smallest margin Re q - s
        index = int(np.argmin(re_q - s))
        tally.location = {
            "lambda": params.lam,
            "s": float(s[index]),
            "re_q": float(re_q[index]),
            "margin": float(re_q[index] - s[index]),
        }
        tally.excess = float(s[index] - re_q[index])
        return tally

    return _collect(
        "real_part",
        check,
        sector_grid,
        slack,
        _grid_dict(sector_grid, frequency_grid, with_y=False),
        workers,
        {"c": _minimum, "c_epsilon": _minimum},
    )


def check_sqrt_lambda_bound(
    sector_grid: Optional[SectorSampleGrid] = None,
    frequency_grid: Optional[FrequencyWallGrid] = None,
    slack: float = 1e-12,
    workers: Optional[int] = None,
) -> InequalityReport:
    """
    Check sqrt|lambda| <= |q + s| at every (lambda, s)

    Args:
        sector_grid: Resolvent points
        frequency_grid: Grid whose s axis is swept
        slack: Relative slack
        workers: Threads used across lambda samples

    Returns:
        InequalityReport with the largest ratio sqrt|lambda| / |q + s|
    """
    sector_grid = sector_grid or default_sector_grid()
    frequency_grid = frequency_grid or FrequencyWallGrid()
    s = frequency_grid.s_values

    def check(params: ResolventParams) -> _LambdaTally:
        ratio = math.sqrt(params.modulus) / np.abs(sqrt_shifted(params, s) + s)
        return _tally(
            params,
            np.log(ratio),
            slack,
            {"s": s},
            {"ratio": ratio},
            {"max_ratio": float(np.max(ratio))},
        )

    return _collect(
        "sqrt_lambda_bound",
        check,
        sector_grid,
        slack,
        _grid_dict(sector_grid, frequency_grid, with_y=False),
        workers,
        {"max_ratio": _maximum},
    )


def check_e_bounds(
    sector_grid: Optional[SectorSampleGrid] = None,
    frequency_grid: Optional[FrequencyWallGrid] = None,
    slack: float = 1e-9,
    workers: Optional[int] = None,
) -> InequalityReport:
    """
    Check |E| <= sqrt|lambda| y exp(-s y) and fit the rate of |E| <= 2 exp(-c s y)

    Constants:
        c_tilde: Largest c with |E| <= 2 exp(-c s y) at every point with s y > 0

    Args:
        sector_grid: Resolvent points
        frequency_grid: (s, y) grid
        slack: Relative slack of the first bound
        workers: Threads used across lambda samples

    Returns:
        InequalityReport
    """
    sector_grid = sector_grid or default_sector_grid()
    frequency_grid = frequency_grid or FrequencyWallGrid()
    s, y = frequency_grid.mesh()
    sy = s * y

    def check(params: ResolventParams) -> _LambdaTally:
        magnitude = np.abs(big_e(params, KernelPoint(s, y)))
        with np.errstate(divide="ignore", invalid="ignore"):
            log_lhs = np.log(magnitude)
            log_rhs = 0.5 * math.log(params.modulus) + np.log(y) - sy
            excess = log_lhs - log_rhs
            # 0 <= 0 at y = 0
            excess = np.where(magnitude == 0.0, -np.inf, excess)
            rates = -np.log(0.5 * magnitude) / sy
        usable = (sy > 0.0) & (magnitude > 0.0)
        extra = {}
        if np.any(usable):
            extra["c_tilde"] = float(np.min(rates[usable]))
        return _tally(
            params,
            excess,
            slack,
            {"s": s, "y": y},
            {"abs_e": magnitude},
            extra,
        )

    return _collect(
        "e_bounds",
        check,
        sector_grid,
        slack,
        _grid_dict(sector_grid, frequency_grid, with_y=True),
        workers,
        {"c_tilde": _minimum},
    )


def se_bound_constant(omega: float, delta: float, order: int) -> float:
    """
    Explicit constant C_k of (1 + y) s^k |d^k(s E)/ds^k| / sqrt|lambda| <= C_k exp(-delta s y)

    Args:
        omega: Lower bound of |lambda|
        delta: Exponential rate in (0, 1)
        order: 0 or 1

    Returns:
        C_0 = (sqrt(w) + sqrt(2)) / (sqrt(w) e (1 - delta)) or
        C_1 = (2 sqrt(w) + sqrt(2)) / (sqrt(w) e (1 - delta))
              + (4 sqrt(w) + 4 + 4 sqrt(2)) / (sqrt(w) e^2 (1 - delta)^2)
    """
    root = math.sqrt(omega)
    root2 = math.sqrt(2.0)
    if order == 0:
        return (root + root2) / (root * math.e * (1.0 - delta))
    if order == 1:
        return (2.0 * root + root2) / (root * math.e * (1.0 - delta)) + (
            4.0 * root + 4.0 + 4.0 * root2
        ) / (root * math.e**2 * (1.0 - delta) ** 2)
    raise InvalidParameterError(f"sE bound is available for orders 0 and 1, got {order}")


def check_se_bound(
    sector_grid: Optional[SectorSampleGrid] = None,
    frequency_grid: Optional[FrequencyWallGrid] = None,
    delta: float = DEFAULT_DELTA,
    order: int = 0,
    slack: float = 1e-9,
    workers: Optional[int] = None,
) -> InequalityReport:
    """
    Check the explicit bound on s E used for the multiplier m1

    (1 + y) s^k |d^k(s E)/ds^k| / sqrt|lambda| <= C_k exp(-delta s y), k = 0, 1

    Constants:
        bound: C_k
        max_ratio: Largest observed lhs / (C_k exp(-delta s y))

    Args:
        sector_grid: Resolvent points (|lambda| >= omega)
        frequency_grid: (s, y) grid
        delta: Exponential rate in (0, 1)
        order: 0 or 1
        slack: Relative slack
        workers: Threads used across lambda samples

    Returns:
        InequalityReport
    """
    if not 0.0 < delta < 1.0:
        raise InvalidParameterError(f"delta must lie in (0, 1), got {delta}")
    sector_grid = sector_grid or default_sector_grid()
    frequency_grid = frequency_grid or FrequencyWallGrid()
    bound = se_bound_constant(sector_grid.sector.omega, delta, order)
    log_bound = math.log(bound)
    s, y = frequency_grid.mesh()

    def check(params: ResolventParams) -> _LambdaTally:
        point = KernelPoint(s, y)
        if order == 0:
            term = s * big_e(params, point)
        else:
            term = s * ds_sE(params, point)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_lhs = (
                np.log1p(y) + np.log(np.abs(term)) - 0.5 * math.log(params.modulus)
            )
            excess = log_lhs - (log_bound - delta * s * y)
        finite = excess[np.isfinite(excess)]
        extra = {"max_ratio": float(np.exp(np.max(finite)))} if finite.size else {}
        return _tally(params, excess, slack, {"s": s, "y": y}, {}, extra)

    report = _collect(
        f"se_bound_k{order}",
        check,
        sector_grid,
        slack,
        _grid_dict(sector_grid, frequency_grid, with_y=True),
        workers,
        {"max_ratio": _maximum},
    )
    report.constants["bound"] = bound
    report.constants["delta"] = delta
    return report


def check_m2_identity(
    sector_grid: Optional[SectorSampleGrid] = None,
    frequency_grid: Optional[FrequencyWallGrid] = None,
    tolerance: float = 1e-12,
    workers: Optional[int] = None,
) -> InequalityReport:
    """
    Check m2 = lambda dy m0 = -m1 - lambda / (alpha + lambda + s + q) m3

    The algebraic residual is measured relative to |m1| + |lambda m3 / D| at
    each point and counted as a violation above tolerance; points where that
    scale is below IDENTITY_SCALE_FLOOR are not checked. The Richardson
    derivative of m0 in y is compared as well; its deviation relative to the
    largest |m2| of each lambda is reported as a constant only, since it is a
    discretization error rather than an identity.

    Constants:
        max_identity_residual: Largest relative algebraic residual
        max_fd_deviation: Largest relative FD deviation

    Args:
        sector_grid: Resolvent points
        frequency_grid: (s, y) grid
        tolerance: Bound of the relative algebraic residual
        workers: Threads used across lambda samples

    Returns:
        InequalityReport named m2_identity
    """
    sector_grid = sector_grid or default_sector_grid()
    frequency_grid = frequency_grid or FrequencyWallGrid()
    s, y = frequency_grid.mesh()

    def check(params: ResolventParams) -> _LambdaTally:
        point = KernelPoint(s, y)
        m2_value = params.lam * dy_m0(params, point, order=1)
        first = m1(params, point)
        source = params.lam * m3(params, point) / denominator(params, point)
        scale = np.abs(first) + np.abs(source)
        numeric, _ = richardson_derivative(
            lambda wall: m0(params, KernelPoint(s, wall)), y, 1
        )
        with np.errstate(divide="ignore", invalid="ignore"):
            residual = np.where(
                scale > IDENTITY_SCALE_FLOOR,
                np.abs(m2_value + first + source) / scale,
                0.0,
            )
            excess = np.log(residual / tolerance)
        m2_scale = float(np.max(np.abs(m2_value)))
        deviation = np.abs(params.lam * numeric - m2_value)
        extra = {"max_identity_residual": float(np.max(residual))}
        if m2_scale > 0.0 and np.any(np.isfinite(deviation)):
            extra["max_fd_deviation"] = float(np.nanmax(deviation)) / m2_scale
        return _tally(params, excess, 0.0, {"s": s, "y": y}, {"residual": residual}, extra)

    report = _collect(
        "m2_identity",
        check,
        sector_grid,
        tolerance,
        _grid_dict(sector_grid, frequency_grid, with_y=True),
        workers,
        {"max_identity_residual": _maximum, "max_fd_deviation": _maximum},
    )
    deviation = report.constants.get("max_fd_deviation", math.nan)
    if deviation > FD_AGREEMENT:
        logger.warning(
            f"m2 differs from lambda times the FD y-derivative of m0 by {deviation:.3e}"
        )
    return report
