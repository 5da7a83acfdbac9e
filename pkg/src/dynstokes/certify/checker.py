"""
Certification sweeps for the multiplier conditions (M) and (M*)
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar, Union

import numpy as np

from ..models.errors import InvalidParameterError
from ..models.params import ResolventParams, SectorSpec
from .certificate import MultiplierCertificate
from .derivatives import DEFAULT_STEP_FACTOR
from .grids import FrequencyWallGrid, SectorSampleGrid
from .symbols import M, MSTAR, ProductSymbol, RadialSymbol, ReweightedSymbol, get_symbol

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 0.05
DEFAULT_EPSILON = math.pi / 6.0
# breakdown locations kept per certificate
MAX_BREAKDOWN_POINTS = 20

T = TypeVar("T")
R = TypeVar("R")


def max_order(dim: int) -> int:
    """Largest certified derivative order: 1 for d = 2, 2 for d = 3"""
    if dim not in (2, 3):
        raise InvalidParameterError(f"dim must be 2 or 3, got {dim}")
    return 1 if dim == 2 else 2


def map_ordered(
    func: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None
) -> List[R]:
    """
    Apply func to every item, in parallel threads when workers > 1

    Results keep the order of items regardless of scheduling.
    """
    if workers and workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def default_sector_grid() -> SectorSampleGrid:
    return SectorSampleGrid.default(SectorSpec(epsilon=DEFAULT_EPSILON, omega=1.0))


@dataclass
class _SweepOutcome:
    sup: float
    argmax: Dict[str, Any]
    per_lambda: List[Dict[str, Any]] = field(default_factory=list)
    breakdown_count: int = 0
    breakdown_points: List[Dict[str, Any]] = field(default_factory=list)


def _weights(
    symbol: RadialSymbol,
    params: ResolventParams,
    s: np.ndarray,
    y: np.ndarray,
    k: int,
    delta: float,
    step_factor: float,
):
    """Log of the certified weight at every (s, y) point, -inf where excluded"""
    values, breakdown = symbol.derivative(params, s, y, k, step_factor)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        log_w = np.log(np.abs(values))
        if k > 0:
            log_w = log_w + k * np.log(s)
        if symbol.kind == MSTAR:
            log_w = log_w + np.log1p(y) + (delta + symbol.exp_rate) * s * y
    bad = np.broadcast_to(breakdown, log_w.shape) | np.isnan(log_w)
    return np.where(bad, -np.inf, log_w), bad


def _sweep_lambda(symbol, params, fgrid, k, delta, step_factor):
    s, y = fgrid.mesh()
    if symbol.kind == M:
        y = np.zeros((1, 1))
    log_w, bad = _weights(symbol, params, s, y, k, delta, step_factor)
    s_full, y_full = np.broadcast_arrays(s, y)

    index = np.unravel_index(int(np.argmax(log_w)), log_w.shape)
    best = float(log_w[index])
    sup = math.exp(best) if best > -math.inf else 0.0
    bad_points = [
        {"lambda": params.lam, "s": float(s_full[i]), "y": float(y_full[i])}
        for i in islice(zip(*np.nonzero(bad)), MAX_BREAKDOWN_POINTS)
    ]
    return {
        "lambda": params.lam,
        "sup": sup,
        "s": float(s_full[index]),
        "y": float(y_full[index]),
        "breakdown": int(np.count_nonzero(bad)),
        "breakdown_points": bad_points,
    }


def _sweep(
    symbol: RadialSymbol,
    params_list: Sequence[ResolventParams],
    fgrid: FrequencyWallGrid,
    k: int,
    delta: float,
    step_factor: float,
    workers: Optional[int],
) -> _SweepOutcome:
    rows = map_ordered(
        lambda params: _sweep_lambda(symbol, params, fgrid, k, delta, step_factor),
        params_list,
        workers,
    )
    outcome = _SweepOutcome(sup=-1.0, argmax={})
    for row in rows:
        outcome.per_lambda.append({"lambda": row["lambda"], "sup": row["sup"]})
        outcome.breakdown_count += row["breakdown"]
        room = MAX_BREAKDOWN_POINTS - len(outcome.breakdown_points)
        outcome.breakdown_points.extend(row["breakdown_points"][:room])
        if row["sup"] > outcome.sup:
            outcome.sup = row["sup"]
            outcome.argmax = {"lambda": row["lambda"], "s": row["s"], "y": row["y"]}
    if outcome.breakdown_count:
        logger.warning(
            f"{symbol.symbol_id}: finite-difference breakdown at "
            f"{outcome.breakdown_count} points"
        )
    return outcome


def _drift(coarse: float, fine: float) -> float:
    if fine == 0.0:
        return 0.0 if coarse == 0.0 else float("inf")
    return abs(fine - coarse) / abs(fine)


def _certify(
    symbol: RadialSymbol,
    k: int,
    delta: float,
    sector_grid: SectorSampleGrid,
    frequency_grid: FrequencyWallGrid,
    alpha: float,
    dim: int,
    uniform: bool,
    refine: bool,
    step_factor: float,
    workers: Optional[int],
) -> MultiplierCertificate:
    if not 0 <= k <= max_order(dim):
        raise InvalidParameterError(
            f"derivative order k={k} outside 0..{max_order(dim)} for d={dim}"
        )
    if not (delta >= 0.0 and math.isfinite(delta)):
        raise InvalidParameterError(f"delta must be >= 0, got {delta}")

    params_list = sector_grid.params(alpha=alpha, dim=dim)
    logger.info(
        f"Certifying {symbol.symbol_id} (k={k}, delta={delta:g}) over "
        f"{len(params_list)} lambda x {frequency_grid.size} (s, y) points"
    )
    coarse = _sweep(symbol, params_list, frequency_grid, k, delta, step_factor, workers)

    drift = refined_sup = None
    if refine:
        fine = _sweep(
            symbol,
            params_list,
            frequency_grid.refined(),
            k,
            delta,
            step_factor,
            workers,
        )
        refined_sup = fine.sup
        drift = _drift(coarse.sup, fine.sup)
        logger.debug(f"{symbol.symbol_id}: refinement drift {drift:.3e}")

    return MultiplierCertificate(
        symbol=symbol,
        k=k,
        delta=delta,
        empirical_sup=coarse.sup,
        argmax=coarse.argmax,
        sector_grid=sector_grid,
        frequency_grid=frequency_grid,
        alpha=alpha,
        dim=dim,
        uniform=uniform,
        refinement_drift=drift,
        refined_sup=refined_sup,
        per_lambda=coarse.per_lambda,
        breakdown_count=coarse.breakdown_count,
        breakdown_points=coarse.breakdown_points,
    )


def _resolve_grids(symbol, sector_grid, frequency_grid, lam):
    sector_grid = sector_grid or default_sector_grid()
    frequency_grid = frequency_grid or FrequencyWallGrid()
    if symbol.uniform and lam is None:
        omega = sector_grid.sector.omega
        if sector_grid.min_modulus < omega * (1.0 - 1e-12):
            raise InvalidParameterError(
                f"uniform certification needs |lambda| >= omega={omega:g}, "
                f"grid starts at {sector_grid.min_modulus:g}"
            )
        return sector_grid, frequency_grid, True
    fixed = complex(sector_grid.sector.omega) if lam is None else complex(lam)
    return SectorSampleGrid.single(sector_grid.sector, fixed), frequency_grid, False


def certify_mstar(
    symbol_id: Union[str, RadialSymbol],
    k: int,
    delta: float = DEFAULT_DELTA,
    sector_grid: Optional[SectorSampleGrid] = None,
    frequency_grid: Optional[FrequencyWallGrid] = None,
    alpha: float = 0.0,
    dim: int = 2,
    lam: Optional[complex] = None,
    refine: bool = True,
    step_factor: float = DEFAULT_STEP_FACTOR,
    workers: Optional[int] = None,
) -> MultiplierCertificate:
    """
    Certify an (M*) symbol: sup of (1 + y) s^k |d^k m/ds^k| exp(delta s y)

    Symbols registered as uniform are swept over every point of the sector
    grid; the others (and any symbol when lam is given) at one fixed lambda,
    by default lambda = omega.

    Args:
        symbol_id: One of m1, m2, m3, s_dy_m0, s_m4, s2_m0 (or a symbol)
        k: Derivative order (0..1 for d = 2, 0..2 for d = 3)
        delta: Exponential weight rate
        sector_grid: Resolvent points (default sector pi/6, omega 1)
        frequency_grid: (s, y) grid (default 200 x 200 log points plus 0)
        alpha: Boundary coefficient
        dim: Space dimension
        lam: Fixed resolvent point (optional)
        refine: Also sweep the doubled (s, y) grid to measure drift
        step_factor: Relative Richardson step
        workers: Threads used across lambda samples

    Returns:
        MultiplierCertificate
    """
    symbol = symbol_id if isinstance(symbol_id, RadialSymbol) else get_symbol(symbol_id, MSTAR)
    sector_grid, frequency_grid, uniform = _resolve_grids(
        symbol, sector_grid, frequency_grid, lam
    )
    return _certify(
        symbol,
        k,
        delta,
        sector_grid,
        frequency_grid,
        alpha,
        dim,
        uniform,
        refine,
        step_factor,
        workers,
    )


def certify_m(
    symbol_id: Union[str, RadialSymbol],
    k: int,
    sector_grid: Optional[SectorSampleGrid] = None,
    frequency_grid: Optional[FrequencyWallGrid] = None,
    alpha: float = 0.0,
    dim: int = 2,
    lam: Optional[complex] = None,
    refine: bool = True,
    step_factor: float = DEFAULT_STEP_FACTOR,
    workers: Optional[int] = None,
) -> MultiplierCertificate:
    """
    Certify an (M) symbol: sup of s^k |d^k m/ds^k| over the s axis

    Args:
        symbol_id: One of one, lambda_m4_factor, lambda_over_d, s_m4_factor,
            sqrt_lambda_p (or a symbol)
        k: Derivative order
        sector_grid: Resolvent points (default sector pi/6, omega 1)
        frequency_grid: Grid whose s axis is swept
        alpha: Boundary coefficient
        dim: Space dimension
        lam: Fixed resolvent point (optional)
        refine: Also sweep the doubled s axis
        step_factor: Relative Richardson step
        workers: Threads used across lambda samples

    Returns:
        MultiplierCertificate with delta = 0
    """
    symbol = symbol_id if isinstance(symbol_id, RadialSymbol) else get_symbol(symbol_id, M)
    sector_grid, frequency_grid, uniform = _resolve_grids(
        symbol, sector_grid, frequency_grid, lam
    )
    return _certify(
        symbol,
        k,
        0.0,
        sector_grid,
        frequency_grid,
        alpha,
        dim,
        uniform,
        refine,
        step_factor,
        workers,
    )


def check_product_lemma(
    cert_m: MultiplierCertificate,
    cert_mstar: MultiplierCertificate,
    delta_tilde: float,
    refine: bool = True,
    step_factor: float = DEFAULT_STEP_FACTOR,
    workers: Optional[int] = None,
) -> MultiplierCertificate:
    """
    Certify m m* and exp(delta_tilde s y) m* on the grids of the (M*) input

    The product keeps the rate delta of the (M*) certificate; the reweighted
    symbol is certified with rate delta - delta_tilde and returned as the
    companion of the product certificate.

    Args:
        cert_m: Certificate of an (M) symbol
        cert_mstar: Certificate of an (M*) symbol
        delta_tilde: Reweighting rate, 0 <= delta_tilde <= delta
        refine: Also sweep the doubled (s, y) grid
        step_factor: Relative Richardson step
        workers: Threads used across lambda samples

    Returns:
        MultiplierCertificate of the product with the reweighted certificate
        in companions
    """
    if cert_m.symbol.kind != M or cert_mstar.symbol.kind != MSTAR:
        raise InvalidParameterError(
            "check_product_lemma expects an (M) and an (M*) certificate"
        )
    if not 0.0 <= delta_tilde <= cert_mstar.delta:
        raise InvalidParameterError(
            f"delta_tilde={delta_tilde:g} must lie in [0, delta={cert_mstar.delta:g}]"
        )
    if (cert_m.alpha, cert_m.dim) != (cert_mstar.alpha, cert_mstar.dim):
        raise InvalidParameterError("certificates were computed for different problems")

    common = dict(
        k=cert_mstar.k,
        sector_grid=cert_mstar.sector_grid,
        frequency_grid=cert_mstar.frequency_grid,
        alpha=cert_mstar.alpha,
        dim=cert_mstar.dim,
        uniform=cert_mstar.uniform,
        refine=refine,
        step_factor=step_factor,
        workers=workers,
    )
    product = _certify(
        ProductSymbol(cert_m.symbol, cert_mstar.symbol), delta=cert_mstar.delta, **common
    )
    reweighted = _certify(
        ReweightedSymbol(cert_mstar.symbol, delta_tilde),
        delta=cert_mstar.delta - delta_tilde,
        **common,
    )
    product.companions.append(reweighted)
    logger.info(
        f"Product lemma for {product.symbol_id}: sup {product.empirical_sup:.6g}, "
        f"reweighted sup {reweighted.empirical_sup:.6g}"
    )
    return product
