"""
Scaling experiments on the boundary-driven solution
"""

import cmath
import logging
import math
from collections import OrderedDict
from typing import Iterable, List, Optional, Sequence

from ..certify.checker import map_ordered
from ..fields.containers import BoundaryField
from ..fields.grids import TangentialGrid, WallGrid
from ..fields.norms import (
    boundary_w1p_norm,
    gradient_lp_norm,
    hessian_lp_norm,
    lp_norm_gamma,
    lp_norm_omega,
    sobolev_w1p_norm,
)
from ..models.errors import InvalidParameterError, ShapeMismatchError
from ..models.params import ResolventParams
from ..solver.assemble import solve_boundary_driven
from .reports import (
    MIN_DECAY_SAMPLES,
    AlphaUniformityReport,
    DecayReport,
    DecaySample,
    RatioReport,
    RatioSample,
    fit_loglog,
)
from .sampler import resample_boundary

logger = logging.getLogger(__name__)

DEFAULT_WALL_INTERVALS = 192
TRUNCATION_FACTOR = 10.0
LAYER_RESOLUTION = 0.1
RESOLUTION_SHIFT = 0.01
GRADIENT_SPREAD_LIMIT = 10.0
DEFAULT_ALPHAS = (0.0, 1.0, 10.0, 100.0)


def truncation_length(params: ResolventParams) -> float:
    """Y = 10 / min(Re sqrt(lambda), 1)"""
    return TRUNCATION_FACTOR / min(cmath.sqrt(params.lam).real, 1.0)


def wall_grid_for(
    params: ResolventParams, intervals: int = DEFAULT_WALL_INTERVALS
) -> WallGrid:
    """
    Graded wall grid adapted to one resolvent point

    The first step resolves the boundary layer of width 1 / Re sqrt(lambda)
    with a tenth of its width.

    Args:
        params: Resolvent parameters
        intervals: Number of wall intervals M

    Returns:
        WallGrid on [0, Y] with Y = 10 / min(Re sqrt(lambda), 1)
    """
    truncation = truncation_length(params)
    layer = cmath.sqrt(params.lam).real * truncation
    first_fraction = min(0.01, 0.25 / intervals, LAYER_RESOLUTION / layer)
    return WallGrid.graded(truncation, intervals, first_fraction=first_fraction)


def _relative_shift(coarse: float, fine: float) -> float:
    if fine == 0.0:
        return 0.0 if coarse == 0.0 else math.inf
    return abs(fine - coarse) / abs(fine)


def _velocity_norms(params, tgrid, wgrid, phi, p, workers=None):
    bundle = solve_boundary_driven(params, tgrid, wgrid, phi, normal_orders=1, workers=workers)
    return (
        lp_norm_omega(bundle.velocity(workers=workers), p),
        lp_norm_gamma(bundle.trace_velocity(), p),
    )


def _check_phi(params: ResolventParams, tgrid: TangentialGrid, phi: BoundaryField):
    if phi.tgrid != tgrid:
        raise ShapeMismatchError("boundary data lives on a different tangential grid")
    if tgrid.tdim != params.tdim:
        raise ShapeMismatchError(
            f"dimension {params.dim} needs a grid with tdim={params.tdim}, "
            f"got {tgrid.tdim}"
        )


def resolvent_decay(
    samples: Iterable[ResolventParams],
    p: float,
    tgrid: TangentialGrid,
    phi: BoundaryField,
    wall_intervals: int = DEFAULT_WALL_INTERVALS,
    refine: bool = True,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> DecayReport:
    """
    Measure how the solution norms decay with |lambda| for fixed data

    Every sample is solved on its own adapted wall grid. With refine set,
    the solve is repeated on the refined wall grid and a sample whose norms
    move by more than 1% is flagged as under-resolved.

    Args:
        samples: Resolvent points, all with the same alpha and dimension
        p: Exponent of the norms
        tgrid: Tangential grid
        phi: Boundary data shared by all samples
        wall_intervals: Wall intervals M per solve
        refine: Check wall resolution by refinement
        seed: Seed the data was drawn with (recorded only)
        workers: Threads across resolvent points (optional)

    Returns:
        DecayReport with samples ordered by modulus, then angle
    """
    ordered = sorted(samples, key=lambda params: (params.modulus, params.angle))
    if len(ordered) < MIN_DECAY_SAMPLES:
        raise InvalidParameterError(
            f"a decay fit needs at least {MIN_DECAY_SAMPLES} samples, got {len(ordered)}"
        )
    dims = {params.dim for params in ordered}
    if len(dims) != 1:
        raise InvalidParameterError("decay samples must share one dimension")
    for params in ordered:
        _check_phi(params, tgrid, phi)
        if params.sector is not None and params.modulus < params.sector.omega:
            raise InvalidParameterError(
                f"|lambda|={params.modulus:.6g} lies below omega={params.sector.omega:g}"
            )

    phi_norm = lp_norm_gamma(phi, p)
    logger.info(
        f"Decay sweep: {len(ordered)} resolvent points, p={p:g}, "
        f"{tgrid.size} modes x {wall_intervals} wall intervals"
    )

    def measure(params: ResolventParams) -> DecaySample:
        wgrid = wall_grid_for(params, wall_intervals)
        norm_omega, norm_gamma = _velocity_norms(params, tgrid, wgrid, phi, p)
        shift = None
        if refine:
            fine_omega, fine_gamma = _velocity_norms(params, tgrid, wgrid.refined(), phi, p)
            shift = max(
                _relative_shift(norm_omega, fine_omega),
                _relative_shift(norm_gamma, fine_gamma),
            )
        logger.debug(
            f"|lambda|={params.modulus:.6g} arg={params.angle:+.6f}: "
            f"omega={norm_omega:.6e} gamma={norm_gamma:.6e}"
        )
        return DecaySample(
            modulus=params.modulus,
            angle=params.angle,
            alpha=params.alpha,
            p=p,
            norm_omega=norm_omega,
            norm_gamma=norm_gamma,
            phi_norm=phi_norm,
            truncation=wgrid.truncation,
            refinement_shift=shift,
            under_resolved=shift is not None and shift > RESOLUTION_SHIFT,
        )

    measured = map_ordered(measure, ordered, workers)

    fit = fit_loglog([s.modulus for s in measured], [s.total for s in measured])
    by_angle: "OrderedDict[float, List[DecaySample]]" = OrderedDict()
    for sample in sorted(measured, key=lambda s: s.angle):
        by_angle.setdefault(round(sample.angle, 12), []).append(sample)
    fits_by_angle = {
        angle: fit_loglog([s.modulus for s in group], [s.total for s in group])
        for angle, group in by_angle.items()
        if len(group) >= 2
    }

    report = DecayReport(
        p=p,
        dim=ordered[0].dim,
        samples=measured,
        fit=fit,
        fits_by_angle=fits_by_angle,
        seed=seed,
    )
    if phi_norm == 0.0:
        report.flags.append("boundary data is zero: every norm vanishes, fit is degenerate")
    elif report.degenerate:
        report.flags.append("fewer than two positive samples: fit is degenerate")
    resolved = [s for s in measured if s.under_resolved]
    if resolved:
        report.flags.append(
            f"{len(resolved)} samples under-resolved (wall refinement shifts a norm "
            f"by more than {RESOLUTION_SHIFT:.0%})"
        )
    for flag in report.flags:
        logger.warning(flag)

    if not report.degenerate:
        logger.info(
            f"Fitted slope {report.fitted_slope:.4f} "
            f"(residual {report.fit_residual:.2e}), max constant {report.max_constant:.4g}"
        )
    return report


def alpha_uniformity(
    samples: Sequence[ResolventParams],
    p: float,
    tgrid: TangentialGrid,
    phi: BoundaryField,
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    wall_intervals: int = DEFAULT_WALL_INTERVALS,
    refine: bool = False,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    max_spread: float = 2.0,
) -> AlphaUniformityReport:
    """
    Repeat one decay sweep for several boundary coefficients

    Args:
        samples: Resolvent points (their alpha is replaced)
        p: Exponent
        tgrid: Tangential grid
        phi: Boundary data
        alphas: Boundary coefficients to compare
        wall_intervals: Wall intervals per solve
        refine: Check wall resolution in every sweep
        seed: Seed the data was drawn with (recorded only)
        workers: Threads across resolvent points (optional)
        max_spread: Allowed ratio of the largest to the smallest constant

    Returns:
        AlphaUniformityReport
    """
    if not alphas:
        raise InvalidParameterError("alpha_uniformity needs at least one alpha")
    reports = []
    for alpha in alphas:
        logger.info(f"Decay sweep for alpha={alpha:g}")
        reports.append(
            resolvent_decay(
                [params.replace(alpha=alpha) for params in samples],
                p,
                tgrid,
                phi,
                wall_intervals=wall_intervals,
                refine=refine,
                seed=seed,
                workers=workers,
            )
        )
    report = AlphaUniformityReport(
        reports=reports, alphas=[float(a) for a in alphas], max_spread=max_spread
    )
    if report.passed:
        logger.info(f"Alpha spread {report.spread:.4f} <= {max_spread:g}")
    else:
        logger.warning(f"Alpha spread {report.spread:.4f} exceeds {max_spread:g}")
    return report


def _ratio_report(experiment, params, p, samples, numerator, denominator, proxy=False):
    report = RatioReport(
        experiment=experiment,
        params=params.to_dict(),
        p=p,
        samples=samples,
        numerator_label=numerator,
        denominator_label=denominator,
        proxy=proxy,
    )
    zero = [s.index for s in samples if s.degenerate]
    if zero:
        report.flags.append(f"boundary data {zero} has zero norm: ratio undefined")
    return report


def gradient_estimate(
    params: ResolventParams,
    p: float,
    tgrid: TangentialGrid,
    wgrid: WallGrid,
    phis: Sequence[BoundaryField],
    refine: bool = True,
    workers: Optional[int] = None,
) -> RatioReport:
    """
    Ratio (||u||_{W^{1,p}} + ||pi||_p) / ||phi||_{L^p(Gamma)} over a data family

    Args:
        params: Fixed resolvent point
        p: Exponent
        tgrid: Tangential grid
        wgrid: Wall grid
        phis: Boundary data family
        refine: Repeat each solve on the refined wall grid
        workers: Threads for symbol evaluation and scipy.fft (optional)

    Returns:
        RatioReport with experiment 'gradient_estimate'
    """

    def numerator(grid: WallGrid, phi: BoundaryField) -> float:
        bundle = solve_boundary_driven(
            params, tgrid, grid, phi, normal_orders=1, workers=workers
        )
        velocity = sobolev_w1p_norm(
            bundle.sampled_velocity_hat(0), bundle.sampled_velocity_hat(1), p, workers
        )
        return velocity + lp_norm_omega(bundle.pressure, p)

    logger.info(f"Gradient estimate at lambda={params.lam:.6g} over {len(phis)} data")
    samples = []
    for index, phi in enumerate(phis):
        _check_phi(params, tgrid, phi)
        sample = RatioSample(index, numerator(wgrid, phi), lp_norm_gamma(phi, p))
        if refine and not sample.degenerate:
            fine = RatioSample(index, numerator(wgrid.refined(), phi), sample.denominator)
            sample.refinement_shift = _relative_shift(sample.ratio, fine.ratio)
        samples.append(sample)

    report = _ratio_report(
        "gradient_estimate",
        params,
        p,
        samples,
        "||u||_{W^{1,p}(Omega)} + ||pi||_{L^p(Omega)}",
        "||phi||_{L^p(Gamma)}",
    )
    if math.isfinite(report.spread) and report.spread > GRADIENT_SPREAD_LIMIT:
        report.flags.append(
            f"ratio spread {report.spread:.3g} exceeds {GRADIENT_SPREAD_LIMIT:g}"
        )
    shift = report.max_refinement_shift
    if shift is not None and shift > RESOLUTION_SHIFT:
        report.flags.append(f"wall refinement shifts a ratio by {shift:.2%}")
    for flag in report.flags:
        logger.warning(flag)
    return report


def second_order_proxy(
    params: ResolventParams,
    p: float,
    tgrid: TangentialGrid,
    wgrid: WallGrid,
    phis: Sequence[BoundaryField],
    refine: bool = True,
    workers: Optional[int] = None,
) -> RatioReport:
    """
    Ratio (||grad^2 u||_p + ||grad pi||_p) / ||phi||_{W^{1,p}(Gamma)} over a data family

    The denominator is a discrete W^{1,p}(Gamma) surrogate of the sharp
    trace norm, so the report is labeled a proxy. With refine set, every
    datum is moved to the doubled tangential grid by zero padding and the
    ratio change is recorded.

    Args:
        params: Fixed resolvent point
        p: Exponent
        tgrid: Tangential grid
        wgrid: Wall grid
        phis: Boundary data family
        refine: Repeat each solve on the refined tangential grid
        workers: Threads for symbol evaluation and scipy.fft (optional)

    Returns:
        RatioReport with experiment 'second_order_proxy' and proxy=True
    """

    def ratio_parts(grid: TangentialGrid, phi: BoundaryField):
        bundle = solve_boundary_driven(
            params, grid, wgrid, phi, normal_orders=2, workers=workers
        )
        second = hessian_lp_norm(
            bundle.sampled_velocity_hat(0),
            bundle.sampled_velocity_hat(1),
            bundle.sampled_velocity_hat(2),
            p,
            workers,
        )
        pressure = gradient_lp_norm(
            bundle.sampled("pressure", 0), bundle.sampled("pressure", 1), p, workers
        )
        return second + pressure, boundary_w1p_norm(phi, p, workers)

    logger.info(f"Second-order proxy at lambda={params.lam:.6g} over {len(phis)} data")
    fine_grid = tgrid.refined()
    samples = []
    for index, phi in enumerate(phis):
        _check_phi(params, tgrid, phi)
        sample = RatioSample(index, *ratio_parts(tgrid, phi))
        if refine and not sample.degenerate:
            fine = RatioSample(
                index, *ratio_parts(fine_grid, resample_boundary(phi, fine_grid))
            )
            sample.refinement_shift = _relative_shift(sample.ratio, fine.ratio)
        samples.append(sample)

    report = _ratio_report(
        "second_order_proxy",
        params,
        p,
        samples,
        "||grad^2 u||_{L^p(Omega)} + ||grad pi||_{L^p(Omega)}",
        "||phi||_{W^{1,p}(Gamma)} (discrete surrogate of the trace norm)",
        proxy=True,
    )
    shift = report.max_refinement_shift
    if shift is not None and shift > RESOLUTION_SHIFT:
        report.flags.append(f"tangential refinement shifts a ratio by {shift:.2%}")
    for flag in report.flags:
        logger.warning(flag)
    return report
