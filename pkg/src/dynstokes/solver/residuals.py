"""
Residual verifiers for solved bundles

All residuals are evaluated mode by mode on the spectral coefficients with
analytic normal derivatives, so they test the closed forms rather than a
discretization. Relative values divide by the largest term of each identity.
"""

import logging
import math
from typing import Iterable, List, Optional

import numpy as np

from ..fields.containers import BoundaryField, require_components
from ..fields.transforms import to_spectral
from ..kernels.scalar import sqrt_shifted
from ..models.errors import InvalidParameterError, ShapeMismatchError
from ..models.params import ResolventParams
from .assemble import modal_response
from .bundle import SolutionBundle
from .probes import SolenoidalProbe
from .records import ResidualMeasure, ResidualRecord, WeakFormDefect, WeakFormStudy

logger = logging.getLogger(__name__)

DEFAULT_FD_STEP = 1e-5


def _pointwise(values: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(values) ** 2, axis=-1))


def _l2(magnitude: np.ndarray, tgrid, weights: Optional[np.ndarray]) -> float:
    """Parseval L2 norm of a pointwise magnitude given on the spectral lattice"""
    squares = magnitude**2
    scale = tgrid.cell_volume / tgrid.size
    if weights is None:
        return float(np.sqrt(scale * np.sum(squares)))
    per_level = squares.reshape(-1, weights.size).sum(axis=0)
    return float(np.sqrt(scale * np.dot(weights, per_level)))


def _measure(
    name: str,
    residual: np.ndarray,
    terms: Iterable[np.ndarray],
    tgrid,
    weights: Optional[np.ndarray],
    tolerance: float,
) -> ResidualMeasure:
    """
    Summarize a residual array against the terms it is made of

    Args:
        name: Identity name
        residual: Complex residual, components on the last axis
        terms: Arrays of the individual terms (same layout as residual)
        tgrid: Tangential grid (for the Parseval weight)
        weights: Trapezoid weights over wall levels, or None on the boundary
        tolerance: Bound for the relative maximum

    Returns:
        ResidualMeasure
    """
    magnitude = _pointwise(residual)
    scale = np.zeros_like(magnitude)
    for term in terms:
        scale = np.maximum(scale, np.broadcast_to(_pointwise(term), scale.shape))

    max_abs = float(np.max(magnitude))
    scale_max = float(np.max(scale))
    if scale_max > 0.0:
        relative_max = max_abs / scale_max
    else:
        relative_max = 0.0 if max_abs == 0.0 else float("inf")

    l2_abs = _l2(magnitude, tgrid, weights)
    l2_scale = _l2(scale, tgrid, weights)
    if l2_scale > 0.0:
        relative_l2 = l2_abs / l2_scale
    else:
        relative_l2 = 0.0 if l2_abs == 0.0 else float("inf")

    location = [int(i) for i in np.unravel_index(np.argmax(magnitude), magnitude.shape)]
    measure = ResidualMeasure(
        name=name,
        max_abs=max_abs,
        l2_abs=l2_abs,
        relative_max=relative_max,
        relative_l2=relative_l2,
        tolerance=tolerance,
        location=location,
    )
    if not measure.passed:
        logger.warning(
            f"{name}: relative residual {relative_max:.3e} exceeds {tolerance:.1e} "
            f"at index {location}"
        )
    return measure


def _require_orders(bundle: SolutionBundle, name: str, order: int, check: str) -> None:
    if bundle.max_orders[name] < order:
        raise ShapeMismatchError(
            f"{check} needs normal derivatives of {name} up to order {order}; "
            f"solve with normal_orders >= {order - (2 if name == 'u_d' else 0)}"
        )


def _params(bundle: SolutionBundle, params: Optional[ResolventParams]):
    if params is None:
        return bundle.params
    if params != bundle.params:
        raise InvalidParameterError("params differ from those the bundle was solved with")
    return params


def _phi_norm(phi_hat: np.ndarray) -> float:
    return float(np.max(_pointwise(phi_hat))) if phi_hat.size else 0.0


def fd_derivative_agreement(
    bundle: SolutionBundle,
    params: Optional[ResolventParams] = None,
    step: float = DEFAULT_FD_STEP,
    tolerance: float = 1e-6,
) -> ResidualMeasure:
    """
    Compare analytic dy of every output with Richardson central differences

    The symbols are re-evaluated at y +- h and y +- h/2 for every wall level
    with y >= h; the step is scaled by the fastest decay rate on the grid.

    Args:
        bundle: Solved bundle
        params: Resolvent parameters (defaults to the bundle's)
        step: Base step before scaling
        tolerance: Bound for the relative deviation

    Returns:
        ResidualMeasure named 'dy_finite_difference'
    """
    params = _params(bundle, params)
    tgrid, wgrid = bundle.tgrid, bundle.wgrid
    xi = tgrid.xi()
    s_max = float(np.max(np.sqrt(np.sum(xi * xi, axis=-1))))
    rate = max(1.0, s_max, float(np.max(np.abs(sqrt_shifted(params, s_max)))))
    h = step / rate

    index = np.nonzero(wgrid.levels >= h)[0]
    y = wgrid.levels[index]
    phi_hat = bundle.phi_hat.values

    def sampled(shift: float) -> np.ndarray:
        return np.concatenate(modal_response(params, xi, y + shift, phi_hat, 0), axis=-1)

    def central(width: float) -> np.ndarray:
        return (sampled(width) - sampled(-width)) / (2.0 * width)

    richardson = (4.0 * central(0.5 * h) - central(h)) / 3.0
    analytic = np.concatenate(
        [
            bundle.spectral(name, 1).values[..., index, :]
            for name in ("u_prime", "u_d", "pressure")
        ],
        axis=-1,
    )
    return _measure(
        "dy_finite_difference",
        richardson - analytic,
        [analytic],
        tgrid,
        wgrid.trapezoid_weights()[index],
        tolerance,
    )


def residual_interior(
    bundle: SolutionBundle,
    params: Optional[ResolventParams] = None,
    tolerance: float = 1e-10,
    divergence_tolerance: float = 1e-10,
    fd_tolerance: float = 1e-6,
    fd_step: float = DEFAULT_FD_STEP,
) -> ResidualRecord:
    """
    Interior momentum and divergence residuals of a solved bundle

    Per mode: (lambda + s^2 - dy^2) u_hat + (i xi, dy) pi_hat and
    i xi . u'_hat + dy u_d_hat, with analytic second derivatives. The record
    also carries the analytic-versus-finite-difference check of dy.

    Args:
        bundle: Solved bundle (normal_orders >= 2)
        params: Resolvent parameters (defaults to the bundle's)
        tolerance: Bound for the momentum residuals
        divergence_tolerance: Bound for the divergence residual
        fd_tolerance: Bound for the finite-difference agreement
        fd_step: Base finite-difference step

    Returns:
        ResidualRecord with measures momentum_tangential, momentum_normal,
        divergence and dy_finite_difference
    """
    params = _params(bundle, params)
    _require_orders(bundle, "u_prime", 2, "residual_interior")
    tgrid, wgrid = bundle.tgrid, bundle.wgrid
    weights = wgrid.trapezoid_weights()

    xi = tgrid.xi()[..., None, :]
    shift = params.lam + np.sum(xi * xi, axis=-1, keepdims=True)

    up = bundle.spectral("u_prime", 0).values
    up2 = bundle.spectral("u_prime", 2).values
    ud = bundle.spectral("u_d", 0).values
    ud1 = bundle.spectral("u_d", 1).values
    ud2 = bundle.spectral("u_d", 2).values
    pr = bundle.spectral("pressure", 0).values
    pr1 = bundle.spectral("pressure", 1).values

    grad_p = 1j * xi * pr
    tangential_terms = [shift * up, up2, grad_p]
    normal_terms = [shift * ud, ud2, pr1]
    div_terms = [1j * xi * up, ud1]

    measures: List[ResidualMeasure] = [
        _measure(
            "momentum_tangential",
            tangential_terms[0] - tangential_terms[1] + tangential_terms[2],
            tangential_terms,
            tgrid,
            weights,
            tolerance,
        ),
        _measure(
            "momentum_normal",
            normal_terms[0] - normal_terms[1] + normal_terms[2],
            normal_terms,
            tgrid,
            weights,
            tolerance,
        ),
        _measure(
            "divergence",
            np.sum(div_terms[0], axis=-1, keepdims=True) + div_terms[1],
            div_terms,
            tgrid,
            weights,
            divergence_tolerance,
        ),
        fd_derivative_agreement(bundle, params, fd_step, fd_tolerance),
    ]
    return ResidualRecord(
        check="interior",
        measures=measures,
        phi_norm=_phi_norm(bundle.phi_hat.values),
    )


def _phi_hat(bundle: SolutionBundle, phi: Optional[BoundaryField]) -> np.ndarray:
    if phi is None:
        return bundle.phi_hat.values
    if phi.tgrid != bundle.tgrid:
        raise ShapeMismatchError("boundary data lives on a different tangential grid")
    require_components(phi, bundle.params.tdim, "phi")
    return to_spectral(phi).values


def residual_boundary(
    bundle: SolutionBundle,
    phi: Optional[BoundaryField] = None,
    params: Optional[ResolventParams] = None,
    tolerance: float = 1e-10,
) -> ResidualRecord:
    """
    Boundary residuals of a solved bundle

    Reports (lambda + alpha) u' - dy u' - phi and u_d at y = 0.

    Args:
        bundle: Solved bundle
        phi: Boundary data to test against (defaults to the solved data)
        params: Resolvent parameters (defaults to the bundle's)
        tolerance: Bound for both relative residuals

    Returns:
        ResidualRecord with measures dynamic_boundary and normal_trace
    """
    params = _params(bundle, params)
    phi_hat = _phi_hat(bundle, phi)
    tgrid = bundle.tgrid

    up0 = bundle.spectral("u_prime", 0).values[..., 0, :]
    up1 = bundle.spectral("u_prime", 1).values[..., 0, :]
    ud0 = bundle.spectral("u_d", 0).values[..., 0, :]
    shift = params.lam + params.alpha

    dynamic_terms = [shift * up0, up1, phi_hat]
    measures = [
        _measure(
            "dynamic_boundary",
            dynamic_terms[0] - dynamic_terms[1] - dynamic_terms[2],
            dynamic_terms,
            tgrid,
            None,
            tolerance,
        ),
        _measure("normal_trace", ud0, [phi_hat], tgrid, None, tolerance),
    ]
    return ResidualRecord(check="boundary", measures=measures, phi_norm=_phi_norm(phi_hat))


def biharmonic_check(
    bundle: SolutionBundle,
    params: Optional[ResolventParams] = None,
    tolerance: float = 1e-9,
    boundary_tolerance: float = 1e-8,
) -> ResidualRecord:
    """
    Fourth-order equation of the normal velocity and its boundary row

    Per mode (lambda + s^2 - dy^2)(s^2 - dy^2) u_d_hat, expanded into
    (lambda + s^2) s^2 u - (lambda + 2 s^2) dy^2 u + dy^4 u, and at y = 0
    (lambda + alpha - dy) dy u_d_hat + i xi . phi_hat.

    Args:
        bundle: Solved bundle (normal_orders >= 2)
        params: Resolvent parameters (defaults to the bundle's)
        tolerance: Bound for the interior residual
        boundary_tolerance: Bound for the boundary row

    Returns:
        ResidualRecord with measures fourth_order and boundary_row
    """
    params = _params(bundle, params)
    _require_orders(bundle, "u_d", 4, "biharmonic_check")
    tgrid, wgrid = bundle.tgrid, bundle.wgrid

    xi_t = tgrid.xi()
    xi = xi_t[..., None, :]
    s2 = np.sum(xi * xi, axis=-1, keepdims=True)
    lam = params.lam

    u0, u1, u2, _, u4 = (bundle.spectral("u_d", k).values for k in range(5))
    interior_terms = [(lam + s2) * s2 * u0, (lam + 2.0 * s2) * u2, u4]

    phi_hat = bundle.phi_hat.values
    forcing = 1j * np.sum(xi_t * phi_hat, axis=-1, keepdims=True)
    boundary_terms = [(lam + params.alpha) * u1[..., 0, :], u2[..., 0, :], forcing]

    measures = [
        _measure(
            "fourth_order",
            interior_terms[0] - interior_terms[1] + interior_terms[2],
            interior_terms,
            tgrid,
            wgrid.trapezoid_weights(),
            tolerance,
        ),
        _measure(
            "boundary_row",
            boundary_terms[0] - boundary_terms[1] + boundary_terms[2],
            boundary_terms,
            tgrid,
            None,
            boundary_tolerance,
        ),
    ]
    return ResidualRecord(
        check="biharmonic", measures=measures, phi_norm=_phi_norm(phi_hat)
    )


def _jacobian(values: np.ndarray, dy_values: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Gradient coefficients G[..., c, a] = d_a u_c with the normal direction last"""
    tangential = 1j * xi[..., None, None, :] * values[..., :, None]
    return np.concatenate([tangential, dy_values[..., :, None]], axis=-1)


def weak_form_check(
    bundle: SolutionBundle,
    params: Optional[ResolventParams],
    test_field: SolenoidalProbe,
    tolerance: float = 1e-4,
) -> WeakFormDefect:
    """
    Defect of the integral formulation against a solenoidal test field

        lambda int u.v* + (lambda + alpha) int_G u.v* + int 2 D(u):D(v*) - int_G phi.v*

    Tangential integrals are exact through Parseval, the wall-normal ones use
    the trapezoid rule, so the defect measures the wall quadrature error.

    Args:
        bundle: Solved bundle
        params: Resolvent parameters (None for the bundle's)
        test_field: Probe on the bundle's grids
        tolerance: Bound for the relative defect

    Returns:
        WeakFormDefect
    """
    params = _params(bundle, params)
    tgrid, wgrid = bundle.tgrid, bundle.wgrid
    if test_field.tgrid != tgrid or test_field.wgrid != wgrid:
        raise ShapeMismatchError("test field must live on the bundle's grids")

    scale = tgrid.cell_volume / tgrid.size
    weights = wgrid.trapezoid_weights()

    def volume(a: np.ndarray, b: np.ndarray) -> complex:
        pointwise = np.sum(a * np.conj(b), axis=tuple(range(tgrid.tdim)))
        per_level = pointwise.reshape(wgrid.levels.size, -1).sum(axis=-1)
        return complex(scale * np.dot(weights, per_level))

    def surface(a: np.ndarray, b: np.ndarray) -> complex:
        return complex(scale * np.sum(a * np.conj(b)))

    u = bundle.velocity_hat(0).values
    du = bundle.velocity_hat(1).values
    v = test_field.velocity_hat(0).values
    dv = test_field.velocity_hat(1).values

    xi = tgrid.xi()[..., None, :]
    grad_u = _jacobian(u, du, xi)
    grad_v = _jacobian(v, dv, xi)
    strain_u = 0.5 * (grad_u + np.swapaxes(grad_u, -1, -2))
    strain_v = 0.5 * (grad_v + np.swapaxes(grad_v, -1, -2))
    flat = strain_u.shape[:-2] + (-1,)

    v_trace = test_field.trace_hat().values
    terms = {
        "volume_mass": params.lam * volume(u, v),
        "volume_strain": 2.0 * volume(strain_u.reshape(flat), strain_v.reshape(flat)),
        "boundary_mass": (params.lam + params.alpha)
        * surface(bundle.spectral("u_prime", 0).values[..., 0, :], v_trace),
        "boundary_data": -surface(bundle.phi_hat.values, v_trace),
    }
    defect = sum(terms.values(), 0j)
    largest = max(abs(value) for value in terms.values())
    if largest > 0.0:
        relative = abs(defect) / largest
    else:
        relative = 0.0 if defect == 0 else float("inf")

    result = WeakFormDefect(
        defect=defect, terms=terms, relative=relative, tolerance=tolerance
    )
    if not result.passed:
        logger.warning(
            f"weak form: relative defect {relative:.3e} exceeds {tolerance:.1e}"
        )
    return result


def weak_form_refinement(
    coarse: WeakFormDefect, fine: WeakFormDefect, tolerance: float = 1e-4
) -> WeakFormStudy:
    """
    Combine weak-form defects of a solve and of its wall-refined solve

    Args:
        coarse: Defect on the solve grid
        fine: Defect on the midpoint-refined wall grid, same data and probe
        tolerance: Bound for the relative extrapolated defect

    Returns:
        WeakFormStudy
    """
    extrapolated = (4.0 * fine.defect - coarse.defect) / 3.0
    largest = max(abs(value) for value in fine.terms.values())
    if largest > 0.0:
        relative = abs(extrapolated) / largest
    else:
        relative = 0.0 if extrapolated == 0 else float("inf")
    if abs(fine.defect) > 0.0 and abs(coarse.defect) > 0.0:
        observed_order = math.log2(abs(coarse.defect) / abs(fine.defect))
    else:
        observed_order = math.nan

    study = WeakFormStudy(
        coarse=coarse,
        fine=fine,
        extrapolated=extrapolated,
        relative=relative,
        observed_order=observed_order,
        tolerance=tolerance,
    )
    if not study.passed:
        logger.warning(
            f"weak form: extrapolated relative defect {relative:.3e} exceeds "
            f"{tolerance:.1e} (observed order {observed_order:.2f})"
        )
    return study
