"""
Assembly of the multiplier solution for boundary-driven problems
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..fields.containers import (
    BoundaryField,
    PhysicalField,
    SpectralField,
    require_components,
)
from ..fields.grids import TangentialGrid, WallGrid
from ..fields.transforms import inverse_dft, to_spectral
from ..kernels.symbols import pressure_symbol, u_d_symbol, u_prime_symbol
from ..models.errors import InvalidParameterError, ShapeMismatchError
from ..models.params import ResolventParams
from .bundle import FIELD_NAMES, SolutionBundle, sample_coefficients

logger = logging.getLogger(__name__)

# wall levels evaluated together; bounds the size of the symbol arrays
LEVEL_BLOCK = 32


def apply_u_prime(params, xi_b, y, phi_b, order):
    return np.einsum(
        "...ij,...j->...i", u_prime_symbol(params, xi_b, y, order=order), phi_b
    )


def apply_u_d(params, xi_b, y, phi_b, order):
    return np.sum(u_d_symbol(params, xi_b, y, order=order) * phi_b, axis=-1)[..., None]


def apply_pressure(params, xi_b, y, phi_b, order):
    return np.sum(pressure_symbol(params, xi_b, y, order=order) * phi_b, axis=-1)[
        ..., None
    ]


def modal_response(
    params: ResolventParams,
    xi: np.ndarray,
    y: np.ndarray,
    phi_hat: np.ndarray,
    order: int = 0,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Apply the solution symbols to boundary coefficients

    Args:
        params: Resolvent parameters
        xi: Mode frequencies, shape (..., d-1)
        y: Wall levels, shape (L,)
        phi_hat: Boundary coefficients, shape (..., d-1)
        order: Normal derivative order

    Returns:
        Tuple (u_prime, u_d, pressure) of arrays shaped (..., L, d-1),
        (..., L, 1) and (..., L, 1)
    """
    xi_b = np.asarray(xi, dtype=float)[..., None, :]
    phi_b = np.asarray(phi_hat, dtype=complex)[..., None, :]
    y = np.asarray(y, dtype=float)
    return (
        apply_u_prime(params, xi_b, y, phi_b, order),
        apply_u_d(params, xi_b, y, phi_b, order),
        apply_pressure(params, xi_b, y, phi_b, order),
    )


def _blocks(count: int, size: int) -> List[slice]:
    return [slice(start, min(start + size, count)) for start in range(0, count, size)]


def _solve_orders(
    params: ResolventParams,
    xi: np.ndarray,
    levels: np.ndarray,
    phi_hat: np.ndarray,
    orders: Tuple[int, int, int],
    workers: Optional[int],
) -> Tuple[List[np.ndarray], List[np.ndarray], List[np.ndarray]]:
    tshape = xi.shape[:-1]
    count = levels.size
    widths = (params.tdim, 1, 1)
    appliers = (apply_u_prime, apply_u_d, apply_pressure)
    outputs = [
        [np.zeros(tshape + (count, width), complex) for _ in range(top + 1)]
        for width, top in zip(widths, orders)
    ]
    xi_b = xi[..., None, :]
    phi_b = phi_hat[..., None, :]

    def fill(block: slice) -> None:
        y = levels[block]
        for apply, arrays in zip(appliers, outputs):
            for order, target in enumerate(arrays):
                target[..., block, :] = apply(params, xi_b, y, phi_b, order)

    blocks = _blocks(count, LEVEL_BLOCK)
    if workers and workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # each block writes a disjoint slice exactly once
            list(pool.map(fill, blocks))
    else:
        for block in blocks:
            fill(block)
    return outputs[0], outputs[1], outputs[2]


def _nyquist_average(
    params: ResolventParams,
    tgrid: TangentialGrid,
    levels: np.ndarray,
    phi_hat: np.ndarray,
    orders: Tuple[int, int, int],
    workers: Optional[int],
) -> Dict[str, Tuple[np.ndarray, ...]]:
    mask = tgrid.nyquist_mask()
    images = tgrid.nyquist_images()
    totals = None
    for xi in images:
        outputs = _solve_orders(
            params, xi[mask], levels, phi_hat[mask], orders, workers
        )
        if totals is None:
            totals = outputs
        else:
            for total, arrays in zip(totals, outputs):
                for target, values in zip(total, arrays):
                    target += values
    return {
        name: tuple(values / len(images) for values in total)
        for name, total in zip(FIELD_NAMES, totals)
    }


def solve_boundary_driven(
    params: ResolventParams,
    tgrid: TangentialGrid,
    wgrid: WallGrid,
    phi: BoundaryField,
    normal_orders: int = 2,
    workers: Optional[int] = None,
) -> SolutionBundle:
    """
    Solve the boundary-driven resolvent problem with data phi

    Every tangential mode is multiplied by the closed-form symbols at every
    wall level; normal derivatives come from the analytic symbol derivatives.
    The physical fields use the symbols averaged over the Nyquist sign
    images (TangentialGrid.nyquist_images), so the odd symbols of u_d and
    the pressure drop out at k = -n/2 and real data with a real lambda
    give real samples.

    Args:
        params: Resolvent parameters
        tgrid: Tangential grid
        wgrid: Wall grid
        phi: Boundary data with d-1 components (physical or spectral)
        normal_orders: Highest normal derivative of u' and the pressure to
            keep (u_d is kept two orders higher)
        workers: Worker threads for symbol evaluation and scipy.fft (optional)

    Returns:
        SolutionBundle
    """
    if not isinstance(params, ResolventParams):
        raise InvalidParameterError("solve_boundary_driven needs ResolventParams")
    if tgrid.tdim != params.tdim:
        raise ShapeMismatchError(
            f"tangential grid has tdim={tgrid.tdim}, dimension {params.dim} needs "
            f"{params.tdim}"
        )
    if phi.tgrid != tgrid:
        raise ShapeMismatchError("boundary data lives on a different tangential grid")
    require_components(phi, params.tdim, "phi")
    if normal_orders < 1:
        raise InvalidParameterError("normal_orders must be >= 1")

    logger.debug(
        f"Solving lambda={params.lam:.6g} alpha={params.alpha:g} d={params.dim} "
        f"on {tgrid.size} modes x {wgrid.levels.size} levels"
    )

    phi_hat = to_spectral(phi, workers)
    orders = (normal_orders, normal_orders + 2, normal_orders)
    up, ud, pr = _solve_orders(
        params, tgrid.xi(), wgrid.levels, phi_hat.values, orders, workers
    )

    nyquist_hat = _nyquist_average(
        params, tgrid, wgrid.levels, phi_hat.values, orders, workers
    )
    mask = tgrid.nyquist_mask()

    def spectral(arrays):
        return tuple(SpectralField(tgrid, wgrid, values) for values in arrays)

    u_prime_hat = spectral(up)
    u_d_hat = spectral(ud)
    pressure_hat = spectral(pr)

    def physical(field: SpectralField, name: str, order: int) -> PhysicalField:
        sampled = sample_coefficients(field, mask, nyquist_hat[name][order])
        return inverse_dft(sampled, workers)

    u_prime = physical(u_prime_hat[0], "u_prime", 0)
    return SolutionBundle(
        params=params,
        tgrid=tgrid,
        wgrid=wgrid,
        phi_hat=phi_hat,
        u_prime_hat=u_prime_hat,
        u_d_hat=u_d_hat,
        pressure_hat=pressure_hat,
        nyquist_hat=nyquist_hat,
        u_prime=u_prime,
        u_d=physical(u_d_hat[0], "u_d", 0),
        pressure=physical(pressure_hat[0], "pressure", 0),
        trace_u_prime=u_prime.trace(),
        dy_u_prime=physical(u_prime_hat[1], "u_prime", 1),
        dy_u_d=physical(u_d_hat[1], "u_d", 1),
        dy_pressure=physical(pressure_hat[1], "pressure", 1),
    )
