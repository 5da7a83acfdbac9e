"""
Scalar radial kernels of the boundary-driven resolvent solution

Every function takes ResolventParams and a KernelPoint (s = |xi|, y = x_d)
and is vectorised over the point arrays. With q = sqrt(lambda + s^2) on the
principal branch the kernels are

    E  = exp(-y q) - exp(-y s)
    P  = (q + s) / (alpha + lambda + q + s)
    m0 = P E / lambda
    m1 = lambda s m0 = s P E
    m2 = lambda dy m0
    m3 = exp(-y q)
    m4 = m3 / (lambda + alpha + q)

E is never formed as a plain difference when the two exponentials are close:
q - s = lambda / (q + s), so E = exp(-y s) * expm1(-y lambda / (q + s)).
"""

import numpy as np

from ..models.errors import InvalidParameterError
from ..models.params import KernelPoint, ResolventParams

# Above this real part expm1 of the exponent is no longer close to zero and
# the plain difference of exponentials loses nothing.
_DIRECT_DIFFERENCE_THRESHOLD = 1.0


def expm1_c(z):
    """
    Complex exp(z) - 1 without cancellation for small |z|

    Args:
        z: Complex scalar or array

    Returns:
        exp(z) - 1, computed as expm1(a) cos(b) - 2 sin(b/2)^2 + i exp(a) sin(b)
        for z = a + ib
    """
    z = np.asarray(z, dtype=complex)
    a, b = z.real, z.imag
    half_sin = np.sin(0.5 * b)
    real = np.expm1(a) * np.cos(b) - 2.0 * half_sin * half_sin
    imag = np.exp(a) * np.sin(b)
    return real + 1j * imag


def _point(point) -> KernelPoint:
    if isinstance(point, KernelPoint):
        return point
    if isinstance(point, tuple) and len(point) == 2:
        return KernelPoint(*point)
    raise InvalidParameterError(f"expected a KernelPoint, got {type(point).__name__}")


def _sqrt(lam: complex, s):
    return np.sqrt(lam + np.asarray(s, dtype=float) ** 2 + 0j)


def sqrt_shifted(params: ResolventParams, s):
    """
    Principal square root q = sqrt(lambda + s^2)

    Args:
        params: Resolvent parameters
        s: Radial frequency (scalar or array, >= 0)

    Returns:
        Complex q with Re q > 0
    """
    s_arr = np.asarray(s, dtype=float)
    if np.any(~(s_arr >= 0.0)):
        raise InvalidParameterError("sqrt_shifted requires s >= 0")
    return _sqrt(params.lam, s_arr)


def denominator(params: ResolventParams, point) -> np.ndarray:
    """
    D = alpha + lambda + s + q, the common denominator of m0 and its derivatives

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array D (never zero inside the sector)
    """
    point = _point(point)
    q = _sqrt(params.lam, point.s)
    return params.alpha + params.lam + point.s + q


def p_factor(params: ResolventParams, point) -> np.ndarray:
    """
    P = (q + s) / (alpha + lambda + q + s)

    Args:
        params: Resolvent parameters
        point: Kernel point (only s is used)

    Returns:
        Complex array P
    """
    point = _point(point)
    q = _sqrt(params.lam, point.s)
    qs = q + point.s
    return qs / (params.alpha + params.lam + qs)


def ds_p(params: ResolventParams, point) -> np.ndarray:
    """
    Radial derivative of P, (alpha + lambda)(q + s) / (q (alpha + lambda + q + s)^2)

    Args:
        params: Resolvent parameters
        point: Kernel point (only s is used)

    Returns:
        Complex array dP/ds
    """
    point = _point(point)
    q = _sqrt(params.lam, point.s)
    qs = q + point.s
    shift = params.alpha + params.lam
    return shift * qs / (q * (shift + qs) ** 2)


def _e_parts(lam: complex, s, y):
    """Return (q, exp(-y s), E) with E in factored form"""
    q = _sqrt(lam, s)
    decay = np.exp(-y * s)
    z = -y * lam / (q + s)
    with np.errstate(over="ignore", invalid="ignore"):
        factored = decay * expm1_c(z)
    direct = z.real > _DIRECT_DIFFERENCE_THRESHOLD
    if np.any(direct):
        plain = np.exp(-y * q) - decay
        factored = np.where(direct, plain, factored)
    return q, decay, factored


def big_e(params: ResolventParams, point) -> np.ndarray:
    """
    E = exp(-y q) - exp(-y s) in cancellation-safe factored form

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array E (zero at y = 0)
    """
    point = _point(point)
    return _e_parts(params.lam, point.s, point.y)[2]


def m0(params: ResolventParams, point) -> np.ndarray:
    """
    Scalar fundamental solution m0 = P E / lambda

    The quotient E / lambda is evaluated as exp(-y s) expm1(-y lambda/(q+s)) / lambda,
    which stays accurate when |y lambda / (q + s)| is small.

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array m0 (zero at y = 0)
    """
    point = _point(point)
    q, _, e = _e_parts(params.lam, point.s, point.y)
    qs = q + point.s
    return qs / (params.alpha + params.lam + qs) * e / params.lam


def m0_quotient_form(params: ResolventParams, point) -> np.ndarray:
    """
    m0 from its unsimplified definition

        (exp(-y q) - exp(-y s)) / (lambda + (lambda + alpha)(q - s))

    Kept as an algebraic cross-check of m0; it cancels badly when y|q - s|
    is small.

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array
    """
    point = _point(point)
    q = _sqrt(params.lam, point.s)
    numerator = np.exp(-point.y * q) - np.exp(-point.y * point.s)
    return numerator / (params.lam + (params.lam + params.alpha) * (q - point.s))


def m1(params: ResolventParams, point) -> np.ndarray:
    """
    m1 = lambda s m0 = s P E

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array m1
    """
    point = _point(point)
    q, _, e = _e_parts(params.lam, point.s, point.y)
    qs = q + point.s
    return point.s * qs / (params.alpha + params.lam + qs) * e


def m3(params: ResolventParams, point) -> np.ndarray:
    """
    m3 = exp(-y q)

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array m3
    """
    point = _point(point)
    return np.exp(-point.y * _sqrt(params.lam, point.s))


def m4(params: ResolventParams, point) -> np.ndarray:
    """
    m4 = exp(-y q) / (lambda + alpha + q)

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array m4
    """
    point = _point(point)
    q = _sqrt(params.lam, point.s)
    return np.exp(-point.y * q) / (params.lam + params.alpha + q)


def dy_m0(params: ResolventParams, point, order: int = 1) -> np.ndarray:
    """
    Normal derivative d^k m0 / dy^k

    Uses the recursion d^k m0 = -s d^(k-1) m0 - (-q)^(k-1) m3 / D with
    D = alpha + lambda + s + q, so no difference of exponentials is formed
    beyond the one inside m0 itself.

    Args:
        params: Resolvent parameters
        point: Kernel point
        order: Derivative order k >= 0 (k = 0 returns m0)

    Returns:
        Complex array
    """
    if order < 0:
        raise InvalidParameterError(f"derivative order must be >= 0, got {order}")
    point = _point(point)
    value = m0(params, point)
    if order == 0:
        return value

    q = _sqrt(params.lam, point.s)
    source = np.exp(-point.y * q) / (params.alpha + params.lam + point.s + q)
    for k in range(1, order + 1):
        value = -point.s * value - (-q) ** (k - 1) * source
    return value


def m2(params: ResolventParams, point) -> np.ndarray:
    """
    m2 = lambda dy m0 = -m1 - lambda / (alpha + lambda + s + q) m3

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array m2
    """
    return params.lam * dy_m0(params, point, order=1)


def ds_m3(params: ResolventParams, point) -> np.ndarray:
    """
    Radial derivative of m3, -(s y / q) exp(-y q)

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array
    """
    point = _point(point)
    q = _sqrt(params.lam, point.s)
    return -(point.s * point.y / q) * np.exp(-point.y * q)


def ds_sE(params: ResolventParams, point) -> np.ndarray:
    """
    Radial derivative of s E

        (1 - s y) E + lambda s y / ((s + q) q) exp(-y q)

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array
    """
    point = _point(point)
    q, _, e = _e_parts(params.lam, point.s, point.y)
    sy = point.s * point.y
    return (1.0 - sy) * e + params.lam * sy / ((point.s + q) * q) * np.exp(
        -point.y * q
    )


def ds_m1(params: ResolventParams, point) -> np.ndarray:
    """
    Radial derivative of m1 = P (s E), dP/ds (s E) + P d(s E)/ds

    Args:
        params: Resolvent parameters
        point: Kernel point

    Returns:
        Complex array
    """
    point = _point(point)
    s_e = point.s * big_e(params, point)
    return ds_p(params, point) * s_e + p_factor(params, point) * ds_sE(params, point)
