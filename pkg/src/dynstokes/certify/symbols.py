"""
Registry of radial symbols that can be certified

A symbol is a function m(s, y) of the radial frequency and the wall
distance. Symbols of kind "mstar" are weighted with (1 + y) exp(delta s y)
when certified, symbols of kind "m" depend on s only.
"""

from math import comb
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from ..kernels import scalar
from ..models.errors import InvalidParameterError
from ..models.params import KernelPoint, ResolventParams
from .derivatives import DEFAULT_STEP_FACTOR, richardson_derivative

MSTAR = "mstar"
M = "m"

KernelFunction = Callable[[ResolventParams, KernelPoint], np.ndarray]


class RadialSymbol:
    """
    Radial symbol with optional closed-form s-derivatives

    Attributes:
        symbol_id: Registry name
        kind: "mstar" or "m"
        uniform: Whether certification sweeps it over all sampled lambda
            (otherwise it is certified at a fixed lambda)
        description: Human-readable formula
    """

    exp_rate = 0.0

    def __init__(
        self,
        symbol_id: str,
        kind: str,
        func: KernelFunction,
        analytic: Optional[Dict[int, KernelFunction]] = None,
        uniform: bool = True,
        description: str = "",
    ):
        if kind not in (MSTAR, M):
            raise InvalidParameterError(f"unknown symbol kind {kind!r}")
        self.symbol_id = symbol_id
        self.kind = kind
        self.uniform = uniform
        self.description = description
        self._func = func
        self._analytic = dict(analytic or {})

    def has_analytic(self, order: int) -> bool:
        return order in self._analytic

    def value(self, params: ResolventParams, s, y) -> np.ndarray:
        point = KernelPoint(s, y)
        return np.broadcast_to(self._func(params, point), point.shape)

    def derivative(
        self,
        params: ResolventParams,
        s,
        y,
        order: int,
        step_factor: float = DEFAULT_STEP_FACTOR,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        s-derivative of the symbol, closed form where available

        Args:
            params: Resolvent parameters
            s: Radial frequencies (broadcast against y)
            y: Wall distances
            order: Derivative order k >= 0
            step_factor: Relative Richardson step

        Returns:
            Tuple (values, breakdown mask)
        """
        if order < 0:
            raise InvalidParameterError(f"derivative order must be >= 0, got {order}")
        if order == 0:
            values = self.value(params, s, y)
            return values, np.zeros(values.shape, dtype=bool)
        if order in self._analytic:
            point = KernelPoint(s, y)
            values = np.broadcast_to(self._analytic[order](params, point), point.shape)
            return values, np.zeros(values.shape, dtype=bool)
        return richardson_derivative(
            lambda shifted: self.value(params, shifted, y), s, order, step_factor
        )

    def to_dict(self):
        return {
            "symbol_id": self.symbol_id,
            "kind": self.kind,
            "uniform": self.uniform,
            "description": self.description,
            "analytic_orders": sorted(self._analytic),
        }

    def __repr__(self) -> str:
        return f"RadialSymbol({self.symbol_id!r}, kind={self.kind!r})"


class ProductSymbol(RadialSymbol):
    """Pointwise product of two symbols, differentiated by the Leibniz rule"""

    def __init__(self, left: RadialSymbol, right: RadialSymbol):
        kind = MSTAR if MSTAR in (left.kind, right.kind) else M
        super().__init__(
            symbol_id=f"{left.symbol_id}*{right.symbol_id}",
            kind=kind,
            func=lambda params, point: (
                left.value(params, point.s, point.y)
                * right.value(params, point.s, point.y)
            ),
            uniform=left.uniform and right.uniform,
            description=f"({left.description}) * ({right.description})",
        )
        self.left = left
        self.right = right
        self.exp_rate = left.exp_rate + right.exp_rate

    def derivative(self, params, s, y, order, step_factor=DEFAULT_STEP_FACTOR):
        if order < 0:
            raise InvalidParameterError(f"derivative order must be >= 0, got {order}")
        total = None
        breakdown = None
        for j in range(order + 1):
            left, left_bad = self.left.derivative(params, s, y, j, step_factor)
            right, right_bad = self.right.derivative(
                params, s, y, order - j, step_factor
            )
            term = comb(order, j) * left * right
            bad = left_bad | right_bad
            total = term if total is None else total + term
            breakdown = bad if breakdown is None else breakdown | bad
        return total, breakdown


class ReweightedSymbol(RadialSymbol):
    """
    exp(rate s y) m*(s, y)

    Values and derivatives are returned without the exponential factor,
    which is applied in log space by the certification sweep (exp_rate).
    The s-derivatives follow from
    d^k (e^{r s y} m) = e^{r s y} sum_j C(k, j) (r y)^(k-j) d^j m.
    """

    def __init__(self, base: RadialSymbol, rate: float):
        if rate < 0.0:
            raise InvalidParameterError(f"reweighting rate must be >= 0, got {rate}")
        super().__init__(
            symbol_id=f"exp({rate:g}*s*y)*{base.symbol_id}",
            kind=MSTAR,
            func=lambda params, point: base.value(params, point.s, point.y),
            uniform=base.uniform,
            description=f"exp({rate:g} s y) * ({base.description})",
        )
        self.base = base
        self.rate = float(rate)
        self.exp_rate = base.exp_rate + self.rate

    def derivative(self, params, s, y, order, step_factor=DEFAULT_STEP_FACTOR):
        if order < 0:
            raise InvalidParameterError(f"derivative order must be >= 0, got {order}")
        y_arr = np.asarray(y, dtype=float)
        total = None
        breakdown = None
        for j in range(order + 1):
            base, bad = self.base.derivative(params, s, y, j, step_factor)
            term = comb(order, j) * (self.rate * y_arr) ** (order - j) * base
            total = term if total is None else total + term
            breakdown = bad if breakdown is None else breakdown | bad
        return total, breakdown


def _s_times(func: KernelFunction, power: int = 1) -> KernelFunction:
    return lambda params, point: point.s**power * func(params, point)


def _dy_m0(params, point):
    return scalar.dy_m0(params, point, order=1)


def _one(params, point):
    return np.ones(point.shape, dtype=complex)


def _zero(params, point):
    return np.zeros(point.shape, dtype=complex)


def _lambda_m4_factor(params, point):
    q = scalar.sqrt_shifted(params, point.s)
    return params.lam / (params.lam + params.alpha + q)


def _lambda_over_d(params, point):
    return params.lam / scalar.denominator(params, point)


def _s_m4_factor(params, point):
    q = scalar.sqrt_shifted(params, point.s)
    return point.s / (params.lam + params.alpha + q)


def _sqrt_lambda_p(params, point):
    return np.sqrt(params.lam) * scalar.p_factor(params, point)


MSTAR_SYMBOLS: Dict[str, RadialSymbol] = {
    symbol.symbol_id: symbol
    for symbol in (
        RadialSymbol(
            "m1", MSTAR, scalar.m1, {1: scalar.ds_m1}, description="lambda s m0"
        ),
        RadialSymbol("m2", MSTAR, scalar.m2, description="lambda dy m0"),
        RadialSymbol(
            "m3", MSTAR, scalar.m3, {1: scalar.ds_m3}, description="exp(-y q)"
        ),
        RadialSymbol(
            "s_dy_m0", MSTAR, _s_times(_dy_m0), uniform=False, description="s dy m0"
        ),
        RadialSymbol(
            "s_m4", MSTAR, _s_times(scalar.m4), uniform=False, description="s m4"
        ),
        RadialSymbol(
            "s2_m0", MSTAR, _s_times(scalar.m0, 2), uniform=False, description="s^2 m0"
        ),
    )
}

M_SYMBOLS: Dict[str, RadialSymbol] = {
    symbol.symbol_id: symbol
    for symbol in (
        RadialSymbol("one", M, _one, {1: _zero, 2: _zero}, description="1"),
        RadialSymbol(
            "lambda_m4_factor",
            M,
            _lambda_m4_factor,
            description="lambda / (lambda + alpha + q)",
        ),
        RadialSymbol(
            "lambda_over_d",
            M,
            _lambda_over_d,
            description="lambda / (alpha + lambda + s + q)",
        ),
        RadialSymbol(
            "s_m4_factor", M, _s_m4_factor, description="s / (lambda + alpha + q)"
        ),
        RadialSymbol(
            "sqrt_lambda_p",
            M,
            _sqrt_lambda_p,
            description="sqrt(lambda) (q + s) / (alpha + lambda + q + s)",
        ),
    )
}


def get_symbol(symbol_id: str, kind: Optional[str] = None) -> RadialSymbol:
    """
    Look up a registered symbol

    Args:
        symbol_id: Registry name
        kind: Restrict the lookup to "mstar" or "m" (optional)

    Returns:
        RadialSymbol
    """
    registries = []
    if kind in (None, MSTAR):
        registries.append(MSTAR_SYMBOLS)
    if kind in (None, M):
        registries.append(M_SYMBOLS)
    for registry in registries:
        if symbol_id in registry:
            return registry[symbol_id]
    known = sorted(key for registry in registries for key in registry)
    raise InvalidParameterError(
        f"unknown symbol {symbol_id!r}; known symbols: {', '.join(known)}"
    )
