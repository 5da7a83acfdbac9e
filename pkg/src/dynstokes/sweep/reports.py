"""
Report records of the scaling experiments
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

MIN_DECAY_SAMPLES = 8
SLOPE_RANGE = (-1.05, -0.95)
TABLE_COLUMNS = (
    "modulus",
    "angle",
    "alpha",
    "p",
    "norm_omega",
    "norm_gamma",
    "phi_norm",
)


@dataclass
class LogLogFit:
    """
    Least-squares line through (log x, log y)

    Attributes:
        slope: Fitted slope (nan when degenerate)
        intercept: Fitted intercept
        residual: Root-mean-square residual of the fit
        degenerate: True when fewer than two positive finite samples remain
    """

    slope: float
    intercept: float
    residual: float
    degenerate: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "degenerate": self.degenerate,
        }


def fit_loglog(x, y) -> LogLogFit:
    """
    Fit log y = slope log x + intercept

    Args:
        x: Positive abscissae
        y: Ordinates (non-positive or non-finite entries are dropped)

    Returns:
        LogLogFit
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    usable = (x > 0.0) & (y > 0.0) & np.isfinite(x) & np.isfinite(y)
    if np.count_nonzero(usable) < 2 or np.unique(x[usable]).size < 2:
        return LogLogFit(math.nan, math.nan, math.nan, degenerate=True)
    log_x, log_y = np.log(x[usable]), np.log(y[usable])
    slope, intercept = np.polyfit(log_x, log_y, 1)
    residual = float(np.sqrt(np.mean((log_y - (slope * log_x + intercept)) ** 2)))
    return LogLogFit(float(slope), float(intercept), residual)


@dataclass
class DecaySample:
    """
    Norms of one solve of a decay sweep

    Attributes:
        modulus: |lambda|
        angle: arg(lambda)
        alpha: Boundary coefficient
        p: Exponent of the norms
        norm_omega: ||u||_{L^p(Omega)}
        norm_gamma: ||tr u||_{L^p(Gamma)}
        phi_norm: ||phi||_{L^p(Gamma)}
        truncation: Wall truncation length Y
        refinement_shift: Largest relative change of a norm when the wall
            grid is refined (None when not checked)
        under_resolved: refinement_shift above the resolution threshold
    """

    modulus: float
    angle: float
    alpha: float
    p: float
    norm_omega: float
    norm_gamma: float
    phi_norm: float
    truncation: float
    refinement_shift: Optional[float] = None
    under_resolved: bool = False

    @property
    def total(self) -> float:
        return self.norm_omega + self.norm_gamma

    @property
    def constant(self) -> float:
        """|lambda| (||u||_Omega + ||u||_Gamma) / ||phi||_Gamma"""
        if self.phi_norm == 0.0:
            return math.nan
        return self.modulus * self.total / self.phi_norm

    def table_row(self) -> Dict[str, float]:
        return {column: getattr(self, column) for column in TABLE_COLUMNS}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "modulus": self.modulus,
            "angle": self.angle,
            "alpha": self.alpha,
            "p": self.p,
            "norm_omega": self.norm_omega,
            "norm_gamma": self.norm_gamma,
            "phi_norm": self.phi_norm,
            "constant": self.constant,
            "truncation": self.truncation,
            "refinement_shift": self.refinement_shift,
            "under_resolved": self.under_resolved,
        }


@dataclass
class DecayReport:
    """
    Norm-versus-|lambda| samples of the boundary-driven solution

    The slope is fitted on log(||u||_Omega + ||u||_Gamma) against log|lambda|
    over all samples; slopes per angle are kept alongside.

    Attributes:
        p: Exponent
        dim: Space dimension
        samples: Samples ordered by modulus, then angle
        fit: Fit over all samples
        fits_by_angle: Fit per angle (keyed by the angle rounded to 1e-12)
        seed: Seed of the boundary data (None when supplied externally)
        flags: Human-readable warnings (degenerate fit, under-resolution)
    """

    p: float
    dim: int
    samples: List[DecaySample]
    fit: LogLogFit
    fits_by_angle: Dict[float, LogLogFit] = field(default_factory=dict)
    seed: Optional[int] = None
    flags: List[str] = field(default_factory=list)

    @property
    def fitted_slope(self) -> float:
        return self.fit.slope

    @property
    def fit_residual(self) -> float:
        return self.fit.residual

    @property
    def degenerate(self) -> bool:
        return self.fit.degenerate

    @property
    def constants(self) -> List[float]:
        return [sample.constant for sample in self.samples]

    @property
    def max_constant(self) -> float:
        finite = [c for c in self.constants if math.isfinite(c)]
        return max(finite) if finite else math.nan

    @property
    def under_resolved(self) -> bool:
        return any(sample.under_resolved for sample in self.samples)

    def slope_within(self, bounds: Tuple[float, float] = SLOPE_RANGE) -> bool:
        low, high = bounds
        return (not self.degenerate) and low <= self.fitted_slope <= high

    def table_rows(self) -> List[Dict[str, float]]:
        return [sample.table_row() for sample in self.samples]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "dim": self.dim,
            "seed": self.seed,
            "fitted_slope": self.fitted_slope,
            "fit_residual": self.fit_residual,
            "fit": self.fit.to_dict(),
            "fits_by_angle": [
                {"angle": angle, **fit.to_dict()}
                for angle, fit in self.fits_by_angle.items()
            ],
            "slope_within_bounds": self.slope_within(),
            "slope_bounds": list(SLOPE_RANGE),
            "max_constant": self.max_constant,
            "under_resolved": self.under_resolved,
            "flags": self.flags,
            "samples": [sample.to_dict() for sample in self.samples],
        }


@dataclass
class AlphaUniformityReport:
    """
    Decay constants of one sweep repeated for several alpha

    Attributes:
        reports: Decay report per alpha, in the order given
        alphas: Boundary coefficients
        max_spread: Allowed ratio of largest to smallest constant
    """

    reports: List[DecayReport]
    alphas: List[float]
    max_spread: float = 2.0

    @property
    def constants(self) -> List[float]:
        return [report.max_constant for report in self.reports]

    @property
    def spread(self) -> float:
        finite = [c for c in self.constants if math.isfinite(c) and c > 0.0]
        if len(finite) < len(self.constants) or not finite:
            return math.nan
        return max(finite) / min(finite)

    @property
    def passed(self) -> bool:
        return math.isfinite(self.spread) and self.spread <= self.max_spread

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alphas": self.alphas,
            "constants": self.constants,
            "slopes": [report.fitted_slope for report in self.reports],
            "spread": self.spread,
            "max_spread": self.max_spread,
            "passed": self.passed,
            "reports": [report.to_dict() for report in self.reports],
        }


@dataclass
class RatioSample:
    """
    One boundary datum of a ratio experiment

    Attributes:
        index: Position of the datum in the family
        numerator: Solution-side norm
        denominator: Data-side norm
        refinement_shift: Relative ratio change under grid refinement (optional)
    """

    index: int
    numerator: float
    denominator: float
    refinement_shift: Optional[float] = None

    @property
    def degenerate(self) -> bool:
        return self.denominator == 0.0

    @property
    def ratio(self) -> float:
        if self.degenerate:
            return math.nan
        return self.numerator / self.denominator

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "ratio": self.ratio,
            "degenerate": self.degenerate,
            "refinement_shift": self.refinement_shift,
        }


@dataclass
class RatioReport:
    """
    Solution-to-data norm ratios over a family of boundary data

    Used for the W^{1,p} gradient estimate and for the second-order proxy,
    whose data norm is a discrete W^{1,p}(Gamma) surrogate of the sharp trace
    norm.

    Attributes:
        experiment: 'gradient_estimate' or 'second_order_proxy'
        params: Resolvent parameters (as a dict)
        p: Exponent
        samples: One entry per datum
        numerator_label: Formula of the numerator
        denominator_label: Formula of the denominator
        proxy: True when the denominator is a surrogate norm
        flags: Human-readable warnings
    """

    experiment: str
    params: Dict[str, Any]
    p: float
    samples: List[RatioSample]
    numerator_label: str
    denominator_label: str
    proxy: bool = False
    flags: List[str] = field(default_factory=list)

    @property
    def ratios(self) -> List[float]:
        return [s.ratio for s in self.samples if not s.degenerate]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios) if self.ratios else math.nan

    @property
    def spread(self) -> float:
        ratios = [r for r in self.ratios if r > 0.0]
        if not ratios:
            return math.nan
        return max(ratios) / min(ratios)

    @property
    def max_refinement_shift(self) -> Optional[float]:
        shifts = [s.refinement_shift for s in self.samples if s.refinement_shift is not None]
        return max(shifts) if shifts else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "experiment": self.experiment,
            "proxy": self.proxy,
            "params": self.params,
            "p": self.p,
            "numerator": self.numerator_label,
            "denominator": self.denominator_label,
            "max_ratio": self.max_ratio,
            "spread": self.spread,
            "max_refinement_shift": self.max_refinement_shift,
            "flags": self.flags,
            "samples": [sample.to_dict() for sample in self.samples],
        }
