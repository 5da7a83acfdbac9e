"""
Multiplier certificates
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from .grids import FrequencyWallGrid, SectorSampleGrid
from .symbols import RadialSymbol

DRIFT_THRESHOLD = 0.05


@dataclass
class MultiplierCertificate:
    """
    Empirical supremum of a weighted derivative norm of one symbol

    For kind "mstar" the weighted quantity is
    (1 + y) s^k |d^k m / ds^k| exp(delta s y), for kind "m" it is
    s^k |d^k m / ds^k|.

    Attributes:
        symbol: Certified symbol
        k: Derivative order
        delta: Exponential weight rate
        empirical_sup: Largest sampled weighted value
        argmax: Location (lambda, s, y) of the supremum
        sector_grid: Resolvent points swept
        frequency_grid: (s, y) grid swept
        alpha: Boundary coefficient
        dim: Space dimension
        uniform: True when swept over the sector grid, False at a fixed lambda
        refinement_drift: |sup(refined) - sup| / sup(refined), None if not refined
        refined_sup: Supremum on the refined frequency grid
        per_lambda: Supremum per resolvent point, in grid order
        breakdown_count: Points where the FD derivative broke down
        breakdown_points: First few breakdown locations
        companions: Certificates produced alongside this one
    """

    symbol: RadialSymbol
    k: int
    delta: float
    empirical_sup: float
    argmax: Dict[str, Any]
    sector_grid: SectorSampleGrid
    frequency_grid: FrequencyWallGrid
    alpha: float = 0.0
    dim: int = 2
    uniform: bool = True
    refinement_drift: Optional[float] = None
    refined_sup: Optional[float] = None
    per_lambda: List[Dict[str, Any]] = field(default_factory=list)
    breakdown_count: int = 0
    breakdown_points: List[Dict[str, Any]] = field(default_factory=list)
    companions: List["MultiplierCertificate"] = field(default_factory=list)

    @property
    def symbol_id(self) -> str:
        return self.symbol.symbol_id

    @property
    def finite(self) -> bool:
        values = [self.empirical_sup] + [c.empirical_sup for c in self.companions]
        return all(np.isfinite(v) for v in values)

    def stable(self, threshold: float = DRIFT_THRESHOLD) -> bool:
        """Refinement drift below threshold (False when not refined)"""
        if self.refinement_drift is None:
            return False
        return self.refinement_drift < threshold

    def to_dict(self) -> Dict[str, Any]:
        return {
            "symbol_id": self.symbol_id,
            "symbol": self.symbol.to_dict(),
            "k": self.k,
            "delta": self.delta,
            "alpha": self.alpha,
            "dim": self.dim,
            "uniform": self.uniform,
            "empirical_sup": self.empirical_sup,
            "argmax": self.argmax,
            "refinement_drift": self.refinement_drift,
            "refined_sup": self.refined_sup,
            "finite": self.finite,
            "grid": {
                "sector": self.sector_grid.to_dict(),
                "frequency": self.frequency_grid.to_dict(),
            },
            "per_lambda": self.per_lambda,
            "breakdown_count": self.breakdown_count,
            "breakdown_points": self.breakdown_points,
            "companions": [c.to_dict() for c in self.companions],
        }
