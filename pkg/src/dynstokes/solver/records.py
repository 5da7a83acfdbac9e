"""
Residual records for dynstokes
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np


@dataclass
class ResidualMeasure:
    """
    One residual of an identity that should vanish

    The relative values divide by the magnitude of the largest term of the
    identity, so they are comparable across resolvent points.

    Attributes:
        name: Identity name
        max_abs: Largest absolute residual over modes and levels
        l2_abs: Quadrature L2 norm of the residual
        relative_max: max_abs divided by the largest term magnitude
        relative_l2: l2_abs divided by the L2 norm of the term magnitudes
        tolerance: Bound the relative_max value is tested against
        location: Index (mode..., level) of the largest relative residual
    """

    name: str
    max_abs: float
    l2_abs: float
    relative_max: float
    relative_l2: float
    tolerance: float
    location: Optional[List[int]] = None

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.relative_max)) and self.relative_max <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "max_abs": self.max_abs,
            "l2_abs": self.l2_abs,
            "relative_max": self.relative_max,
            "relative_l2": self.relative_l2,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "location": self.location,
        }


@dataclass
class ResidualRecord:
    """
    Group of residual measures produced by one verifier

    Attributes:
        check: Verifier name
        measures: Residual measures
        phi_norm: Largest boundary coefficient magnitude |phi_hat|
        metadata: Additional details of the check
    """

    check: str
    measures: List[ResidualMeasure] = field(default_factory=list)
    phi_norm: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(measure.passed for measure in self.measures)

    def measure(self, name: str) -> ResidualMeasure:
        for measure in self.measures:
            if measure.name == name:
                return measure
        raise KeyError(name)

    def violations(self) -> List[ResidualMeasure]:
        return [measure for measure in self.measures if not measure.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "passed": self.passed,
            "phi_norm": self.phi_norm,
            "measures": [measure.to_dict() for measure in self.measures],
            "metadata": self.metadata,
        }


@dataclass
class WeakFormDefect:
    """
    Defect of the integral formulation for one test field

    Attributes:
        defect: Sum of all terms (complex)
        terms: Individual terms by name
        relative: |defect| divided by the largest term magnitude
        tolerance: Bound the relative defect is tested against
    """

    defect: complex
    terms: Dict[str, complex]
    relative: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.relative)) and self.relative <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "defect": self.defect,
            "terms": self.terms,
            "relative": self.relative,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class WeakFormStudy:
    """
    Weak-form defects on a wall grid and on its midpoint refinement

    The trapezoid error drops by four per refinement, so the Richardson
    combination (4 fine - coarse) / 3 removes it and leaves the
    quadrature-converged defect.

    Attributes:
        coarse: Defect on the solve grid
        fine: Defect on the refined grid
        extrapolated: Richardson-extrapolated defect (complex)
        relative: |extrapolated| divided by the largest fine term
        observed_order: log2(|coarse defect| / |fine defect|)
        tolerance: Bound the relative extrapolated defect is tested against
    """

    coarse: WeakFormDefect
    fine: WeakFormDefect
    extrapolated: complex
    relative: float
    observed_order: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.relative)) and self.relative <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coarse": self.coarse.to_dict(),
            "fine": self.fine.to_dict(),
            "extrapolated": self.extrapolated,
            "relative": self.relative,
            "observed_order": self.observed_order,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
