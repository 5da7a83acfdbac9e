"""
Sample grids for certification sweeps
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..models.errors import InvalidParameterError
from ..models.params import ResolventParams, SectorSpec

DEFAULT_MARGIN = math.pi / 90.0
DEFAULT_MAX_MODULUS = 1e4


@dataclass(frozen=True)
class SectorSampleGrid:
    """
    Resolvent points r e^{i theta} strictly inside the sector

    Attributes:
        sector: Sector the points must lie in
        moduli: Positive moduli |lambda|
        angles: Arguments with |theta| <= pi - epsilon - margin
        margin: Distance kept from the sector boundary
    """

    sector: SectorSpec
    moduli: Tuple[float, ...]
    angles: Tuple[float, ...]
    margin: float = DEFAULT_MARGIN

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(float(r) for r in self.moduli))
        object.__setattr__(self, "angles", tuple(float(t) for t in self.angles))
        if not self.moduli or not self.angles:
            raise InvalidParameterError("sector grid needs at least one modulus and angle")
        if not self.margin > 0.0:
            raise InvalidParameterError(f"sector margin must be > 0, got {self.margin}")
        if any(not (r > 0.0 and math.isfinite(r)) for r in self.moduli):
            raise InvalidParameterError("sector grid moduli must be positive and finite")
        limit = self.sector.max_angle - self.margin
        if limit <= 0.0:
            raise InvalidParameterError(
                f"margin {self.margin:g} leaves no admissible angle for "
                f"epsilon={self.sector.epsilon:g}"
            )
        for angle in self.angles:
            if abs(angle) > limit + 1e-15:
                raise InvalidParameterError(
                    f"angle {angle:.6g} violates |theta| <= pi - epsilon - margin "
                    f"= {limit:.6g}"
                )

    @classmethod
    def default(
        cls,
        sector: SectorSpec,
        moduli_count: int = 25,
        angle_count: int = 5,
        max_modulus: float = DEFAULT_MAX_MODULUS,
        margin: float = DEFAULT_MARGIN,
    ) -> "SectorSampleGrid":
        """
        Log-spaced moduli from omega to max_modulus and equispaced angles
        including both extremes +-(pi - epsilon - margin)

        Args:
            sector: Resolvent sector
            moduli_count: Number of moduli
            angle_count: Number of angles (odd counts include theta = 0)
            max_modulus: Largest modulus
            margin: Distance kept from the sector boundary

        Returns:
            SectorSampleGrid object
        """
        if max_modulus < sector.omega:
            raise InvalidParameterError(
                f"max_modulus {max_modulus:g} is below omega {sector.omega:g}"
            )
        limit = sector.max_angle - margin
        moduli = np.logspace(
            math.log10(sector.omega), math.log10(max_modulus), moduli_count
        )
        angles = np.linspace(-limit, limit, angle_count) if angle_count > 1 else [0.0]
        return cls(sector, tuple(moduli), tuple(angles), margin)

    @classmethod
    def single(cls, sector: SectorSpec, lam: complex) -> "SectorSampleGrid":
        """Grid holding one fixed resolvent point"""
        lam = complex(lam)
        if not sector.contains(lam):
            raise InvalidParameterError(f"lambda={lam} lies outside the sector")
        angle = cmath.phase(lam)
        margin = min(DEFAULT_MARGIN, 0.5 * (sector.max_angle - abs(angle)))
        return cls(sector, (abs(lam),), (angle,), margin)

    @property
    def size(self) -> int:
        return len(self.moduli) * len(self.angles)

    @property
    def min_modulus(self) -> float:
        return min(self.moduli)

    def lambdas(self) -> List[complex]:
        """Sample points ordered by modulus, then angle"""
        return [cmath.rect(r, t) for r in self.moduli for t in self.angles]

    def params(self, alpha: float = 0.0, dim: int = 2) -> List[ResolventParams]:
        return [
            ResolventParams(lam=lam, alpha=alpha, dim=dim, sector=self.sector)
            for lam in self.lambdas()
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sector": self.sector.to_dict(),
            "moduli": list(self.moduli),
            "angles": list(self.angles),
            "margin": self.margin,
        }


def _log_axis(low: float, high: float, count: int, include_zero: bool) -> np.ndarray:
    values = np.logspace(math.log10(low), math.log10(high), count)
    if include_zero:
        values = np.concatenate([[0.0], values])
    return values


@dataclass(frozen=True)
class FrequencyWallGrid:
    """
    Tensor grid of radial frequencies s and wall distances y

    Both axes are log-spaced, optionally with 0 prepended. Refinement maps
    a count c to 2c - 1 so every coarse point stays on the refined grid.

    Attributes:
        s_min, s_max, s_count: Radial frequency axis
        y_min, y_max, y_count: Wall distance axis
        include_zero: Whether s = 0 and y = 0 are sampled
    """

    s_min: float = 1e-3
    s_max: float = 1e3
    s_count: int = 200
    y_min: float = 1e-3
    y_max: float = 1e2
    y_count: int = 200
    include_zero: bool = True
    _cache: Dict[str, np.ndarray] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        for name, low, high, count in (
            ("s", self.s_min, self.s_max, self.s_count),
            ("y", self.y_min, self.y_max, self.y_count),
        ):
            if not (0.0 < low < high and math.isfinite(high)):
                raise InvalidParameterError(
                    f"{name} axis needs 0 < {name}_min < {name}_max, got [{low}, {high}]"
                )
            if count < 2:
                raise InvalidParameterError(f"{name}_count must be >= 2, got {count}")

    @property
    def s_values(self) -> np.ndarray:
        if "s" not in self._cache:
            self._cache["s"] = _log_axis(
                self.s_min, self.s_max, self.s_count, self.include_zero
            )
        return self._cache["s"]

    @property
    def y_values(self) -> np.ndarray:
        if "y" not in self._cache:
            self._cache["y"] = _log_axis(
                self.y_min, self.y_max, self.y_count, self.include_zero
            )
        return self._cache["y"]

    @property
    def size(self) -> int:
        return self.s_values.size * self.y_values.size

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Broadcastable (s, y) arrays of shape (S, 1) and (1, Y)"""
        return self.s_values[:, None], self.y_values[None, :]

    def refined(self) -> "FrequencyWallGrid":
        return FrequencyWallGrid(
            self.s_min,
            self.s_max,
            2 * self.s_count - 1,
            self.y_min,
            self.y_max,
            2 * self.y_count - 1,
            self.include_zero,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s_min": self.s_min,
            "s_max": self.s_max,
            "s_count": self.s_count,
            "y_min": self.y_min,
            "y_max": self.y_max,
            "y_count": self.y_count,
            "include_zero": self.include_zero,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FrequencyWallGrid":
        return cls(**{key: data[key] for key in cls().to_dict() if key in data})


def fixed_lambda(sector: Optional[SectorSpec], lam: complex) -> SectorSampleGrid:
    """
    One-point grid for symbols certified at a fixed resolvent point

    Args:
        sector: Sector of the run (a sector through lam is used when omitted)
        lam: Resolvent point

    Returns:
        SectorSampleGrid with a single point
    """
    if sector is None:
        sector = SectorSpec(epsilon=max(1e-3, 0.5 * (math.pi - abs(cmath.phase(lam)))))
    return SectorSampleGrid.single(sector, lam)
