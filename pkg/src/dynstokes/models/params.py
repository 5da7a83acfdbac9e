"""
Parameter models for dynstokes
"""

import cmath
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from .errors import InvalidParameterError

SUPPORTED_DIMENSIONS = (2, 3)


@dataclass(frozen=True)
class SectorSpec:
    """
    Sector of admissible resolvent points, |arg(lambda)| < pi - epsilon

    Attributes:
        epsilon: Opening defect of the sector, in (0, pi)
        omega: Lower bound for |lambda| used by uniform sweeps
    """

    epsilon: float
    omega: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.epsilon < math.pi):
            raise InvalidParameterError(
                f"sector.epsilon must lie in (0, pi), got {self.epsilon}"
            )
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise InvalidParameterError(
                f"sector.omega must be a positive finite number, got {self.omega}"
            )

    @property
    def max_angle(self) -> float:
        """Largest admissible |arg(lambda)| (exclusive)"""
        return math.pi - self.epsilon

    def contains(self, lam: complex) -> bool:
        """
        Check whether a point lies strictly inside the sector

        Args:
            lam: Complex resolvent point

        Returns:
            True if lam != 0 and |arg(lam)| < pi - epsilon
        """
        lam = complex(lam)
        if lam == 0 or not cmath.isfinite(lam):
            return False
        return abs(cmath.phase(lam)) < self.max_angle

    def to_dict(self) -> Dict[str, Any]:
        return {"epsilon": self.epsilon, "omega": self.omega}


@dataclass(frozen=True)
class ResolventParams:
    """
    Resolvent point, boundary coefficient and dimension of one problem

    Attributes:
        lam: Complex resolvent point lambda
        alpha: Nonnegative coefficient of the dynamic boundary condition
        dim: Space dimension d (2 or 3)
        sector: Sector the point is required to lie in (optional)
    """

    lam: complex
    alpha: float = 0.0
    dim: int = 2
    sector: Optional[SectorSpec] = None

    def __post_init__(self):
        lam = complex(self.lam)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha", float(self.alpha))

        if lam == 0 or not cmath.isfinite(lam):
            raise InvalidParameterError(f"lambda must be finite and nonzero, got {lam}")
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise InvalidParameterError(
                f"alpha must be a finite number >= 0, got {self.alpha}"
            )
        if self.dim not in SUPPORTED_DIMENSIONS:
            raise InvalidParameterError(f"dim must be 2 or 3, got {self.dim}")

        if self.sector is not None:
            if not self.sector.contains(lam):
                raise InvalidParameterError(
                    f"lambda={lam} violates |arg(lambda)| < pi - epsilon "
                    f"(|arg|={abs(cmath.phase(lam)):.6g}, "
                    f"pi - epsilon={self.sector.max_angle:.6g})"
                )
        elif lam.imag == 0.0 and lam.real < 0.0:
            raise InvalidParameterError(
                f"lambda={lam} lies on the negative real axis"
            )

    @classmethod
    def from_polar(
        cls,
        modulus: float,
        angle: float,
        alpha: float = 0.0,
        dim: int = 2,
        sector: Optional[SectorSpec] = None,
    ) -> "ResolventParams":
        """
        Create parameters from lambda given in polar form

        Args:
            modulus: |lambda| (> 0)
            angle: arg(lambda)
            alpha: Boundary coefficient
            dim: Space dimension
            sector: Sector the point is required to lie in (optional)

        Returns:
            ResolventParams object
        """
        if not (modulus > 0.0 and math.isfinite(modulus)):
            raise InvalidParameterError(
                f"lambda modulus must be a positive finite number, got {modulus}"
            )
        return cls(
            lam=cmath.rect(modulus, angle), alpha=alpha, dim=dim, sector=sector
        )

    @property
    def tdim(self) -> int:
        """Number of tangential directions, d - 1"""
        return self.dim - 1

    @property
    def modulus(self) -> float:
        return abs(self.lam)

    @property
    def angle(self) -> float:
        return cmath.phase(self.lam)

    def replace(self, **changes: Any) -> "ResolventParams":
        """
        Return a copy with some fields changed

        Args:
            **changes: Field values to override

        Returns:
            New ResolventParams object (validated again)
        """
        values = {
            "lam": self.lam,
            "alpha": self.alpha,
            "dim": self.dim,
            "sector": self.sector,
        }
        values.update(changes)
        return ResolventParams(**values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda": self.lam,
            "modulus": self.modulus,
            "angle": self.angle,
            "alpha": self.alpha,
            "dim": self.dim,
            "sector": self.sector.to_dict() if self.sector else None,
        }


class KernelPoint:
    """
    Radial frequency s = |xi| and wall distance y at which a kernel is evaluated

    Both coordinates may be numpy arrays; they are broadcast against each other.
    """

    __slots__ = ("s", "y")

    def __init__(self, s, y):
        s_arr = np.asarray(s, dtype=float)
        y_arr = np.asarray(y, dtype=float)
        if np.any(~(s_arr >= 0.0)) or np.any(~np.isfinite(s_arr)):
            raise InvalidParameterError("kernel point requires finite s >= 0")
        if np.any(~(y_arr >= 0.0)) or np.any(~np.isfinite(y_arr)):
            raise InvalidParameterError("kernel point requires finite y >= 0")
        self.s, self.y = np.broadcast_arrays(s_arr, y_arr)

    @property
    def shape(self):
        return self.s.shape

    def __repr__(self) -> str:
        if self.s.ndim == 0:
            return f"KernelPoint(s={float(self.s)!r}, y={float(self.y)!r})"
        return f"KernelPoint(shape={self.shape})"
