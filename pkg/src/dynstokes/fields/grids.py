"""
Tangential and wall-normal grids for dynstokes
"""

import itertools
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..models.errors import InvalidParameterError

DEFAULT_FIRST_FRACTION = 0.01


@dataclass(frozen=True)
class TangentialGrid:
    """
    Uniform periodic grid on the torus [0, L)^tdim standing in for the boundary

    Attributes:
        tdim: Number of tangential directions (d - 1)
        n: Points per axis, a power of two >= 8
        box_length: Period L
    """

    tdim: int
    n: int
    box_length: float = 2.0 * math.pi

    def __post_init__(self):
        if self.tdim not in (1, 2):
            raise InvalidParameterError(f"tdim must be 1 or 2, got {self.tdim}")
        if self.n < 8 or self.n & (self.n - 1):
            raise InvalidParameterError(
                f"n must be a power of two >= 8, got {self.n}"
            )
        if not (self.box_length > 0.0 and math.isfinite(self.box_length)):
            raise InvalidParameterError(
                f"box_length must be positive, got {self.box_length}"
            )

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.n,) * self.tdim

    @property
    def size(self) -> int:
        return self.n**self.tdim

    @property
    def spacing(self) -> float:
        return self.box_length / self.n

    @property
    def cell_volume(self) -> float:
        """Quadrature weight of one tangential point, (L/n)^tdim"""
        return self.spacing**self.tdim

    def wavenumbers(self) -> np.ndarray:
        """
        Integer mode numbers k in FFT order, covering [-n/2, n/2)

        Returns:
            Integer array of length n
        """
        return np.fft.fftfreq(self.n, d=1.0 / self.n).astype(int)

    def frequencies(self) -> np.ndarray:
        """
        Angular frequencies 2 pi k / L per axis, in FFT order

        Returns:
            Float array of length n
        """
        return 2.0 * math.pi * self.wavenumbers() / self.box_length

    def xi(self) -> np.ndarray:
        """
        Frequency vector of every tangential mode

        Returns:
            Array of shape (n,)*tdim + (tdim,)
        """
        axes = np.meshgrid(*([self.frequencies()] * self.tdim), indexing="ij")
        return np.stack(axes, axis=-1)

    def derivative_xi(self) -> np.ndarray:
        """
        Frequency vectors for spectral differentiation

        The Nyquist mode k = -n/2 has no conjugate partner, so its component
        is set to zero for odd derivatives.

        Returns:
            Array of shape (n,)*tdim + (tdim,)
        """
        freqs = self.frequencies().copy()
        freqs[self.n // 2] = 0.0
        axes = np.meshgrid(*([freqs] * self.tdim), indexing="ij")
        return np.stack(axes, axis=-1)

    def points(self) -> np.ndarray:
        """
        Physical coordinates x_j = j L / n of every tangential point

        Returns:
            Array of shape (n,)*tdim + (tdim,)
        """
        coords = np.arange(self.n) * self.spacing
        axes = np.meshgrid(*([coords] * self.tdim), indexing="ij")
        return np.stack(axes, axis=-1)

    def nyquist_mask(self) -> np.ndarray:
        """
        Boolean mask of modes with some |k| = n/2

        Returns:
            Boolean array of shape (n,)*tdim
        """
        on_axis = self.wavenumbers() == -(self.n // 2)
        axes = np.meshgrid(*([on_axis] * self.tdim), indexing="ij")
        return np.logical_or.reduce(axes)

    def nyquist_images(self) -> List[np.ndarray]:
        """
        Frequency vectors with the Nyquist components sign-flipped

        One array per subset of axes; in each, the components with
        k = -n/2 on the flipped axes change sign. A k = -n/2 sample cannot
        tell +n/2 from -n/2, so averaging a symbol over these images gives
        the response seen on the grid. The first image is xi() itself.

        Returns:
            List of 2**tdim arrays of shape (n,)*tdim + (tdim,)
        """
        xi = self.xi()
        on_axis = self.wavenumbers() == -(self.n // 2)
        nyquist = np.stack(
            np.meshgrid(*([on_axis] * self.tdim), indexing="ij"), axis=-1
        )
        images = []
        for flips in itertools.product((False, True), repeat=self.tdim):
            flip = nyquist & np.asarray(flips)
            images.append(np.where(flip, -xi, xi))
        return images

    def refined(self) -> "TangentialGrid":
        """Grid with twice the points per axis on the same period"""
        return TangentialGrid(self.tdim, 2 * self.n, self.box_length)

    def to_dict(self) -> Dict[str, Any]:
        return {"tdim": self.tdim, "n": self.n, "box_length": self.box_length}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TangentialGrid":
        return cls(
            tdim=int(data["tdim"]),
            n=int(data["n"]),
            box_length=float(data.get("box_length", 2.0 * math.pi)),
        )


class WallGrid:
    """
    Wall-normal levels 0 = y_0 < y_1 < ... < y_M

    Attributes:
        levels: Read-only float array of the levels
    """

    def __init__(self, levels):
        levels = np.array(levels, dtype=float)
        if levels.ndim != 1 or levels.size < 2:
            raise InvalidParameterError("a wall grid needs at least two levels")
        if levels[0] != 0.0:
            raise InvalidParameterError(
                f"the first wall level must be 0 (trace level), got {levels[0]}"
            )
        if not np.all(np.isfinite(levels)):
            raise InvalidParameterError("wall levels must be finite")
        if np.any(np.diff(levels) <= 0.0):
            raise InvalidParameterError("wall levels must be strictly increasing")
        levels.setflags(write=False)
        self.levels = levels

    @classmethod
    def uniform(cls, truncation: float, intervals: int) -> "WallGrid":
        """
        Equally spaced levels on [0, Y]

        Args:
            truncation: Truncation length Y
            intervals: Number of intervals M

        Returns:
            WallGrid object
        """
        if intervals < 1 or not truncation > 0.0:
            raise InvalidParameterError("uniform wall grid needs M >= 1 and Y > 0")
        return cls(np.linspace(0.0, truncation, intervals + 1))

    @classmethod
    def graded(
        cls,
        truncation: float,
        intervals: int,
        first_fraction: Optional[float] = None,
    ) -> "WallGrid":
        """
        Geometrically graded levels y_j = Y (r^j - 1) / (r^M - 1)

        The ratio r is chosen so that y_1 = first_fraction * Y. The default
        fraction is min(0.01, 0.25 / M); a fraction >= 1/M gives the uniform grid.

        Args:
            truncation: Truncation length Y
            intervals: Number of intervals M
            first_fraction: Target y_1 / Y (optional)

        Returns:
            WallGrid object
        """
        if intervals < 1 or not truncation > 0.0:
            raise InvalidParameterError("graded wall grid needs M >= 1 and Y > 0")
        if first_fraction is None:
            first_fraction = min(DEFAULT_FIRST_FRACTION, 0.25 / intervals)
        if not (0.0 < first_fraction < 1.0):
            raise InvalidParameterError(
                f"first_fraction must lie in (0, 1), got {first_fraction}"
            )
        if first_fraction * intervals >= 1.0:
            return cls.uniform(truncation, intervals)

        log_ratio = grading_log_ratio(intervals, first_fraction)
        j = np.arange(intervals + 1)
        levels = truncation * np.expm1(j * log_ratio) / np.expm1(intervals * log_ratio)
        levels[-1] = truncation
        return cls(levels)

    @property
    def intervals(self) -> int:
        return self.levels.size - 1

    @property
    def truncation(self) -> float:
        return float(self.levels[-1])

    @property
    def first_step(self) -> float:
        return float(self.levels[1])

    def trapezoid_weights(self) -> np.ndarray:
        """
        Composite trapezoid weights over the levels

        Returns:
            Float array of length M + 1
        """
        steps = np.diff(self.levels)
        weights = np.zeros_like(self.levels)
        weights[:-1] += 0.5 * steps
        weights[1:] += 0.5 * steps
        return weights

    def refined(self) -> "WallGrid":
        """Grid with the midpoint of every interval inserted (2M intervals)"""
        mids = 0.5 * (self.levels[:-1] + self.levels[1:])
        merged = np.empty(2 * self.intervals + 1)
        merged[0::2] = self.levels
        merged[1::2] = mids
        return WallGrid(merged)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "intervals": self.intervals,
            "truncation": self.truncation,
            "first_step": self.first_step,
            "levels": self.levels.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WallGrid":
        return cls(data["levels"])

    def __eq__(self, other) -> bool:
        return isinstance(other, WallGrid) and np.array_equal(
            self.levels, other.levels
        )

    def __hash__(self) -> int:
        return hash(self.levels.tobytes())

    def __repr__(self) -> str:
        return (
            f"WallGrid(M={self.intervals}, Y={self.truncation:.6g}, "
            f"y1={self.first_step:.3g})"
        )


def grading_log_ratio(intervals: int, first_fraction: float) -> float:
    """
    Solve (r - 1) / (r^M - 1) = first_fraction for log r

    Args:
        intervals: Number of intervals M
        first_fraction: Target y_1 / Y, below 1/M

    Returns:
        log r > 0
    """

    def excess(log_ratio: float) -> float:
        return math.expm1(log_ratio) / math.expm1(intervals * log_ratio) - first_fraction

    upper = math.log1p(50.0 / intervals)
    while excess(upper) > 0.0:
        upper *= 2.0
    return brentq(excess, 1e-12, upper, xtol=1e-15, rtol=1e-14)
