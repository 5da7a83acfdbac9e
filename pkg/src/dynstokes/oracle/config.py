"""
Configuration of the finite-difference mode oracle
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from ..models.errors import InvalidParameterError, OracleError
from ..models.params import ResolventParams

MIN_STEPS = 64
# e^{-DECAY_EXPONENT} = 1e-10
DECAY_EXPONENT = math.log(1e10)
# decay lengths per slowest rate used when picking Y automatically
TRUNCATION_FACTOR = 25.0


class DecayCondition(str, Enum):
    """Condition imposed at the truncation length Y"""

    DIRICHLET_PAIR = "dirichlet_pair"
    ASYMPTOTIC = "asymptotic"


def characteristic_roots(params: ResolventParams, s: float):
    """
    Decaying characteristic roots (s, sqrt(lambda + s^2)) of the mode equation

    Args:
        params: Resolvent parameters
        s: Radial frequency |xi|

    Returns:
        Tuple (s, q) with q on the principal branch
    """
    return float(s), complex(np.sqrt(params.lam + s * s + 0j))


@dataclass(frozen=True)
class OdeOracleConfig:
    """
    Truncated interval and discretization of one oracle solve

    Attributes:
        truncation_length: Interval length Y
        steps: Number of uniform FD intervals N (>= 64)
        decay_bc: Condition imposed at Y
    """

    truncation_length: float
    steps: int = 4096
    decay_bc: DecayCondition = DecayCondition.DIRICHLET_PAIR

    def __post_init__(self):
        object.__setattr__(self, "decay_bc", DecayCondition(self.decay_bc))
        if not (self.truncation_length > 0.0 and math.isfinite(self.truncation_length)):
            raise InvalidParameterError(
                f"truncation_length must be positive, got {self.truncation_length}"
            )
        if self.steps < MIN_STEPS:
            raise InvalidParameterError(
                f"oracle needs at least {MIN_STEPS} steps, got {self.steps}"
            )

    @property
    def step(self) -> float:
        return self.truncation_length / self.steps

    def grid(self) -> np.ndarray:
        """Uniform FD grid y_j = j Y / N"""
        return np.linspace(0.0, self.truncation_length, self.steps + 1)

    def adequate(self, params: ResolventParams, s: float) -> bool:
        """
        Check whether the truncation suits the decay condition

        Dirichlet conditions at Y need both exponentials below 1e-10 there;
        the asymptotic condition is exact for decaying solutions.

        Args:
            params: Resolvent parameters
            s: Radial frequency of the mode

        Returns:
            True if the configuration can be used for the mode
        """
        if self.decay_bc is DecayCondition.ASYMPTOTIC:
            return True
        slow, q = characteristic_roots(params, s)
        rate = min(slow, q.real)
        return rate * self.truncation_length >= DECAY_EXPONENT

    def require_adequate(self, params: ResolventParams, s: float) -> None:
        if not self.adequate(params, s):
            _, q = characteristic_roots(params, s)
            raise OracleError(
                f"insufficient truncation Y={self.truncation_length:g} for s={s:g}, "
                f"Re q={q.real:g}: exp(-min(s, Re q) Y) >= 1e-10; use a longer "
                f"interval or the asymptotic condition"
            )

    def refined(self) -> "OdeOracleConfig":
        """Same interval with twice the steps"""
        return OdeOracleConfig(self.truncation_length, 2 * self.steps, self.decay_bc)

    @classmethod
    def for_mode(
        cls,
        params: ResolventParams,
        s: float,
        steps: int = 4096,
        decay_bc: Optional[DecayCondition] = None,
    ) -> "OdeOracleConfig":
        """
        Pick an adequate truncation for one mode

        Y covers 25 decay lengths of the fast root; Dirichlet conditions are
        used when the slow root needs at most twice that, the asymptotic
        condition otherwise.

        Args:
            params: Resolvent parameters
            s: Radial frequency (> 0)
            steps: Number of FD intervals
            decay_bc: Force a decay condition (optional)

        Returns:
            OdeOracleConfig object
        """
        if not s > 0.0:
            raise OracleError("the xi = 0 mode is excluded from the oracle")
        slow, q = characteristic_roots(params, s)
        fast_length = TRUNCATION_FACTOR / q.real
        slow_length = TRUNCATION_FACTOR / slow
        if decay_bc is None:
            decay_bc = (
                DecayCondition.DIRICHLET_PAIR
                if slow_length <= 2.0 * fast_length
                else DecayCondition.ASYMPTOTIC
            )
        decay_bc = DecayCondition(decay_bc)
        if decay_bc is DecayCondition.DIRICHLET_PAIR:
            length = max(fast_length, slow_length)
        else:
            length = fast_length
        return cls(truncation_length=length, steps=steps, decay_bc=decay_bc)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "truncation_length": self.truncation_length,
            "steps": self.steps,
            "decay_bc": self.decay_bc.value,
        }
