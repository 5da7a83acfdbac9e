"""
Validated run configuration for dynstokes
"""

import math
import os
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .params import ResolventParams, SectorSpec

COMMANDS = ("solve", "verify", "oracle", "certify", "sweep")
CHECKS = (
    "all",
    "real-part",
    "sqrt-lambda",
    "e-bounds",
    "se-bound",
    "m2-identity",
    "multipliers",
)
EXPERIMENTS = ("all", "decay", "alpha", "gradient", "proxy")


class _Section(BaseModel):
    """Base of all configuration sections: unknown keys are rejected"""

    model_config = ConfigDict(extra="forbid")


class ProblemConfig(_Section):
    """Resolvent point (polar form), boundary coefficient, dimension and sector"""

    lambda_modulus: float = Field(100.0, gt=0.0)
    lambda_angle: float = 0.0
    alpha: float = Field(0.0, ge=0.0)
    dim: Literal[2, 3] = 2
    epsilon: float = Field(math.pi / 6, gt=0.0, lt=math.pi)
    omega: float = Field(1.0, gt=0.0)

    @model_validator(mode="after")
    def _inside_sector(self) -> "ProblemConfig":
        if not abs(self.lambda_angle) < math.pi - self.epsilon:
            raise ValueError(
                f"problem.lambda_angle={self.lambda_angle:.6g} violates "
                f"|arg(lambda)| < pi - epsilon = {math.pi - self.epsilon:.6g}"
            )
        return self

    def sector(self) -> SectorSpec:
        return SectorSpec(epsilon=self.epsilon, omega=self.omega)

    def params(self) -> ResolventParams:
        return ResolventParams.from_polar(
            self.lambda_modulus,
            self.lambda_angle,
            alpha=self.alpha,
            dim=self.dim,
            sector=self.sector(),
        )


class GridConfig(_Section):
    """
    Tangential and wall-normal discretization

    A missing truncation_length selects the adaptive Y = 10 / min(Re sqrt(lambda), 1).
    """

    n: int = 64
    box_length: float = Field(2.0 * math.pi, gt=0.0)
    wall_intervals: int = Field(192, ge=1)
    truncation_length: Optional[float] = Field(None, gt=0.0)
    first_fraction: Optional[float] = Field(None, gt=0.0, lt=1.0)
    normal_orders: int = Field(2, ge=1)

    @field_validator("n")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value < 8 or value & (value - 1):
            raise ValueError(f"grid.n must be a power of two >= 8, got {value}")
        return value


class OracleSection(_Section):
    """Mode list and discretization of the ODE oracle"""

    steps: int = Field(4096, ge=64)
    truncation_length: Optional[float] = Field(None, gt=0.0)
    decay_bc: Optional[Literal["dirichlet_pair", "asymptotic"]] = None
    target: Literal["u_d", "v_prime"] = "u_d"
    modes: List[List[float]] = Field(
        default_factory=lambda: [[0.25], [1.0], [4.0]],
        description="Wave vectors xi, one entry per tangential direction",
    )
    convergence: bool = True

    @field_validator("modes")
    @classmethod
    def _nonzero_modes(cls, modes: List[List[float]]) -> List[List[float]]:
        if not modes:
            raise ValueError("oracle.modes must list at least one wave vector")
        for xi in modes:
            if not xi or all(component == 0.0 for component in xi):
                raise ValueError("oracle.modes excludes the xi = 0 mode")
        return modes


class CertifySection(_Section):
    """Certification grids, symbols and rates"""

    check: str = "all"
    mstar_symbols: List[str] = Field(default_factory=lambda: ["m1", "m2", "m3"])
    fixed_symbols: List[str] = Field(default_factory=lambda: ["s_m4", "s2_m0"])
    m_symbols: List[str] = Field(default_factory=list)
    products: List[List[str]] = Field(default_factory=list)
    orders: Optional[List[int]] = None
    delta: float = Field(0.05, gt=0.0, lt=1.0)
    delta_tilde: float = Field(0.025, ge=0.0)
    se_orders: List[int] = Field(default_factory=lambda: [0, 1])
    moduli_count: int = Field(25, ge=1)
    angle_count: int = Field(5, ge=1)
    max_modulus: float = Field(1e4, gt=0.0)
    margin: float = Field(math.pi / 90, gt=0.0)
    s_min: float = Field(1e-3, gt=0.0)
    s_max: float = Field(1e3, gt=0.0)
    s_count: int = Field(200, ge=2)
    y_min: float = Field(1e-3, gt=0.0)
    y_max: float = Field(1e2, gt=0.0)
    y_count: int = Field(200, ge=2)
    refine: bool = True
    step_factor: float = Field(1e-4, gt=0.0, lt=1.0)

    @field_validator("check")
    @classmethod
    def _known_check(cls, value: str) -> str:
        if value not in CHECKS:
            raise ValueError(
                f"certify.check must be one of {', '.join(CHECKS)}, got {value!r}"
            )
        return value

    @field_validator("products")
    @classmethod
    def _pairs(cls, value: List[List[str]]) -> List[List[str]]:
        for pair in value:
            if len(pair) != 2:
                raise ValueError(
                    f"certify.products entries are [m_symbol, mstar_symbol] pairs, got {pair}"
                )
        return value

    @model_validator(mode="after")
    def _rates(self) -> "CertifySection":
        if self.delta_tilde > self.delta:
            raise ValueError(
                f"certify.delta_tilde={self.delta_tilde:g} must not exceed "
                f"certify.delta={self.delta:g}"
            )
        if self.s_min >= self.s_max or self.y_min >= self.y_max:
            raise ValueError("certify frequency axes need min < max")
        return self


class SweepSection(_Section):
    """Scaling experiment selection and sampling"""

    experiment: str = "decay"
    p: float = Field(2.0, gt=1.0)
    modulus_min: float = Field(1e2, gt=0.0)
    modulus_max: float = Field(1e6, gt=0.0)
    modulus_count: int = Field(13, ge=1)
    angles: Optional[List[float]] = None
    alphas: List[float] = Field(default_factory=lambda: [0.0, 1.0, 10.0, 100.0])
    phi_count: int = Field(8, ge=1)
    band: Optional[float] = Field(None, ge=0.0)
    refine: bool = True

    @field_validator("experiment")
    @classmethod
    def _known_experiment(cls, value: str) -> str:
        if value not in EXPERIMENTS:
            raise ValueError(
                f"sweep.experiment must be one of {', '.join(EXPERIMENTS)}, got {value!r}"
            )
        return value

    @field_validator("alphas")
    @classmethod
    def _nonnegative_alphas(cls, value: List[float]) -> List[float]:
        if not value or any(not (alpha >= 0.0 and math.isfinite(alpha)) for alpha in value):
            raise ValueError("sweep.alphas must be a non-empty list of finite numbers >= 0")
        return value

    @field_validator("p")
    @classmethod
    def _finite_p(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("sweep.p must lie in (1, inf)")
        return value


class TolerancesSection(_Section):
    """Bounds the verifiers and reports are tested against"""

    interior: float = Field(1e-10, gt=0.0)
    divergence: float = Field(1e-10, gt=0.0)
    fd_agreement: float = Field(1e-6, gt=0.0)
    boundary: float = Field(1e-10, gt=0.0)
    biharmonic: float = Field(1e-9, gt=0.0)
    biharmonic_boundary: float = Field(1e-8, gt=0.0)
    weak_form: float = Field(1e-4, gt=0.0)
    oracle: float = Field(1e-4, gt=0.0)
    convergence_band: float = Field(0.3, gt=0.0, lt=1.0)
    drift: float = Field(0.05, gt=0.0)
    alpha_spread: float = Field(2.0, ge=1.0)


class RunSection(_Section):
    """Output location, seed and parallelism"""

    out_dir: str = "out"
    seed: int = Field(0, ge=0)
    workers: Optional[int] = Field(None, ge=1)

    def worker_count(self) -> int:
        return self.workers or os.cpu_count() or 1


class RunConfig(_Section):
    """
    Fully resolved configuration of one run

    Attributes:
        command: Subcommand the configuration is run with
        problem: Resolvent point and problem parameters
        grid: Solver grids
        oracle: ODE oracle settings
        certify: Certification settings
        sweep: Scaling experiment settings
        tolerances: Verification tolerances
        run: Output, seed and workers
    """

    command: Optional[Literal["solve", "verify", "oracle", "certify", "sweep"]] = None
    problem: ProblemConfig = Field(default_factory=ProblemConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    oracle: OracleSection = Field(default_factory=OracleSection)
    certify: CertifySection = Field(default_factory=CertifySection)
    sweep: SweepSection = Field(default_factory=SweepSection)
    tolerances: TolerancesSection = Field(default_factory=TolerancesSection)
    run: RunSection = Field(default_factory=RunSection)

    @model_validator(mode="after")
    def _consistent(self) -> "RunConfig":
        for xi in self.oracle.modes:
            if len(xi) != self.problem.dim - 1:
                raise ValueError(
                    f"oracle.modes entries need {self.problem.dim - 1} components "
                    f"for dim={self.problem.dim}, got {xi}"
                )
        if self.sweep.modulus_min < self.problem.omega:
            raise ValueError(
                f"sweep.modulus_min={self.sweep.modulus_min:g} lies below "
                f"problem.omega={self.problem.omega:g}"
            )
        if self.sweep.modulus_max < self.sweep.modulus_min:
            raise ValueError("sweep.modulus_max must not lie below sweep.modulus_min")
        if self.certify.max_modulus < self.problem.omega:
            raise ValueError("certify.max_modulus must not lie below problem.omega")
        limit = math.pi - self.problem.epsilon
        if self.sweep.angles is not None:
            for angle in self.sweep.angles:
                if not abs(angle) < limit:
                    raise ValueError(
                        f"sweep.angles entry {angle:.6g} violates "
                        f"|arg(lambda)| < pi - epsilon = {limit:.6g}"
                    )
        return self
