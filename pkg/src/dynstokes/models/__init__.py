"""
Models for dynstokes
"""

from .errors import (
    DerivativeBreakdownError,
    InvalidParameterError,
    OracleError,
    ShapeMismatchError,
)
from .params import KernelPoint, ResolventParams, SectorSpec
from .result import Result
from .run_config import RunConfig

__all__ = [
    "DerivativeBreakdownError",
    "InvalidParameterError",
    "KernelPoint",
    "OracleError",
    "ResolventParams",
    "Result",
    "RunConfig",
    "SectorSpec",
    "ShapeMismatchError",
]
