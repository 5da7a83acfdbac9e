"""
Numeric certification of multiplier conditions and kernel inequalities
"""

from .certificate import DRIFT_THRESHOLD, MultiplierCertificate
from .checker import (
    DEFAULT_DELTA,
    certify_m,
    certify_mstar,
    check_product_lemma,
    default_sector_grid,
    max_order,
)
from .derivatives import derivative_agreement, richardson_derivative
from .grids import FrequencyWallGrid, SectorSampleGrid, fixed_lambda
from .inequalities import (
    InequalityReport,
    check_e_bounds,
    check_m2_identity,
    check_real_part,
    check_se_bound,
    check_sqrt_lambda_bound,
    se_bound_constant,
)
from .symbols import (
    M_SYMBOLS,
    MSTAR_SYMBOLS,
    ProductSymbol,
    RadialSymbol,
    ReweightedSymbol,
    get_symbol,
)

__all__ = [
    "DEFAULT_DELTA",
    "DRIFT_THRESHOLD",
    "FrequencyWallGrid",
    "InequalityReport",
    "MSTAR_SYMBOLS",
    "M_SYMBOLS",
    "MultiplierCertificate",
    "ProductSymbol",
    "RadialSymbol",
    "ReweightedSymbol",
    "SectorSampleGrid",
    "certify_m",
    "certify_mstar",
    "check_e_bounds",
    "check_m2_identity",
    "check_product_lemma",
    "check_real_part",
    "check_se_bound",
    "check_sqrt_lambda_bound",
    "default_sector_grid",
    "derivative_agreement",
    "fixed_lambda",
    "get_symbol",
    "max_order",
    "richardson_derivative",
    "se_bound_constant",
]
