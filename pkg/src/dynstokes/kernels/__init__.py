"""
Closed-form Fourier symbols for dynstokes
"""

from .scalar import (
    big_e,
    denominator,
    ds_m1,
    ds_m3,
    ds_p,
    ds_sE,
    dy_m0,
    expm1_c,
    m0,
    m0_quotient_form,
    m1,
    m2,
    m3,
    m4,
    p_factor,
    sqrt_shifted,
)
from .symbols import pressure_symbol, u_d_symbol, u_prime_symbol

__all__ = [
    "big_e",
    "denominator",
    "ds_m1",
    "ds_m3",
    "ds_p",
    "ds_sE",
    "dy_m0",
    "expm1_c",
    "m0",
    "m0_quotient_form",
    "m1",
    "m2",
    "m3",
    "m4",
    "p_factor",
    "pressure_symbol",
    "sqrt_shifted",
    "u_d_symbol",
    "u_prime_symbol",
]
