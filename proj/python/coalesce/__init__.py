"""Interface dynamics of viscous shock and anti-shock waves."""

from ._core import (
    BlowUpError,
    ConfigError,
    DomainError,
    InsufficientDataError,
    SpatialGrid,
    cole_hopf_t0,
    cole_hopf_u,
    erf,
    erfc,
    erfcx,
    extinction_bound,
    extract_zeros,
    fit_scaling_law,
    green_reference_u,
    preset_names,
    simulate,
    verify,
)

__all__ = [
    "BlowUpError",
    "ConfigError",
    "DomainError",
    "InsufficientDataError",
    "SpatialGrid",
    "cole_hopf_t0",
    "cole_hopf_u",
    "erf",
    "erfc",
    "erfcx",
    "extinction_bound",
    "extract_zeros",
    "fit_scaling_law",
    "green_reference_u",
    "preset_names",
    "simulate",
    "verify",
]
