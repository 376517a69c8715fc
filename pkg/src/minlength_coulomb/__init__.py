"""Exact and semiclassical bound states of -alpha/X under [X, P] = i(1 + beta P^2)."""

from .model import (
    BoundState,
    DomainError,
    ModelParams,
    NoFiniteSolutionError,
    SpectralFamily,
    energy_closed_form,
    energy_root_find,
    energy_series,
    family_from_reference,
    quantization_value,
    validate_regime,
)
from .quadrature import IntegralResult, QuadratureSpec, inner_product
from .wavefunction import Wavefunction

__all__ = [
    "BoundState",
    "DomainError",
    "IntegralResult",
    "ModelParams",
    "NoFiniteSolutionError",
    "QuadratureSpec",
    "SpectralFamily",
    "Wavefunction",
    "energy_closed_form",
    "energy_root_find",
    "energy_series",
    "family_from_reference",
    "inner_product",
    "quantization_value",
    "validate_regime",
]
