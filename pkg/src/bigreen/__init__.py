"""Verification-grade elastostatic fundamental solutions with piecewise-constant
isotropic Lame coefficients: Kelvin and bonded-half-space (bimaterial) Green
functions, the gap-matrix degeneracy algebra, quadrature identity checks, a
desk-scale finite-difference transmission oracle, and inclusion metrics."""

from .materials import (
    AprioriData,
    DEFAULT_APRIORI,
    LameMaterial,
    MaterialPair,
    apply_isotropic_tensor,
    make_material,
    material_from_poisson,
    poisson_ratio,
    validate_pair,
)
from .kelvin import kelvin_gradient, kelvin_matrix, kelvin_traction
from .bimaterial import (
    gamma_plus,
    gamma_plus_gradient,
    gamma_plus_rongved,
    gap_gradient,
    gap_matrix,
)

__all__ = [
    "AprioriData",
    "DEFAULT_APRIORI",
    "LameMaterial",
    "MaterialPair",
    "apply_isotropic_tensor",
    "make_material",
    "material_from_poisson",
    "poisson_ratio",
    "validate_pair",
    "kelvin_matrix",
    "kelvin_gradient",
    "kelvin_traction",
    "gamma_plus",
    "gamma_plus_gradient",
    "gamma_plus_rongved",
    "gap_matrix",
    "gap_gradient",
]

__version__ = "0.1.0"
