"""Uncertainty products, classical densities and dimensional analysis."""

from ._core import (
    DomainError,
    InputError,
    ScalingError,
    UnsupportedError,
    box_classical_product,
    box_quantum_product,
    converge,
    density_1d,
    dimension_rank,
    equal_mass_product,
    equal_mass_quantum_product,
    harmonic_moments,
    ho_moments,
    ho_moments_quadrature,
    pi_groups,
    reference_products,
    run_cli,
    solve_wavenumbers,
    unequal_mass_product,
    unequal_mass_quantum_product,
    xr2_expectation,
)

__all__ = [
    "DomainError",
    "InputError",
    "ScalingError",
    "UnsupportedError",
    "box_classical_product",
    "box_quantum_product",
    "converge",
    "density_1d",
    "dimension_rank",
    "equal_mass_product",
    "equal_mass_quantum_product",
    "harmonic_moments",
    "ho_moments",
    "ho_moments_quadrature",
    "pi_groups",
    "reference_products",
    "run_cli",
    "solve_wavenumbers",
    "unequal_mass_product",
    "unequal_mass_quantum_product",
    "xr2_expectation",
]
