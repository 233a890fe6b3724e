"""Bicomplex numbers and the bicomplex Coulomb problem.

The package provides bicomplex and hyperbolic arithmetic, the bound-state
spectrum and eigenfunctions of the bicomplex hydrogen-like hamiltonian, a
quadrature-backed scalar product, and radial functions continued to the
hyperbolic plane.
"""

from .bicomplex import (
    E1,
    E2,
    I1,
    I2,
    J,
    NULL_CONE_TOL,
    ONE,
    ZERO,
    Bicomplex,
    Hyperbolic,
    dagger,
    inverse,
    is_null_cone,
    real_norm,
    sqrt_j,
)
from .errors import DomainError, GridError, NullConeError
from .hilbert import (
    BicomplexMatrix,
    QuadratureGrid,
    SampledKet,
    commutator_residual,
    commuting_block_check,
    expected_orthonormality,
    gaussian_ket,
    induced_norm,
    normalize,
    orthonormality_matrix,
    scalar_product,
)
from .params import ATOMIC_UNITS, PhysicalParams
from .special import assoc_legendre, laguerre, laguerre_coeffs, radial_u, spherical_harmonic
from .spectrum import (
    EigenfunctionSpec,
    QuantumNumbers,
    all_states,
    degeneracy,
    energy,
    energy_symmetry_check,
    enumerate_states,
    general_eigenfunction_eval,
    radial_ode_residual,
    wavefunction_eval,
)
from .surfaces import (
    build_ell_polynomial,
    export_surface,
    read_surface,
    surface_eval_idempotent,
    surface_eval_polynomial,
    surface_grid,
)

__version__ = "0.1.0"

__all__ = [
    "ATOMIC_UNITS",
    "Bicomplex",
    "BicomplexMatrix",
    "DomainError",
    "E1",
    "E2",
    "EigenfunctionSpec",
    "GridError",
    "Hyperbolic",
    "I1",
    "I2",
    "J",
    "NULL_CONE_TOL",
    "NullConeError",
    "ONE",
    "PhysicalParams",
    "QuadratureGrid",
    "QuantumNumbers",
    "SampledKet",
    "ZERO",
    "all_states",
    "assoc_legendre",
    "build_ell_polynomial",
    "commutator_residual",
    "commuting_block_check",
    "dagger",
    "degeneracy",
    "energy",
    "energy_symmetry_check",
    "enumerate_states",
    "expected_orthonormality",
    "export_surface",
    "gaussian_ket",
    "general_eigenfunction_eval",
    "induced_norm",
    "inverse",
    "is_null_cone",
    "laguerre",
    "laguerre_coeffs",
    "normalize",
    "orthonormality_matrix",
    "radial_ode_residual",
    "radial_u",
    "read_surface",
    "real_norm",
    "scalar_product",
    "spherical_harmonic",
    "sqrt_j",
    "surface_eval_idempotent",
    "surface_eval_polynomial",
    "surface_grid",
    "wavefunction_eval",
]
