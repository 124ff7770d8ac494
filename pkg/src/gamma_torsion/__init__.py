"""Exact homological computations over integral group rings of finite groups.

The package computes coinvariants, fixed points and the degree-zero Tate
homology of lattice modules, in particular of symmetric-square modules
attached to group presentations, with two independently implemented
torsion oracles cross-checking every result.
"""

from .errors import (
    CatalogMissError,
    GammaTorsionError,
    GroupSpecError,
    GroupValidationError,
    InternalConsistencyError,
    InvalidInvariantError,
    NotALatticeError,
    OrderBoundExceededError,
    PresentationDeficiencyError,
    UnknownSuiteError,
)
from .groups import FiniteGroup, catalog, catalog_names, direct_product, make_abelian, parse_group_spec
from .intlinalg import AbelianInvariants, SmithDecomposition, cokernel_invariants, kernel_basis, smith_normal_form, solve_in_lattice

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "CatalogMissError",
    "FiniteGroup",
    "GammaTorsionError",
    "GroupSpecError",
    "GroupValidationError",
    "InternalConsistencyError",
    "InvalidInvariantError",
    "NotALatticeError",
    "OrderBoundExceededError",
    "PresentationDeficiencyError",
    "SmithDecomposition",
    "UnknownSuiteError",
    "catalog",
    "catalog_names",
    "cokernel_invariants",
    "direct_product",
    "kernel_basis",
    "make_abelian",
    "parse_group_spec",
    "smith_normal_form",
    "solve_in_lattice",
    "__version__",
]
