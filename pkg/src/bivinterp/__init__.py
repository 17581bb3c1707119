"""Exact bivariate polynomial interpolation: Berzolari-Radon sets, H-bases of
vanishing ideals, their linear syzygies, and maximal lines of GC sets."""

from .arith import LinearForm, Poly, X1, X2, evaluate, linear_factors
from .berzolari_radon import BRStep, br_chain, br_extend, br_restrict
from .errors import ConfigurationError, DomainError, InternalCheckError, NotEquivalentError, NotPoisedError
from .hbasis import (
    HBasis,
    check_rk_independence,
    hbasis_error_monomials,
    hbasis_from_br,
    hbasis_from_extension,
    ideal_membership,
    is_hbasis,
    reduce,
)
from .lattices import (
    GPLSpec,
    NaturalLatticeSpec,
    factorizable_hbasis,
    generalized_principal_lattice,
    gpl_hbasis,
    natural_lattice,
    natural_lattice_hbasis,
)
from .maximal_line import column_line_detect, geometric_maximal_lines, is_gc_set, transform_search, witness_matrix
from .nodes import NodeSet, interpolate, is_independent, is_poised, lagrange_basis
from .syzygy import (
    SyzygyMatrix,
    equivalence_transform,
    explicit_br_syzygy,
    linear_syzygies,
    minor,
    reconstruct_hbasis,
    signed_minors,
    syzygy_matrix,
)

__version__ = "0.1.0"
