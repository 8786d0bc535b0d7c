"""Exact-arithmetic engine for the symmetry algebra of the deformed
Laplacian attached to the hyperplane-reflection group on n coordinates.

Everything computes over exact rationals: sparse polynomials, lazy linear
operators with commutator algebra, harmonic bases built by one-variable
extensions, connection matrices between the joint eigenbases of maximal
commuting chains, the discrete three-term recurrence governing them, and
the recoupling graph that factors any basis change into single-generator
steps.  Verification sweeps return machine-checkable reports with
polynomial witnesses for any failure.
"""

from .connection import (
    ConnectionMatrix,
    PairingMatrix,
    RankOneOverlap,
    SpanMismatch,
    TridiagonalData,
    connection_matrix,
    fischer_pairing,
    gram_matrix,
    module_basis,
    rank_one_overlap,
    tridiagonal_check,
)
from .graph import (
    Chain,
    RecouplingGraph,
    build_graph,
    connection_pipeline,
    enumerate_chains,
    neighbors,
    path,
)
from .harmonics import (
    HarmonicBasisElement,
    HarmonicLabel,
    basis_to_json_obj,
    build_basis_tower,
    casimir_eigenvalue,
    ck_extend,
    dimension_table,
    enumerate_labels,
    fischer_decompose,
    harmonic_space_dim,
    jacobi_closed_form,
    parity_project,
    poly_space_dim,
    realize_label,
    verify_closed_form,
    verify_extension_restrictions,
    verify_power_action,
    verify_power_action_sweep,
    verify_spectral_action,
    verify_tower,
)
from .linalg import InconsistentSystem, RationalMatrix, matrix_rank, solve_in_span
from .operators import (
    ImageEscapesSpan,
    LinearOperator,
    OperatorMatrix,
    angular,
    casimir,
    coordinate,
    derivative,
    dunkl,
    euler,
    gamma,
    identity_op,
    laplace,
    materialize,
    materialize_on_monomials,
    norm_square_mul,
    norm_square_poly,
    normalize_subset,
    racah_f,
    racah_f_from_angular,
    racah_p,
    reflection,
    su11_triple,
    zero_op,
)
from .poly import Monomial, NotDivisible, ParameterSet, Polynomial, monomial_basis, poly_to_vector
from .racah import (
    OmegaZero,
    RacahParameters,
    SpectralData,
    module_dimension,
    module_tridiagonal_data,
    racah_parameters,
    racah_recurrence_polys,
    recurrence_coefficients,
    recurrence_table_json,
    spectral_data,
)
from .relations import (
    default_degree_bound,
    verify_casimir_laplacian_commute,
    verify_drinfeld_kohno,
    verify_embedding,
    verify_nested_disjoint_commute,
    verify_racah_relations,
    verify_su11,
)
from .report import CheckResult, Report

__version__ = "0.1.0"
