"""Dominance-based H-matrix analysis with verifiable certificates.

Decides whether a diagonally dominant matrix is an H-matrix by a
recursive restriction to its non-strict rows, and backs every verdict
with an independently checkable artifact: reachability chains,
interwoven index sequences, a non-dominant witness block, or a positive
diagonal scaling with a strict dominance margin.
"""

__version__ = "0.1.0"

from .core import (
    DominanceClass,
    InconsistencyError,
    IndexSet,
    Matrix,
    classify_dominance,
    comparison_matrix,
    deleted_row_sum,
    is_sdd_by_columns,
    non_sdd_rows,
    partial_row_sum,
    principal_submatrix,
)
from .graph import (
    ChainReport,
    DirectedGraph,
    FrobeniusForm,
    build_graph,
    chain_condition,
    frobenius_normal_form,
    is_irreducible,
    reaches_target_set,
    taussky_test,
)
from .hmatrix import (
    HVerdict,
    PeelReason,
    ScalingCertificate,
    SHReport,
    find_ssdd_set_dd,
    is_h_dd,
    non_h_witness,
    s_h_check,
    s_sdd_check,
    scaling_certificate,
    scaling_margin,
)
from .interwoven import (
    InterwovenCertificate,
    interwoven_from_chains,
    interwoven_from_peeling,
    is_interwoven,
    verify_certificate,
)
from .mmio import ParseError, parse_matrix_market, read_matrix_file, write_matrix_market
from .oracle import (
    EnsembleSpec,
    LuFactorization,
    RandomStream,
    derive_seed,
    inverse_nonneg_oracle,
    jacobi_oracle,
    jacobi_spectral_radius,
    lu_factor,
    lu_solve,
    random_dd_matrix,
    spectral_radius,
)

__all__ = [
    "__version__",
    "ChainReport",
    "DirectedGraph",
    "DominanceClass",
    "EnsembleSpec",
    "FrobeniusForm",
    "HVerdict",
    "InconsistencyError",
    "IndexSet",
    "InterwovenCertificate",
    "LuFactorization",
    "Matrix",
    "ParseError",
    "PeelReason",
    "RandomStream",
    "SHReport",
    "ScalingCertificate",
    "build_graph",
    "chain_condition",
    "classify_dominance",
    "comparison_matrix",
    "deleted_row_sum",
    "derive_seed",
    "find_ssdd_set_dd",
    "frobenius_normal_form",
    "interwoven_from_chains",
    "interwoven_from_peeling",
    "inverse_nonneg_oracle",
    "is_h_dd",
    "is_interwoven",
    "is_irreducible",
    "is_sdd_by_columns",
    "jacobi_oracle",
    "jacobi_spectral_radius",
    "lu_factor",
    "lu_solve",
    "non_h_witness",
    "non_sdd_rows",
    "parse_matrix_market",
    "partial_row_sum",
    "principal_submatrix",
    "random_dd_matrix",
    "read_matrix_file",
    "reaches_target_set",
    "s_h_check",
    "s_sdd_check",
    "scaling_certificate",
    "scaling_margin",
    "spectral_radius",
    "taussky_test",
    "verify_certificate",
    "write_matrix_market",
]
