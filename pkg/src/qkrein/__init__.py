"""Quaternionic indefinite inner-product spaces, Krein spaces and the Stein scaffold."""

__version__ = "0.1.0"

from .errors import (
    ContractViolation,
    DivergenceError,
    NumericFailure,
    QKreinError,
    ScaffoldRefused,
    SingularMatrixError,
)
from .inner import (
    FundamentalDecomposition,
    InnerProductSpace,
    VectorClass,
    VectorTag,
    classify_vector,
    decomposition_from_bases,
    fundamental_decomposition,
    gram,
    inner,
    isotropic_part,
    j_inner,
    j_norm,
)
from .krein import (
    KreinReport,
    Scaffold,
    SofsofReport,
    SteinProblem,
    build_scaffold,
    hyperbolic_rotation,
    natural_norm_equivalence,
    spectral_radius,
    stein_solve_direct,
    stein_solve_series,
    verify_krein,
    verify_sofsof,
)
from .linalg import (
    HermEig,
    column_space,
    generalized_eigvals,
    hermitian_eig,
    inverse,
    jacobi_eigh,
    kernel,
    orthonormalize,
    rank,
    singular_values,
    solve,
    spectral_norm,
)
from .norms import (
    NormQ,
    SelfPolarResult,
    SemiNormFamily,
    gram_operator,
    mackey_seminorm,
    minkowski,
    minkowski_bisection,
    polar,
    self_polar,
    seminorm_eval,
    weak_seminorm,
)
from .qmatrix import QMatrix, complex_to_vector, embed, unembed, vector_to_complex
from .quaternion import Quaternion, complex_pair, conj, inv, mul
from .subspaces import (
    KansasResult,
    OrthoCertificate,
    Subspace,
    SubspaceReport,
    SubspaceTag,
    classify_subspace,
    is_ortho_complemented,
    isotropic_part_of,
    kansas_check,
    orthogonal_companion,
    project,
    quotient_space,
    restricted_gram,
)
