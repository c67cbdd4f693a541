"""Exact-arithmetic tests of standard polynomial identities on subalgebras
of n x n matrices.

The headline computation: a unital subalgebra presented with a block upper
triangular shape satisfies the standard identity of degree 2n-2 unless it is
the full block upper triangular algebra of some shape, and in that case a
staircase tuple of matrix units witnesses non-vanishing.  `classify` renders
that verdict structurally; `is_standard_identity` confirms it by sweeping
basis tuples with exact arithmetic over Q, GF(p), or Z/m.
"""

__version__ = "0.1.0"

from .blocks import (
    BlockShape,
    ClassificationVerdict,
    FullBlockTriangular,
    NonvanishingWitness,
    NotCanonical,
    NotUniserial,
    ProperSimpleBlock,
    Repetition,
    SatisfiesLowDegree,
    classify,
    diag_block,
    intertwiner_space,
    is_block_triangular,
    is_uniserial,
    project,
    staircase_units,
    tail_staircase_units,
)
from .constructions import (
    SpanningSetAlgebra,
    build_named,
    constrained_triangular,
    diagonal_algebra,
    diagonal_embedding,
    full_block_algebra,
    full_matrix_algebra,
    repetition_algebra,
    two_block_radical,
    upper_triangular,
)
from .errors import (
    CharacteristicError,
    ContractViolationError,
    DegreeGuardError,
    DimensionError,
    MatpiError,
    NotBlockTriangularError,
    NotSimpleBlocksError,
    RingMismatchError,
    SpecFileError,
    UnsupportedRingError,
)
from .identities import (
    BlockAssemblyReport,
    IdentityReport,
    IdentitySpace,
    MinDegreeResult,
    Witness,
    block_assembly_check,
    is_standard_identity,
    min_standard_degree,
    multilinear_identity_space,
    random_triangular_closures,
    standard_sign_vector,
    ur_vanishing_check,
)
from .matrices import (
    Matrix,
    identity_matrix,
    matrix_unit,
    nullspace,
    rref,
    scalar_matrix,
    zero_matrix,
)
from .rings import GF, QQ, IntegerModRing, PrimeField, RationalField, Ring, Zmod
from .specfile import AlgebraSpec, build_algebra, load_algebra_spec
from .standardpoly import (
    MultilinearPoly,
    Permutation,
    consecutive_factor_sum,
    eval_multilinear,
    eval_standard_dp,
    eval_standard_naive,
    perm_rank,
    perm_sign,
    perm_unrank,
    product_of,
    signed_permutations,
)
from .subalgebra import (
    GeneratorSet,
    SubalgebraBasis,
    close_generators,
    contains,
    is_semisimple,
    jacobson_radical,
    span_basis,
)

__all__ = [
    "AlgebraSpec",
    "BlockAssemblyReport",
    "BlockShape",
    "CharacteristicError",
    "ClassificationVerdict",
    "ContractViolationError",
    "DegreeGuardError",
    "DimensionError",
    "FullBlockTriangular",
    "GF",
    "GeneratorSet",
    "IdentityReport",
    "IdentitySpace",
    "IntegerModRing",
    "Matrix",
    "MatpiError",
    "MinDegreeResult",
    "MultilinearPoly",
    "NonvanishingWitness",
    "NotBlockTriangularError",
    "NotCanonical",
    "NotSimpleBlocksError",
    "NotUniserial",
    "Permutation",
    "PrimeField",
    "ProperSimpleBlock",
    "QQ",
    "RationalField",
    "Repetition",
    "Ring",
    "RingMismatchError",
    "SatisfiesLowDegree",
    "SpanningSetAlgebra",
    "SpecFileError",
    "SubalgebraBasis",
    "UnsupportedRingError",
    "Witness",
    "Zmod",
    "__version__",
    "block_assembly_check",
    "build_algebra",
    "build_named",
    "classify",
    "close_generators",
    "consecutive_factor_sum",
    "constrained_triangular",
    "contains",
    "diag_block",
    "diagonal_algebra",
    "diagonal_embedding",
    "eval_multilinear",
    "eval_standard_dp",
    "eval_standard_naive",
    "full_block_algebra",
    "full_matrix_algebra",
    "identity_matrix",
    "intertwiner_space",
    "is_block_triangular",
    "is_semisimple",
    "is_standard_identity",
    "is_uniserial",
    "jacobson_radical",
    "load_algebra_spec",
    "matrix_unit",
    "min_standard_degree",
    "multilinear_identity_space",
    "nullspace",
    "perm_rank",
    "perm_sign",
    "perm_unrank",
    "product_of",
    "project",
    "random_triangular_closures",
    "repetition_algebra",
    "rref",
    "scalar_matrix",
    "signed_permutations",
    "span_basis",
    "staircase_units",
    "standard_sign_vector",
    "tail_staircase_units",
    "two_block_radical",
    "upper_triangular",
    "ur_vanishing_check",
    "zero_matrix",
]
