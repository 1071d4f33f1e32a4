from ._core import (
    DefectNorm,
    ad_matrix,
    associator_norm,
    bracket,
    bracket_constant,
    defect_norm,
    defect_S,
    jacobian,
    killing_form,
    malcev_residual,
    max_malcev_residual,
    operator_norm,
    orthonormal_basis,
    vector_norm,
)
from ._octonion import (
    FANO_TRIPLES,
    MULTIPLICATION_TABLE,
    ONE,
    Octonion,
    associator,
    left_multiplication_matrix,
    oct_conj,
    oct_inner,
    oct_inverse,
    oct_mul,
    oct_norm,
    right_multiplication_matrix,
)
from ._spec import (
    BUILTIN_NAMES,
    FULL_COMMUTATOR_FACTOR,
    AlgebraSpec,
    builtin,
    is_octonion,
    load_algebra,
    resolve_algebra,
    scaled,
)

__all__ = [
    "AlgebraSpec",
    "Octonion",
    "DefectNorm",
    "FANO_TRIPLES",
    "MULTIPLICATION_TABLE",
    "ONE",
    "BUILTIN_NAMES",
    "FULL_COMMUTATOR_FACTOR",
    "oct_mul",
    "oct_conj",
    "oct_norm",
    "oct_inner",
    "oct_inverse",
    "associator",
    "left_multiplication_matrix",
    "right_multiplication_matrix",
    "builtin",
    "load_algebra",
    "resolve_algebra",
    "scaled",
    "is_octonion",
    "bracket",
    "jacobian",
    "malcev_residual",
    "max_malcev_residual",
    "ad_matrix",
    "defect_S",
    "defect_norm",
    "associator_norm",
    "bracket_constant",
    "killing_form",
    "operator_norm",
    "orthonormal_basis",
    "vector_norm",
]
