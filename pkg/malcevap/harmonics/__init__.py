from ._action import (
    QUATERNION_INDICES,
    REFERENCE_STRUCTURAL_CONSTANT,
    REFERENCE_T_NORM,
    EigenspaceAction,
    build_action,
    casimir_check,
    defect_ratio,
    defect_T,
    delta_T,
    pi_jacobian,
    quaternion_action,
    structural_constant,
)
from ._laplacian import (
    CSV_COLUMNS,
    LaplacianRow,
    LaplacianTable,
    harmonic_dimension,
    laplacian_eigenvalue,
    laplacian_table,
    multiplicity_oracle,
    paper_multiplicity,
    spectral_invariant,
)

__all__ = [
    "EigenspaceAction",
    "LaplacianRow",
    "LaplacianTable",
    "QUATERNION_INDICES",
    "REFERENCE_T_NORM",
    "REFERENCE_STRUCTURAL_CONSTANT",
    "CSV_COLUMNS",
    "build_action",
    "quaternion_action",
    "casimir_check",
    "defect_T",
    "delta_T",
    "pi_jacobian",
    "defect_ratio",
    "structural_constant",
    "laplacian_eigenvalue",
    "multiplicity_oracle",
    "harmonic_dimension",
    "paper_multiplicity",
    "laplacian_table",
    "spectral_invariant",
]
