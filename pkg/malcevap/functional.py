"""
The functional API: every operation of the package as a plain function, importable from one place.

The same functions live in the subpackages; this module only gathers them.
"""

from malcevap.algebra import (
    ad_matrix,
    associator,
    associator_norm,
    bracket,
    bracket_constant,
    builtin,
    defect_norm,
    defect_S,
    jacobian,
    killing_form,
    load_algebra,
    malcev_residual,
    max_malcev_residual,
    oct_conj,
    oct_inverse,
    oct_mul,
    oct_norm,
    scaled,
)
from malcevap.bch import bch_error, bch_radius_ok, bch_scaling, bch_summary, bch_terms, bch_truncated
from malcevap.dynamics import (
    conj_orbit,
    flow_conjugacy_residual,
    flow_trajectory,
    oct_exp,
    oct_log,
    orbit_closure_dim,
    torus_trajectory,
)
from malcevap.harmonics import (
    build_action,
    casimir_check,
    defect_ratio,
    defect_T,
    delta_T,
    harmonic_dimension,
    laplacian_eigenvalue,
    laplacian_table,
    multiplicity_oracle,
    paper_multiplicity,
    pi_jacobian,
    quaternion_action,
    spectral_invariant,
    structural_constant,
)
from malcevap.spectral import (
    classify_almost_periodic,
    exp_ad,
    exponential_map,
    functional_calculus,
    matrix_function,
    minimal_period,
    minpoly_residual,
    operator_period,
    orbit_stats,
    resolvent,
    resolvent_laplace,
    spectral_projectors,
    spectrum_ad,
)

__all__ = [
    "oct_mul",
    "oct_conj",
    "oct_norm",
    "oct_inverse",
    "associator",
    "builtin",
    "load_algebra",
    "scaled",
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
    "spectrum_ad",
    "classify_almost_periodic",
    "minpoly_residual",
    "minimal_period",
    "operator_period",
    "exponential_map",
    "exp_ad",
    "orbit_stats",
    "functional_calculus",
    "matrix_function",
    "spectral_projectors",
    "resolvent",
    "resolvent_laplace",
    "oct_exp",
    "oct_log",
    "flow_trajectory",
    "conj_orbit",
    "flow_conjugacy_residual",
    "orbit_closure_dim",
    "torus_trajectory",
    "bch_terms",
    "bch_truncated",
    "bch_radius_ok",
    "bch_error",
    "bch_scaling",
    "bch_summary",
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
