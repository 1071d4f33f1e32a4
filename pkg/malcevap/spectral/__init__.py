from ._calculus import (
    SpectralFunction,
    functional_calculus,
    matrix_function,
    resolvent,
    resolvent_laplace,
    spectral_projectors,
)
from ._exponential import OrbitStats, exp_ad, exponential_map, orbit_points, orbit_stats
from ._spectrum import (
    COMMENSURABILITY_TOL,
    Eigenvalue,
    SpectrumReport,
    classify_almost_periodic,
    grouped_spectrum,
    minimal_period,
    minpoly_residual,
    operator_period,
    period_from_eigenvalues,
    spectrum_ad,
)

__all__ = [
    "SpectrumReport",
    "Eigenvalue",
    "OrbitStats",
    "SpectralFunction",
    "COMMENSURABILITY_TOL",
    "spectrum_ad",
    "classify_almost_periodic",
    "grouped_spectrum",
    "minpoly_residual",
    "exp_ad",
    "exponential_map",
    "orbit_points",
    "orbit_stats",
    "minimal_period",
    "operator_period",
    "period_from_eigenvalues",
    "functional_calculus",
    "matrix_function",
    "spectral_projectors",
    "resolvent",
    "resolvent_laplace",
]
