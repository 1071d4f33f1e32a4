from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from malcevap.algebra import AlgebraSpec, ad_matrix, is_octonion, vector_norm
from malcevap.errors import UnsupportedAlgebra, ZeroElement
from malcevap.types import LinOp, Vector
from malcevap.utils import DEFAULT_SEED

# Nonzero frequencies whose ratios to the smallest one are within this of an integer are
# considered commensurate.
COMMENSURABILITY_TOL = 1e-8


class Eigenvalue(BaseModel):
    """A point of the spectrum with its algebraic multiplicity"""

    re: float
    im: float
    mult: int = Field(..., ge=1)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


class SpectrumReport(BaseModel):
    """
    The spectrum of ad(x), grouped into distinct eigenvalues.

    Attributes:
        eigenvalues: Distinct eigenvalues with multiplicities, sorted by imaginary then real part.
        purely_imaginary: Whether every eigenvalue satisfies |Re λ| ≤ `tol_used`.
        almost_periodic: Whether x generates relatively compact orbits, i.e. the spectrum is purely
            imaginary and ad(x) is diagonalizable.
        generator_norm: The metric norm of x.
        tol_used: The grouping tolerance.
    """

    eigenvalues: List[Eigenvalue]
    purely_imaginary: bool
    almost_periodic: bool
    generator_norm: float
    tol_used: float

    @model_validator(mode="after")
    def _validate_conjugate_closed(self):
        for ev in self.eigenvalues:
            partner = [
                o for o in self.eigenvalues if abs(o.value - ev.value.conjugate()) <= 2 * self.tol_used and o.mult == ev.mult
            ]
            if len(partner) == 0:
                raise ValueError(f"The spectrum of a real operator must be closed under conjugation, {ev.value} has no partner")
        return self

    @property
    def dim(self) -> int:
        return sum(ev.mult for ev in self.eigenvalues)

    def multiplicity(self, value: complex) -> int:
        """Multiplicity of `value`, or 0 if it is not in the spectrum"""
        for ev in self.eigenvalues:
            if abs(ev.value - value) <= self.tol_used:
                return ev.mult
        return 0


def default_tol(x_norm: float) -> float:
    """Default eigenvalue grouping tolerance 1e-9·(1 + ‖x‖)"""
    return 1e-9 * (1.0 + x_norm)


def metric_skew_form(alg: AlgebraSpec, A: LinOp) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """If A is skew with respect to the metric, return (B, L) with B = Lᵀ A L⁻ᵀ skew and metric = L Lᵀ"""
    L = np.linalg.cholesky(alg.metric)
    B = L.T @ A @ np.linalg.inv(L.T)
    scale = 1.0 + float(np.max(np.abs(B), initial=0.0))
    if np.max(np.abs(B + B.T), initial=0.0) <= 1e-12 * scale:
        return B, L
    return None


def skew_eigh(B: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real skew matrix through the Hermitian matrix iB.

    Returns the (purely imaginary) eigenvalues and a unitary matrix of eigenvectors.
    """
    mu, V = np.linalg.eigh(1j * B)
    return -1j * mu, V


def _is_skew(A: LinOp) -> bool:
    return np.allclose(A, -A.T, rtol=0.0, atol=1e-12 * (1.0 + np.max(np.abs(A), initial=0.0)))


def operator_eigenvalues(A: LinOp, alg: Optional[AlgebraSpec] = None) -> np.ndarray:
    """Eigenvalues of A, through the Hermitian path when A is (metric-)skew"""
    if alg is None:
        skew = A if _is_skew(A) else None
    else:
        form = metric_skew_form(alg, A)
        skew = None if form is None else form[0]
    if skew is not None:
        return skew_eigh(skew)[0]
    return np.linalg.eigvals(A)


def group_eigenvalues(values: np.ndarray, tol: float) -> List[Tuple[complex, int]]:
    """Cluster eigenvalues closer than `tol` and count them"""
    clusters: List[List[complex]] = []
    for v in sorted(np.asarray(values, dtype=complex), key=lambda z: (z.imag, z.real)):
        for cluster in clusters:
            if abs(np.mean(cluster) - v) <= tol:
                cluster.append(v)
                break
        else:
            clusters.append([v])
    grouped = [(complex(np.mean(c)), len(c)) for c in clusters]
    return sorted(grouped, key=lambda p: (p[0].imag, p[0].real))


def _split_radius(scale: float, k: int) -> float:
    # A k-fold Jordan block perturbed by eps·‖A‖ splits into a ring of radius about ‖A‖·eps^(1/k)
    return 10.0 * scale * np.finfo(np.float64).eps ** (1.0 / k)


def _generalized_kernel_dim(A: LinOp, value: complex, k: int, scale: float) -> int:
    n = A.shape[0]
    power = np.linalg.matrix_power(A - value * np.eye(n), k)
    return n - int(np.linalg.matrix_rank(power, tol=1e-8 * max(1.0, scale) ** k))


def merge_defective_clusters(A: LinOp, grouped: List[Tuple[complex, int]], tol: float) -> List[Tuple[complex, int]]:
    """Merges the eigenvalues that a rounding perturbation split off a defective eigenvalue.

    A group is merged with its nearest neighbours when they all lie within the splitting radius of
    a k-fold cluster around their weighted mean λ, and (A - λI)^k has a kernel of dimension exactly
    k. The largest such cluster around each group wins.
    """
    scale = float(np.linalg.norm(A, ord=2))
    if scale == 0.0:
        return grouped

    groups = list(grouped)
    i = 0
    while i < len(groups):
        anchor = groups[i][0]
        order = sorted(range(len(groups)), key=lambda j: abs(groups[j][0] - anchor))
        for m in range(len(order), 1, -1):
            members = [groups[j] for j in order[:m]]
            k = sum(mult for _, mult in members)
            centre = sum(value * mult for value, mult in members) / k
            radius = max(tol, _split_radius(scale, k))
            if any(abs(value - centre) > radius for value, _ in members):
                continue
            if _generalized_kernel_dim(A, centre, k, scale) != k:
                continue
            groups = [g for j, g in enumerate(groups) if j not in order[:m]] + [(complex(centre), k)]
            i = -1
            break
        i += 1
    return sorted(groups, key=lambda p: (p[0].imag, p[0].real))


def grouped_spectrum(A: LinOp, tol: float, alg: Optional[AlgebraSpec] = None) -> List[Tuple[complex, int]]:
    """Distinct eigenvalues of A with algebraic multiplicities.

    Skew operators are grouped within `tol`. Other operators may have Jordan blocks, whose
    computed eigenvalues are spread well beyond `tol`, so their clusters are merged as well.
    """
    skew = metric_skew_form(alg, A) is not None if alg is not None else _is_skew(A)
    grouped = group_eigenvalues(operator_eigenvalues(A, alg), tol)
    if skew:
        return grouped
    return merge_defective_clusters(A, grouped, tol)


def is_diagonalizable(A: LinOp, grouped: List[Tuple[complex, int]], tol: float) -> bool:
    """Whether geometric and algebraic multiplicities agree for every eigenvalue"""
    n = A.shape[0]
    rank_tol = max(tol, 1e-8 * (1.0 + np.linalg.norm(A, ord=2)))
    for value, mult in grouped:
        rank = np.linalg.matrix_rank(A - value * np.eye(n), tol=rank_tol)
        if n - rank != mult:
            return False
    return True


def spectrum_ad(alg: AlgebraSpec, x: Vector, tol: Optional[float] = None) -> SpectrumReport:
    """Computes the spectrum of the adjoint operator ad(x).

    Args:
        alg: The algebra.
        x: The generator.
        tol: Grouping tolerance. Defaults to 1e-9·(1 + ‖x‖).
    """
    A = ad_matrix(alg, x)
    x_norm = vector_norm(alg, x)
    tol = default_tol(x_norm) if tol is None else tol

    skew = metric_skew_form(alg, A) is not None
    grouped = grouped_spectrum(A, tol, alg)
    purely_imaginary = all(abs(v.real) <= tol for v, _ in grouped)
    diagonalizable = skew or is_diagonalizable(A, grouped, tol)

    eigenvalues = [Eigenvalue(re=float(v.real) + 0.0, im=float(v.imag) + 0.0, mult=m) for v, m in grouped]
    return SpectrumReport(
        eigenvalues=eigenvalues,
        purely_imaginary=purely_imaginary,
        almost_periodic=purely_imaginary and diagonalizable,
        generator_norm=x_norm,
        tol_used=tol,
    )


def classify_almost_periodic(alg: AlgebraSpec, sample_count: int = 100, seed: int = DEFAULT_SEED) -> bool:
    """Whether every basis element and every sampled element generates relatively compact orbits.

    In finite dimensions an orbit {e^{t ad(x)} y} is relatively compact iff it is bounded, which
    holds for all y iff ad(x) is diagonalizable with purely imaginary spectrum.
    """
    rng = np.random.default_rng(seed)
    candidates = list(np.eye(alg.dim)) + list(rng.standard_normal((sample_count, alg.dim)))
    return all(spectrum_ad(alg, x).almost_periodic for x in candidates)


def minpoly_residual(alg: AlgebraSpec, x: Vector) -> float:
    """Frobenius norm of ad(x)³ + ‖x‖²·ad(x), which vanishes on Im(O)"""
    if not is_octonion(alg):
        raise UnsupportedAlgebra(f"ad(x)³ = -‖x‖² ad(x) is specific to the octonion algebra, got '{alg.name}'")
    A = ad_matrix(alg, x)
    return float(np.linalg.norm(A @ A @ A + vector_norm(alg, x) ** 2 * A, ord="fro"))


def period_from_eigenvalues(
    values: np.ndarray,
    tol: float = COMMENSURABILITY_TOL,
    zero_tol: float = 1e-9,
) -> Optional[float]:
    """The minimal period of t ↦ e^{tA} from the eigenvalues of a diagonalizable A.

    The nonzero frequencies |Im λ| are divided by the smallest one. If every ratio is an integer
    (within `tol`) the period is 2π over the smallest frequency, otherwise the motion is
    quasi-periodic and None is returned. None is also returned when there is no oscillation or
    when some eigenvalue leaves the imaginary axis.
    """
    values = np.asarray(values, dtype=complex)
    if np.any(np.abs(values.real) > zero_tol):
        return None
    freqs = np.abs(values.imag[np.abs(values) > zero_tol])
    if len(freqs) == 0:
        return None
    omega = float(np.min(freqs))
    ratios = freqs / omega
    if np.all(np.abs(ratios - np.round(ratios)) <= tol):
        return 2 * np.pi / omega
    return None


def operator_period(A: LinOp, tol: float = COMMENSURABILITY_TOL) -> Optional[float]:
    """Minimal period of t ↦ e^{tA} for a real matrix A, or None if it is not periodic"""
    zero_tol = default_tol(float(np.linalg.norm(A, ord=2)))
    values = operator_eigenvalues(A)
    if not is_diagonalizable(A, grouped_spectrum(A, zero_tol), zero_tol):
        return None
    return period_from_eigenvalues(values, tol=tol, zero_tol=zero_tol)


def minimal_period(alg: AlgebraSpec, x: Vector, tol: float = COMMENSURABILITY_TOL) -> Optional[float]:
    """Minimal period of t ↦ e^{t ad(x)}, or None when the flow is not periodic.

    Raises:
        ZeroElement: x is zero.
    """
    if vector_norm(alg, x) == 0.0:
        raise ZeroElement("The zero element has no minimal period")
    A = ad_matrix(alg, x)
    zero_tol = default_tol(vector_norm(alg, x))
    values = operator_eigenvalues(A, alg)
    if metric_skew_form(alg, A) is None and not is_diagonalizable(A, grouped_spectrum(A, zero_tol, alg), zero_tol):
        return None
    return period_from_eigenvalues(values, tol=tol, zero_tol=zero_tol)
