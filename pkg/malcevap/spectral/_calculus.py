from typing import Callable, List, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.integrate import quad_vec

from malcevap.algebra import AlgebraSpec, ad_matrix, vector_norm
from malcevap.errors import NonConjugateSymmetricF, NonImaginarySpectrum, SpectrumHit
from malcevap.spectral._exponential import exponential_map
from malcevap.spectral._spectrum import (
    default_tol,
    group_eigenvalues,
    metric_skew_form,
    operator_eigenvalues,
    skew_eigh,
)
from malcevap.types import LinOp, Vector

SpectralFunction = Callable[[complex], complex]


def _eigendecomposition(A: LinOp, alg: Optional[AlgebraSpec]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Eigenvalues, right eigenvectors and their inverse for a diagonalizable A"""
    if alg is not None:
        form = metric_skew_form(alg, A)
        if form is not None:
            B, L = form
            values, V = skew_eigh(B)
            return values, np.linalg.inv(L.T) @ V, V.conj().T @ L.T
    elif np.allclose(A, -A.T, rtol=0.0, atol=1e-12 * (1.0 + np.max(np.abs(A), initial=0.0))):
        values, V = skew_eigh(A)
        return values, V, V.conj().T

    values, V = np.linalg.eig(A)
    if np.linalg.cond(V) > 1e12:
        raise ValueError("The operator is not diagonalizable, its spectral projectors are undefined")
    return values, V, np.linalg.inv(V)


def spectral_projectors(
    matrix: LinOp,
    tol: Optional[float] = None,
    alg: Optional[AlgebraSpec] = None,
) -> List[Tuple[complex, np.ndarray]]:
    """The spectral decomposition A = Σ λᵢ Pᵢ of a diagonalizable operator.

    Args:
        matrix: The operator A.
        tol: Eigenvalues closer than this share a projector. Defaults to 1e-9·(1 + ‖A‖₂).
        alg: If given, A is diagonalized in a metric-orthonormal frame when it is metric-skew.

    Returns:
        Pairs (λᵢ, Pᵢ) with Σ Pᵢ = I and Pᵢ Pⱼ = δᵢⱼ Pᵢ.
    """
    tol = default_tol(float(np.linalg.norm(matrix, ord=2))) if tol is None else tol
    values, V, V_inv = _eigendecomposition(matrix, alg)

    projectors = []
    for value, _ in group_eigenvalues(values, tol):
        idx = np.flatnonzero(np.abs(values - value) <= tol)
        projectors.append((value, V[:, idx] @ V_inv[idx, :]))
    return projectors


def matrix_function(
    matrix: LinOp,
    f: SpectralFunction,
    tol: Optional[float] = None,
    alg: Optional[AlgebraSpec] = None,
) -> LinOp:
    """Evaluates f(A) = Σ f(λᵢ) Pᵢ through the spectral projectors of A.

    f only needs to be defined on the spectrum. It must send conjugate eigenvalues to conjugate
    values, otherwise f(A) is not a real operator.

    Raises:
        NonConjugateSymmetricF: f(conj λ) differs from conj f(λ) on the spectrum.
    """
    projectors = spectral_projectors(matrix, tol=tol, alg=alg)
    values = {value: complex(f(value)) for value, _ in projectors}

    for value, fvalue in values.items():
        partner = min(values, key=lambda v: abs(v - value.conjugate()))
        if abs(values[partner] - fvalue.conjugate()) > 1e-9 * (1.0 + abs(fvalue)):
            raise NonConjugateSymmetricF(
                f"f({partner:.6g}) = {values[partner]:.6g} is not the conjugate of f({value:.6g}) = {fvalue:.6g}"
            )

    result = sum(values[value] * P for value, P in projectors)
    residue = float(np.max(np.abs(result.imag), initial=0.0))
    if residue > 1e-10 * (1.0 + float(np.max(np.abs(result.real), initial=0.0))):
        logger.warning(f"f(A) has an imaginary residue of {residue:.3g}")
    return result.real


def functional_calculus(alg: AlgebraSpec, x: Vector, f: SpectralFunction, tol: Optional[float] = None) -> LinOp:
    """Applies f to ad(x) through its spectral projectors.

    Args:
        alg: The algebra.
        x: The generator. The spectrum of ad(x) must be purely imaginary.
        f: A function on the spectrum with f(conj λ) = conj f(λ).
        tol: The eigenvalue grouping tolerance. Defaults to 1e-9·(1 + ‖x‖).

    Raises:
        NonImaginarySpectrum: ad(x) has an eigenvalue off the imaginary axis.
        NonConjugateSymmetricF: f does not commute with conjugation on the spectrum.
    """
    A = ad_matrix(alg, x)
    tol = default_tol(vector_norm(alg, x)) if tol is None else tol
    off_axis = [v for v in operator_eigenvalues(A, alg) if abs(v.real) > tol]
    if len(off_axis) > 0:
        raise NonImaginarySpectrum(f"ad(x) has eigenvalues off the imaginary axis: {off_axis}")
    return matrix_function(A, f, tol=tol, alg=alg)


def resolvent(alg: AlgebraSpec, x: Vector, lam: complex, tol: Optional[float] = None) -> LinOp:
    """The resolvent R(λ, x) = (λI − ad(x))⁻¹.

    The result is real when λ is real, complex otherwise.

    Raises:
        SpectrumHit: λ lies within `tol` of the spectrum of ad(x).
    """
    A = ad_matrix(alg, x)
    tol = default_tol(vector_norm(alg, x)) if tol is None else tol
    distance = float(np.min(np.abs(operator_eigenvalues(A, alg) - lam)))
    if distance <= tol:
        raise SpectrumHit(f"λ = {lam} is within {distance:.3g} of the spectrum of ad(x)")

    R = np.linalg.solve(lam * np.eye(alg.dim) - A, np.eye(alg.dim))
    if complex(lam).imag == 0.0:
        return R.real
    return R


def resolvent_laplace(alg: AlgebraSpec, x: Vector, lam: complex, t_max: float = 40.0) -> LinOp:
    """Truncated Laplace representation ∫₀^{t_max} e^{−λt} e^{t ad(x)} dt of the resolvent.

    Converges to R(λ, x) as t_max grows whenever Re λ exceeds the growth bound of the flow.
    """
    lam = complex(lam)
    if lam.real <= 0:
        raise ValueError(f"The Laplace representation needs Re λ > 0, got {lam}")
    exp = exponential_map(alg, x)

    def _integrand(t: float) -> np.ndarray:
        value = np.exp(-lam * t) * exp(t)
        return np.stack([value.real, value.imag])

    integral, _ = quad_vec(_integrand, 0.0, t_max, epsabs=1e-10, epsrel=1e-10)
    if lam.imag == 0.0:
        return integral[0]
    return integral[0] + 1j * integral[1]
