from itertools import combinations

import numpy as np
from pydantic import BaseModel

from malcevap.algebra._octonion import Octonion, associator
from malcevap.algebra._spec import AlgebraSpec
from malcevap.types import LinOp, Vector
from malcevap.utils import DEFAULT_SEED, as_vector, random_unit_vectors


class DefectNorm(BaseModel):
    """
    Two estimates of the Malcev defect norm sup ‖S(x, y)z‖ over unit x, y, z.

    Attributes:
        basis_sup: The maximum of ‖S(e_i, e_j)‖_op over orthonormal basis pairs.
        sampled_sup: The maximum of ‖S(x, y)z‖ over seeded random unit triples.
            A Monte-Carlo lower bound of the true supremum.
        sample_count: The number of random triples drawn.
    """

    basis_sup: float
    sampled_sup: float
    sample_count: int


def _check(alg: AlgebraSpec, *vectors: Vector) -> list:
    return [as_vector(v, alg.dim) for v in vectors]


def _bracket_batch(alg: AlgebraSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("...i,...j,ijk->...k", x, y, alg.structure_constants)


def _jacobian_batch(alg: AlgebraSpec, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    b = _bracket_batch
    return b(alg, b(alg, x, y), z) + b(alg, b(alg, y, z), x) + b(alg, b(alg, z, x), y)


def _metric_factor(alg: AlgebraSpec) -> np.ndarray:
    """Lower Cholesky factor L with metric = L Lᵀ; v ↦ Lᵀv is an isometry onto Euclidean space"""
    return np.linalg.cholesky(alg.metric)


def orthonormal_basis(alg: AlgebraSpec) -> np.ndarray:
    """Columns form a basis that is orthonormal with respect to `alg.metric`"""
    if np.array_equal(alg.metric, np.eye(alg.dim)):
        return np.eye(alg.dim)
    return np.linalg.inv(_metric_factor(alg)).T


def vector_norm(alg: AlgebraSpec, x: Vector) -> float:
    """The metric norm sqrt(xᵀ M x)"""
    x = as_vector(x, alg.dim)
    return float(np.sqrt(max(x @ alg.metric @ x, 0.0)))


def operator_norm(alg: AlgebraSpec, op: LinOp) -> float:
    """Largest singular value of `op` as an operator on (R^dim, metric)"""
    if np.array_equal(alg.metric, np.eye(alg.dim)):
        return float(np.linalg.norm(op, ord=2))
    L = _metric_factor(alg)
    conjugated = L.T @ op @ np.linalg.inv(L.T)
    return float(np.linalg.norm(conjugated, ord=2))


def bracket(alg: AlgebraSpec, x: Vector, y: Vector) -> Vector:
    """The bracket [x, y] = sum_ijk x_i y_j c[i, j, k] e_k"""
    x, y = _check(alg, x, y)
    return _bracket_batch(alg, x, y)


def jacobian(alg: AlgebraSpec, x: Vector, y: Vector, z: Vector) -> Vector:
    """The Jacobian J(x, y, z) = [[x, y], z] + [[y, z], x] + [[z, x], y]"""
    x, y, z = _check(alg, x, y, z)
    return _jacobian_batch(alg, x, y, z)


def malcev_residual(alg: AlgebraSpec, x: Vector, y: Vector, z: Vector) -> float:
    """Norm of J(x, y, [x, z]) - [J(x, y, z), x]; zero for Malcev algebras"""
    x, y, z = _check(alg, x, y, z)
    lhs = _jacobian_batch(alg, x, y, _bracket_batch(alg, x, z))
    rhs = _bracket_batch(alg, _jacobian_batch(alg, x, y, z), x)
    return vector_norm(alg, lhs - rhs)


def max_malcev_residual(alg: AlgebraSpec) -> float:
    """The largest Malcev residual over all dim³ basis triples"""
    eye = np.eye(alg.dim)
    x = eye[:, None, None, :]
    y = eye[None, :, None, :]
    z = eye[None, None, :, :]
    x, y, z = np.broadcast_arrays(x, y, z)
    lhs = _jacobian_batch(alg, x, y, _bracket_batch(alg, x, z))
    rhs = _bracket_batch(alg, _jacobian_batch(alg, x, y, z), x)
    diff = (lhs - rhs).reshape(-1, alg.dim) @ _metric_factor(alg)
    return float(np.max(np.linalg.norm(diff, axis=1)))


def ad_matrix(alg: AlgebraSpec, x: Vector) -> LinOp:
    """Matrix of the adjoint operator ad(x): y ↦ [x, y]"""
    (x,) = _check(alg, x)
    return np.einsum("i,ijk->kj", x, alg.structure_constants)


def defect_S(alg: AlgebraSpec, x: Vector, y: Vector) -> LinOp:
    """
    The commutator defect S(x, y) = [ad(x), ad(y)] - ad([x, y]).

    It measures how far `ad` is from a Lie homomorphism and vanishes identically exactly for
    Lie algebras. Expanding the brackets gives S(x, y)z = -J(x, y, z).
    """
    ax = ad_matrix(alg, x)
    ay = ad_matrix(alg, y)
    return ax @ ay - ay @ ax - ad_matrix(alg, bracket(alg, x, y))


def defect_norm(alg: AlgebraSpec, sample_count: int = 1000, seed: int = DEFAULT_SEED) -> DefectNorm:
    """Estimates the Malcev defect norm sup ‖S(x, y)z‖ over unit x, y, z.

    Both numbers are reported; neither is assumed to bound the other.

    Args:
        alg: The algebra.
        sample_count: Number of random unit triples.
        seed: Seed of the random generator.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")

    basis = orthonormal_basis(alg)
    basis_sup = 0.0
    for i, j in combinations(range(alg.dim), 2):
        basis_sup = max(basis_sup, operator_norm(alg, defect_S(alg, basis[:, i], basis[:, j])))

    rng = np.random.default_rng(seed)
    to_metric_unit = basis
    x, y, z = (random_unit_vectors(rng, sample_count, alg.dim) @ to_metric_unit.T for _ in range(3))
    values = -_jacobian_batch(alg, x, y, z) @ _metric_factor(alg)
    sampled_sup = float(np.max(np.linalg.norm(values, axis=1)))

    return DefectNorm(basis_sup=basis_sup, sampled_sup=sampled_sup, sample_count=sample_count)


def associator_norm() -> float:
    """Largest operator norm of z ↦ (e_i, e_j, z) over pairs of distinct imaginary units"""
    best = 0.0
    units = [Octonion.basis(i) for i in range(8)]
    for i, j in combinations(range(1, 8), 2):
        cols = [associator(units[i], units[j], units[k]).coefficients for k in range(8)]
        best = max(best, float(np.linalg.norm(np.stack(cols, axis=1), ord=2)))
    return best


def bracket_constant(alg: AlgebraSpec, sample_count: int = 1000, seed: int = DEFAULT_SEED) -> float:
    """The continuity constant B with ‖[x, y]‖ ≤ B‖x‖‖y‖, estimated from below.

    Takes the maximum of ‖[x, y]‖ over orthonormal basis pairs and seeded random unit pairs.
    """
    basis = orthonormal_basis(alg)
    L = _metric_factor(alg)
    pairs = _bracket_batch(alg, basis.T[:, None, :], basis.T[None, :, :]).reshape(-1, alg.dim) @ L
    best = float(np.max(np.linalg.norm(pairs, axis=1)))

    rng = np.random.default_rng(seed)
    x = random_unit_vectors(rng, sample_count, alg.dim) @ basis.T
    y = random_unit_vectors(rng, sample_count, alg.dim) @ basis.T
    sampled = _bracket_batch(alg, x, y) @ L
    return max(best, float(np.max(np.linalg.norm(sampled, axis=1))))


def killing_form(alg: AlgebraSpec) -> np.ndarray:
    """The Killing form K_ij = tr(ad(e_i) ad(e_j))"""
    ads = np.einsum("ijk->ikj", alg.structure_constants)
    return np.einsum("iab,jba->ij", ads, ads)
