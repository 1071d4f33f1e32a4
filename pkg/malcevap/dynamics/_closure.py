import numpy as np
from loguru import logger
from sklearn.decomposition import PCA

from malcevap.dynamics._flows import Trajectory
from malcevap.errors import InsufficientSamples


def is_recurrent(points: np.ndarray, epsilon: float) -> bool:
    """Whether the curve leaves the epsilon-ball around its first point and comes back into it"""
    distances = np.linalg.norm(points - points[0], axis=1)
    outside = np.flatnonzero(distances >= epsilon)
    if len(outside) == 0:
        return True
    return bool(np.any(distances[outside[0] :] < epsilon))


def orbit_closure_dim(traj: Trajectory, epsilon: float = 1e-3) -> int:
    """Estimates the dimension of the closure of a sampled orbit.

    A periodic orbit closes up into a circle, which spans a 2-plane around its center. An orbit
    winding around a torus with m incommensurate frequencies spans 2m directions. The dimension
    is read off the number of principal components whose singular value exceeds `epsilon` times
    the largest one.

    Args:
        traj: The sampled orbit. It must cover at least one period.
        epsilon: Relative singular value threshold and recurrence radius.

    Returns:
        0 for a constant trajectory, 1 for a closed circle, and half the PCA rank otherwise.

    Raises:
        InsufficientSamples: Fewer than 3 samples, or a planar orbit that never comes back to its
            start within `epsilon`.
    """
    if len(traj) < 3:
        raise InsufficientSamples(f"At least 3 samples are needed, got {len(traj)}")

    points = np.asarray(traj.points)
    if np.max(np.linalg.norm(points - points.mean(axis=0), axis=1)) < epsilon:
        return 0

    pca = PCA(svd_solver="full").fit(points)
    singular_values = pca.singular_values_
    rank = int(np.sum(singular_values > epsilon * singular_values[0]))
    logger.debug(f"Orbit point cloud has PCA rank {rank}, singular values {np.round(singular_values, 6).tolist()}")

    if rank <= 2:
        if not is_recurrent(points, epsilon):
            raise InsufficientSamples("The trajectory does not return to its start, sample at least one period")
        return 1
    return (rank + 1) // 2
