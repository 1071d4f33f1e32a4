from typing import Callable, Optional

import numpy as np
import scipy.linalg
from pydantic import BaseModel, Field

from malcevap.algebra import AlgebraSpec, ad_matrix
from malcevap.spectral._spectrum import metric_skew_form, skew_eigh
from malcevap.types import LinOp, Vector
from malcevap.utils import as_vector


class OrbitStats(BaseModel):
    """
    Boundedness and recurrence of a sampled adjoint orbit t ↦ e^{t ad(x)} y.

    In finite dimensions a bounded orbit is relatively compact, so a bounded `sup_norm` over a
    long grid together with a finite `recurrence_time` certifies almost periodicity of the orbit.

    Attributes:
        sup_norm: The largest metric norm along the sampled orbit.
        recurrence_epsilon: The radius of the recurrence ball around y.
        recurrence_time: The first sampled time at which the orbit re-enters the ball after
            leaving it. If the orbit never leaves the ball, the first positive grid point.
            None if the orbit does not come back.
        t_max: The end of the uniform time grid [0, t_max].
        steps: The number of grid points.
    """

    sup_norm: float
    recurrence_epsilon: float
    recurrence_time: Optional[float]
    t_max: float = Field(..., gt=0)
    steps: int = Field(..., ge=2)


def exponential_map(alg: AlgebraSpec, x: Vector) -> Callable[[float], LinOp]:
    """Returns t ↦ e^{t ad(x)}.

    A generator that is skew with respect to the metric is diagonalized once by a unitary
    eigenbasis, which keeps every exponential exactly metric-orthogonal. Any other generator falls
    back to scaling and squaring with Padé approximants.
    """
    A = ad_matrix(alg, x)
    form = metric_skew_form(alg, A)
    if form is None:
        return lambda t: scipy.linalg.expm(t * A)

    B, L = form
    values, V = skew_eigh(B)
    to_frame, from_frame = L.T, np.linalg.inv(L.T)

    def _exp(t: float) -> LinOp:
        rotation = ((V * np.exp(t * values)) @ V.conj().T).real
        return from_frame @ rotation @ to_frame

    return _exp


def exp_ad(alg: AlgebraSpec, x: Vector, t: float) -> LinOp:
    """The inner automorphism e^{t ad(x)}"""
    return exponential_map(alg, x)(t)


def orbit_points(alg: AlgebraSpec, x: Vector, y: Vector, times: np.ndarray) -> np.ndarray:
    """Samples e^{t ad(x)} y at each time, as rows"""
    y = as_vector(y, alg.dim, name="y")
    exp = exponential_map(alg, x)
    return np.stack([exp(t) @ y for t in times])


def orbit_stats(
    alg: AlgebraSpec,
    x: Vector,
    y: Vector,
    t_max: float,
    steps: int,
    epsilon: float = 1e-3,
) -> OrbitStats:
    """Samples the adjoint orbit of y under x on a uniform grid and summarizes it.

    Args:
        alg: The algebra.
        x: The generator.
        y: The starting point.
        t_max: The end of the time grid.
        steps: The number of grid points, including t = 0.
        epsilon: The recurrence radius.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if t_max <= 0:
        raise ValueError("t_max must be positive")

    times = np.linspace(0.0, t_max, steps)
    points = orbit_points(alg, x, y, times)
    L = np.linalg.cholesky(alg.metric)
    norms = np.linalg.norm(points @ L, axis=1)
    distances = np.linalg.norm((points - points[0]) @ L, axis=1)

    outside = np.flatnonzero(distances[1:] >= epsilon)
    if len(outside) == 0:
        recurrence_time = float(times[1])
    else:
        first_exit = outside[0] + 1
        back = np.flatnonzero(distances[first_exit:] < epsilon)
        recurrence_time = None if len(back) == 0 else float(times[first_exit + back[0]])

    return OrbitStats(
        sup_norm=float(np.max(norms)),
        recurrence_epsilon=epsilon,
        recurrence_time=recurrence_time,
        t_max=t_max,
        steps=steps,
    )
