from typing import List, Optional, Sequence, Union

import fsspec
import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from malcevap.algebra import ONE, Octonion, builtin, oct_inverse, oct_mul
from malcevap.algebra._octonion import mul_arrays
from malcevap.errors import BranchPoint, DimensionMismatch, NotImaginary, NotUnit, ParseError
from malcevap.spectral import exp_ad
from malcevap.types import FlowConvention, FlowKind, Vector
from malcevap.utils import frozen_array

UNIT_TOL = 1e-12

CSV_COLUMNS = ["t"] + [f"c{i}" for i in range(8)]

ImaginaryLike = Union[Octonion, Vector, Sequence[float]]


class Trajectory(BaseModel):
    """
    Time-stamped samples of a curve on the unit sphere S⁷ ⊂ O.

    Attributes:
        times: Strictly increasing sample times.
        points: The `(len(times), 8)` octonion coefficients, each of unit norm.
        generator: The imaginary part of the flow generator, if the curve is a flow.
        convention: The translation side of the flow, if the curve is a flow.
    """

    times: np.ndarray
    points: np.ndarray
    generator: Optional[np.ndarray] = None
    convention: Optional[FlowConvention] = None

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("times", mode="before")
    def _validate_times(cls, value):
        times = frozen_array(value, ndim=1, name="times")
        if np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        return times

    @field_validator("points", mode="before")
    def _validate_points(cls, value):
        points = frozen_array(value, ndim=2, name="points")
        if points.shape[1] != 8:
            raise ValueError(f"points must have 8 columns, got {points.shape[1]}")
        deviation = np.max(np.abs(np.linalg.norm(points, axis=1) - 1.0), initial=0.0)
        if deviation > UNIT_TOL:
            raise ValueError(f"Every point must have unit norm, found a deviation of {deviation:.3g}")
        return points

    @field_validator("generator", mode="before")
    def _validate_generator(cls, value):
        if value is None:
            return None
        return frozen_array(value, ndim=1, name="generator")

    @model_validator(mode="after")
    def _validate_lengths(self):
        if len(self.times) != len(self.points):
            raise ValueError(f"Got {len(self.times)} times for {len(self.points)} points")
        return self

    @field_serializer("times", "points", "generator")
    def _serialize_array(self, value: Optional[np.ndarray]):
        return None if value is None else value.tolist()

    def __len__(self) -> int:
        return len(self.times)

    def octonions(self) -> List[Octonion]:
        return [Octonion(coefficients=p) for p in self.points]

    def to_dataframe(self) -> pd.DataFrame:
        data = np.column_stack([self.times, self.points])
        return pd.DataFrame(data, columns=CSV_COLUMNS)

    def to_csv(self, path: Optional[str] = None) -> Optional[str]:
        """Writes the `t,c0,...,c7` CSV at full double precision.

        Args:
            path: The destination. If None, the CSV is returned as a string.
        """
        if path is None:
            return self.to_dataframe().to_csv(index=False, float_format="%.17g")
        with fsspec.open(path, "w") as fd:
            self.to_dataframe().to_csv(fd, index=False, float_format="%.17g")

    @classmethod
    def from_csv(
        cls,
        path: str,
        generator: Optional[Vector] = None,
        convention: Optional[FlowConvention] = None,
    ) -> "Trajectory":
        """Reads a trajectory written by [`to_csv`][malcevap.dynamics.Trajectory.to_csv]"""
        with fsspec.open(path, "r") as fd:
            df = pd.read_csv(fd)
        if list(df.columns) != CSV_COLUMNS:
            raise ParseError(f"Expected the columns {CSV_COLUMNS}, got {list(df.columns)}")
        return cls(
            times=df["t"].to_numpy(),
            points=df[CSV_COLUMNS[1:]].to_numpy(),
            generator=generator,
            convention=convention,
        )


def imaginary_part(x: ImaginaryLike, name: str = "x") -> np.ndarray:
    """The 7 imaginary coefficients of an octonion given as an `Octonion`, an 8-vector or a 7-vector.

    Raises:
        NotImaginary: The real part is not zero within 1e-12.
    """
    coefficients = x.coefficients if isinstance(x, Octonion) else np.asarray(x, dtype=np.float64)
    if coefficients.shape == (7,):
        return coefficients
    if coefficients.shape != (8,):
        raise DimensionMismatch(f"{name} must have 7 or 8 coefficients, got shape {coefficients.shape}")
    if abs(coefficients[0]) > UNIT_TOL:
        raise NotImaginary(f"{name} has real part {coefficients[0]}")
    return coefficients[1:]


def _check_unit(p: Octonion, tol: float = UNIT_TOL):
    if abs(p.norm() - 1.0) > tol:
        raise NotUnit(f"Expected a unit octonion, got norm {p.norm()}")


def _exp_arrays(v: np.ndarray, t: np.ndarray) -> np.ndarray:
    """exp(t·v) for a 7-vector v at each time, as `(len(t), 8)` coefficients"""
    theta = float(np.linalg.norm(v))
    out = np.zeros((len(t), 8))
    out[:, 0] = np.cos(t * theta)
    if theta > 0:
        out[:, 1:] = np.outer(np.sin(t * theta), v / theta)
    return out


def oct_exp(x: ImaginaryLike) -> Octonion:
    """The exponential cos‖x‖ + sin‖x‖·x/‖x‖ of an imaginary octonion

    Raises:
        NotImaginary: x has a non-zero real part.
    """
    v = imaginary_part(x)
    return Octonion(coefficients=_exp_arrays(v, np.ones(1))[0])


def oct_log(q: Octonion, tol: float = 1e-10) -> Octonion:
    """The imaginary logarithm of a unit octonion, with norm in [0, π).

    Raises:
        NotUnit: q is not a unit octonion within `tol`.
        BranchPoint: q is within `tol` of -1, where the logarithm is not unique.
    """
    _check_unit(q, tol)
    if np.linalg.norm(q.coefficients + ONE.coefficients) <= tol:
        raise BranchPoint("The logarithm is not defined at -1")

    v = q.coefficients[1:]
    s = float(np.linalg.norm(v))
    if s == 0.0:
        return Octonion(coefficients=np.zeros(8))
    theta = np.arctan2(s, q.coefficients[0])
    return Octonion.from_imaginary(theta * v / s)


def flow_trajectory(
    x: ImaginaryLike,
    p0: Octonion,
    t_grid: Union[Sequence[float], np.ndarray],
    convention: FlowConvention = FlowConvention.LEFT,
) -> Trajectory:
    """Samples the translation flow of the unit octonions generated by x.

    The left flow is Φ_t(p) = exp(tx)·p, the right flow p·exp(tx). Both are evaluated in closed form.

    Args:
        x: The imaginary generator.
        p0: The unit starting point.
        t_grid: Strictly increasing times.
        convention: The translation side.

    Raises:
        NotUnit: p0 is not a unit octonion.
        NotImaginary: x has a non-zero real part.
    """
    v = imaginary_part(x)
    _check_unit(p0)
    t = np.asarray(t_grid, dtype=np.float64)
    q = _exp_arrays(v, t)
    if FlowConvention(convention) is FlowConvention.LEFT:
        points = mul_arrays(q, p0.coefficients)
    else:
        points = mul_arrays(p0.coefficients, q)
    return Trajectory(times=t, points=points, generator=v, convention=convention)


def conj_orbit(x: ImaginaryLike, y: ImaginaryLike, t: float) -> np.ndarray:
    """The inner automorphism e^{t ad(x)} y, realized as q·y·q⁻¹ with q = exp(tx/2).

    The half angle matches the ½-commutator bracket of the octonion algebra.

    Returns:
        The 7 imaginary coefficients of the result.
    """
    v = imaginary_part(x)
    w = imaginary_part(y, name="y")
    q = oct_exp(0.5 * t * v)
    rotated = oct_mul(oct_mul(q, Octonion.from_imaginary(w)), oct_inverse(q))
    return rotated.imaginary


def _flow(kind: FlowKind, v: np.ndarray, t: float, p: Octonion) -> Octonion:
    if kind == "left":
        return oct_mul(oct_exp(t * v), p)
    if kind == "right":
        return oct_mul(p, oct_exp(t * v))
    if kind == "conjugation":
        q = oct_exp(0.5 * t * v)
        return oct_mul(oct_mul(q, p), oct_inverse(q))
    raise ValueError(f"Unknown flow '{kind}'. Choose from left, right or conjugation")


def flow_conjugacy_residual(x: ImaginaryLike, y: ImaginaryLike, t: float, flow: FlowKind = "left") -> float:
    """Measures ‖Φ_t(exp(y)) − exp(e^{t ad(x)} y)‖ for one of the flows on S⁷.

    The identity holds exactly for the conjugation flow. For the translation flows it generally
    fails; the residual is a diagnostic and carries no expected value.

    Raises:
        BranchPoint: ‖y‖ reaches π, where exp stops being injective.
    """
    v = imaginary_part(x)
    w = imaginary_part(y, name="y")
    if np.linalg.norm(w) >= np.pi - UNIT_TOL:
        raise BranchPoint(f"‖y‖ = {np.linalg.norm(w)} is beyond the injectivity radius π")

    kind = flow.value if isinstance(flow, FlowConvention) else flow
    lhs = _flow(kind, v, t, oct_exp(w))
    rhs = oct_exp(exp_ad(builtin("octonion"), v, t) @ w)
    return float(np.linalg.norm(lhs.coefficients - rhs.coefficients))


def torus_trajectory(frequencies: Sequence[float], t_grid: Union[Sequence[float], np.ndarray]) -> Trajectory:
    """A synthetic curve on S⁷ winding around a torus with the given frequencies.

    Each frequency ω drives one rotation (cos ωt, sin ωt) in its own coordinate plane; the planes
    are weighted equally so that every point has unit norm. At most four frequencies fit in O.
    """
    if not 1 <= len(frequencies) <= 4:
        raise ValueError(f"Between 1 and 4 frequencies fit on S⁷, got {len(frequencies)}")
    t = np.asarray(t_grid, dtype=np.float64)
    points = np.zeros((len(t), 8))
    scale = 1.0 / np.sqrt(len(frequencies))
    for i, omega in enumerate(frequencies):
        points[:, 2 * i] = scale * np.cos(omega * t)
        points[:, 2 * i + 1] = scale * np.sin(omega * t)
    return Trajectory(times=t, points=points)
