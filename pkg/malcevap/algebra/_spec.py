import json
from functools import lru_cache
from typing import List, Optional, Tuple

import fsspec
import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_serializer, field_validator, model_validator

from malcevap.algebra._octonion import MULTIPLICATION_TABLE
from malcevap.errors import AntisymmetryViolation, ParseError
from malcevap.utils import frozen_array

# The builtin octonion algebra uses [x, y] = ½(xy - yx). Modules that need the full commutator
# xy - yx (BCH, translation vector fields) rescale by this factor and nowhere else.
FULL_COMMUTATOR_FACTOR = 2.0

MAX_DIM = 64

BUILTIN_NAMES = ("octonion", "su2", "im_quaternion", "m3", "sl2")


class AlgebraSpec(BaseModel):
    """
    A finite-dimensional anti-commutative algebra given by structure constants.

    The bracket of two basis elements is `[e_i, e_j] = sum_k c[i, j, k] e_k`. Anti-symmetry of the
    constants is validated on construction. Custom algebras are not required to satisfy the Malcev
    identity; see [`malcevap.algebra.malcev_residual`][] to classify them.

    Attributes:
        name: A human readable identifier. Builtins use the names in `BUILTIN_NAMES`.
        dim: The dimension of the algebra.
        structure_constants: The `(dim, dim, dim)` tensor c.
        metric: A symmetric positive-definite `(dim, dim)` Gram matrix. Defaults to the identity.
    """

    name: str
    dim: int = Field(..., gt=0, le=MAX_DIM)
    structure_constants: np.ndarray
    metric: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="before")
    @classmethod
    def _default_metric(cls, data):
        if isinstance(data, dict) and data.get("metric") is None and "dim" in data:
            data = {**data, "metric": np.eye(int(data["dim"]))}
        return data

    @field_validator("structure_constants", mode="before")
    def _validate_structure_constants(cls, value):
        return frozen_array(value, ndim=3, name="structure_constants")

    @field_validator("metric", mode="before")
    def _validate_metric(cls, value):
        return frozen_array(value, ndim=2, name="metric")

    @model_validator(mode="after")
    def _validate_model(self):
        d = self.dim
        if self.structure_constants.shape != (d, d, d):
            raise ValueError(f"structure_constants must have shape {(d, d, d)}, got {self.structure_constants.shape}")
        if self.metric.shape != (d, d):
            raise ValueError(f"metric must have shape {(d, d)}, got {self.metric.shape}")
        if not np.allclose(self.metric, self.metric.T, rtol=0.0, atol=1e-12):
            raise ValueError("metric must be symmetric")
        try:
            np.linalg.cholesky(self.metric)
        except np.linalg.LinAlgError:
            raise ValueError("metric must be positive definite")

        c = self.structure_constants
        bad = np.argwhere(np.abs(c + c.transpose(1, 0, 2)) > 1e-12)
        if len(bad) > 0:
            raise AntisymmetryViolation(tuple(int(v) for v in t) for t in bad if t[0] <= t[1])
        return self

    @field_serializer("structure_constants", "metric")
    def _serialize_array(self, value: np.ndarray):
        return value.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (
            self.name == other.name
            and np.array_equal(self.structure_constants, other.structure_constants)
            and np.array_equal(self.metric, other.metric)
        )

    def __hash__(self) -> int:
        return hash((self.name, self.structure_constants.tobytes(), self.metric.tobytes()))

    def basis(self, i: int) -> np.ndarray:
        """The i-th basis vector e_i (zero-based)"""
        e = np.zeros(self.dim)
        e[i] = 1.0
        return e

    def to_json(self, path: str):
        """Saves the algebra in the bracket-entry file format read by [`load_algebra`][malcevap.algebra.load_algebra].

        Args:
            path: The destination to save to.
        """
        entries = [[int(i), int(j), int(k), float(self.structure_constants[i, j, k])] for i, j, k in np.argwhere(self.structure_constants != 0)]
        data = {"name": self.name, "dim": self.dim, "bracket": entries}
        if not np.array_equal(self.metric, np.eye(self.dim)):
            data["metric"] = self.metric.tolist()
        with fsspec.open(path, "w") as f:
            json.dump(data, f)


class _AlgebraFile(BaseModel):
    """Schema of the algebra file format"""

    name: str
    dim: int = Field(..., gt=0, le=MAX_DIM)
    bracket: List[Tuple[int, int, int, float]] = Field(default_factory=list)
    metric: Optional[List[List[float]]] = None


def load_algebra(path: str) -> AlgebraSpec:
    """Loads an algebra from a JSON file.

    The file lists non-zero structure constants as zero-based `[i, j, k, coeff]` entries.
    Nothing is symmetrized: both `(i, j)` and `(j, i)` entries must be given.

    Args:
        path: The path to load from.

    Raises:
        ParseError: The file is not valid JSON or does not match the schema.
        AntisymmetryViolation: The entries violate c[i][j][k] = -c[j][i][k].
    """
    try:
        with fsspec.open(path, "r") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e
    except FileNotFoundError as e:
        raise ParseError(f"No algebra file at {path}") from e

    try:
        data = _AlgebraFile.model_validate(raw)
    except ValidationError as e:
        raise ParseError(f"{path} does not match the algebra file schema: {e}") from e

    c = np.zeros((data.dim, data.dim, data.dim))
    seen = set()
    for i, j, k, coeff in data.bracket:
        if not all(0 <= v < data.dim for v in (i, j, k)):
            raise ParseError(f"Bracket entry {[i, j, k]} is out of range for dim {data.dim}")
        if (i, j, k) in seen:
            raise ParseError(f"Duplicate bracket entry {[i, j, k]}")
        seen.add((i, j, k))
        c[i, j, k] = coeff

    try:
        alg = AlgebraSpec(name=data.name, dim=data.dim, structure_constants=c, metric=data.metric)
    except ValidationError as e:
        raise ParseError(f"{path} does not define a valid algebra: {e}") from e

    logger.debug(f"Loaded algebra '{alg.name}' of dimension {alg.dim} from {path}")
    return alg


def _half_commutator(table: np.ndarray) -> np.ndarray:
    return 0.5 * (table - table.transpose(1, 0, 2))


def _octonion() -> AlgebraSpec:
    imag = MULTIPLICATION_TABLE[1:, 1:, 1:]
    return AlgebraSpec(name="octonion", dim=7, structure_constants=_half_commutator(imag))


def _im_quaternion() -> AlgebraSpec:
    # e_1, e_2, e_4 span the imaginary quaternions inside Im(O)
    idx = [1, 2, 4]
    imag = MULTIPLICATION_TABLE[np.ix_(idx, idx, idx)]
    return AlgebraSpec(name="im_quaternion", dim=3, structure_constants=_half_commutator(imag))


def _su2() -> AlgebraSpec:
    c = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i, j, k] = 1.0
        c[j, i, k] = -1.0
    return AlgebraSpec(name="su2", dim=3, structure_constants=c)


def _sl2_constants() -> np.ndarray:
    # basis (h, e, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h
    h, e, f = 0, 1, 2
    c = np.zeros((3, 3, 3))
    for i, j, k, v in ((h, e, e, 2.0), (h, f, f, -2.0), (e, f, h, 1.0)):
        c[i, j, k] = v
        c[j, i, k] = -v
    return c


def _sl2() -> AlgebraSpec:
    return AlgebraSpec(name="sl2", dim=3, structure_constants=_sl2_constants())


def _m3() -> AlgebraSpec:
    # sl(2, R) with the bracket scaled by 3/2
    return AlgebraSpec(name="m3", dim=3, structure_constants=1.5 * _sl2_constants())


_BUILTINS = {
    "octonion": _octonion,
    "su2": _su2,
    "im_quaternion": _im_quaternion,
    "m3": _m3,
    "sl2": _sl2,
}


@lru_cache(maxsize=None)
def builtin(name: str) -> AlgebraSpec:
    """Returns a builtin algebra.

    Available names:

    - `octonion`: Im(O) with the ½-commutator bracket, basis e₁..e₇.
    - `su2`: the cross-product algebra, [e_i, e_j] = ε_ijk e_k.
    - `im_quaternion`: Im(H) = span(e₁, e₂, e₄) ⊂ Im(O) with the ½-commutator bracket.
    - `sl2`: sl(2, R) in the basis (h, e, f).
    - `m3`: sl(2, R) with the bracket scaled by 3/2.
    """
    if name not in _BUILTINS:
        raise ParseError(f"Unknown builtin algebra '{name}'. Choose from {list(_BUILTINS)}")
    return _BUILTINS[name]()


def resolve_algebra(name_or_path: str) -> AlgebraSpec:
    """Returns the builtin with that name, or loads the algebra file at that path"""
    if name_or_path in _BUILTINS:
        return builtin(name_or_path)
    return load_algebra(name_or_path)


def scaled(alg: AlgebraSpec, factor: float, name: Optional[str] = None) -> AlgebraSpec:
    """The same algebra with every bracket multiplied by `factor`"""
    return AlgebraSpec(
        name=name or f"{alg.name}*{factor:g}",
        dim=alg.dim,
        structure_constants=factor * alg.structure_constants,
        metric=alg.metric,
    )


def is_octonion(alg: AlgebraSpec) -> bool:
    """Whether `alg` has exactly the structure constants and metric of the octonion builtin"""
    ref = builtin("octonion")
    return alg.dim == ref.dim and np.array_equal(alg.structure_constants, ref.structure_constants) and np.array_equal(alg.metric, ref.metric)


