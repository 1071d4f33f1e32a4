import sys
from typing import Optional, Sequence, Union

import fsspec
import numpy as np

from malcevap.errors import DimensionMismatch, ParseError

DEFAULT_SEED = 1729


def frozen_array(value, ndim: Optional[int] = None, name: str = "array") -> np.ndarray:
    """Convert to a read-only float64 array, rejecting non-finite entries"""
    arr = np.array(value, dtype=np.float64)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def as_vector(x: Union[Sequence[float], np.ndarray], dim: int, name: str = "vector") -> np.ndarray:
    """Cast to a 1D float array of length `dim`"""
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape != (dim,):
        raise DimensionMismatch(f"{name} must have shape ({dim},), got {arr.shape}")
    return arr


def parse_coefficients(spec: str, dim: Optional[int] = None) -> np.ndarray:
    """Parse a comma-separated coefficient list such as `1,0,0,0,0,0,0`.

    Args:
        spec: The comma-separated coefficients.
        dim: If set, the number of coefficients that must be present.
    """
    try:
        values = [float(v) for v in spec.split(",") if v.strip() != ""]
    except ValueError as e:
        raise ParseError(f"Malformed coefficient list '{spec}': {e}") from e
    if len(values) == 0:
        raise ParseError("Empty coefficient list")
    if dim is not None and len(values) != dim:
        raise ParseError(f"Expected {dim} coefficients, got {len(values)} in '{spec}'")
    return np.array(values)


def random_unit_vectors(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """Draw `n` vectors uniformly from the Euclidean unit sphere in `dim` dimensions"""
    v = rng.standard_normal((n, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def write_text(text: str, path: Optional[str]):
    """Write to a fsspec-compatible path, or to stdout when `path` is None"""
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with fsspec.open(path, "w") as fd:
        fd.write(text)


def read_text(path: str) -> str:
    """Read a fsspec-compatible path"""
    with fsspec.open(path, "r") as fd:
        return fd.read()
