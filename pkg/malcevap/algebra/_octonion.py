from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator

from malcevap.errors import DimensionMismatch, ZeroDivisor
from malcevap.utils import frozen_array

# Oriented lines of the Fano plane. For each triple (i, j, k): e_i e_j = e_k, and cyclically
# e_j e_k = e_i, e_k e_i = e_j; reversing the order flips the sign. The table is consistent with
# [e_1, e_2] = e_4, [e_2, e_4] = e_1 and [e_4, e_1] = e_2.
FANO_TRIPLES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


def _multiplication_table() -> np.ndarray:
    table = np.zeros((8, 8, 8))
    table[0, :, :] = np.eye(8)
    table[:, 0, :] = np.eye(8)
    for i in range(1, 8):
        table[i, i, 0] = -1.0
    for i, j, k in FANO_TRIPLES:
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            table[a, b, c] = 1.0
            table[b, a, c] = -1.0
    table.setflags(write=False)
    return table


# e_i e_j = sum_k MULTIPLICATION_TABLE[i, j, k] e_k
MULTIPLICATION_TABLE = _multiplication_table()


def mul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Octonion product on raw coefficient arrays. Broadcasts over leading axes."""
    return np.einsum("...i,...j,ijk->...k", a, b, MULTIPLICATION_TABLE)


def conj_arrays(a: np.ndarray) -> np.ndarray:
    """Octonion conjugate on raw coefficient arrays. Broadcasts over leading axes."""
    out = -np.asarray(a, dtype=np.float64)
    out[..., 0] *= -1
    return out


class Octonion(BaseModel):
    """
    A real octonion c₀ + c₁e₁ + ... + c₇e₇.

    Values are immutable. Arithmetic operators are provided for convenience:
    `a * b` is the (non-associative) octonion product, `a + b`, `a - b`, `-a` and
    scalar multiplication act on coefficients.

    Attributes:
        coefficients: The 8 real coefficients; index 0 is the real part.
    """

    coefficients: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("coefficients", mode="before")
    def _validate_coefficients(cls, value):
        arr = frozen_array(value, ndim=1, name="coefficients")
        if arr.shape != (8,):
            raise ValueError(f"An octonion has 8 coefficients, got {arr.shape[0]}")
        return arr

    @field_serializer("coefficients")
    def _serialize_coefficients(self, value: np.ndarray):
        return value.tolist()

    @classmethod
    def basis(cls, i: int) -> "Octonion":
        """The basis element e_i, with e_0 = 1"""
        c = np.zeros(8)
        c[i] = 1.0
        return cls(coefficients=c)

    @classmethod
    def from_imaginary(cls, v: Union[Sequence[float], np.ndarray]) -> "Octonion":
        """Embed a 7-vector over e₁..e₇ as a purely imaginary octonion"""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (7,):
            raise DimensionMismatch(f"An imaginary part has 7 coefficients, got shape {v.shape}")
        return cls(coefficients=np.concatenate([[0.0], v]))

    @property
    def real(self) -> float:
        return float(self.coefficients[0])

    @property
    def imaginary(self) -> np.ndarray:
        """The coefficients of e₁..e₇"""
        return self.coefficients[1:].copy()

    def conj(self) -> "Octonion":
        return oct_conj(self)

    def norm(self) -> float:
        return oct_norm(self)

    def inverse(self) -> "Octonion":
        return oct_inverse(self)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        if np.isscalar(other):
            return Octonion(coefficients=self.coefficients * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Octonion(coefficients=self.coefficients * other)
        return NotImplemented

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(coefficients=self.coefficients + other.coefficients)

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(coefficients=self.coefficients - other.coefficients)

    def __neg__(self) -> "Octonion":
        return Octonion(coefficients=-self.coefficients)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Octonion):
            return NotImplemented
        return bool(np.array_equal(self.coefficients, other.coefficients))

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients.tolist()))

    def allclose(self, other: "Octonion", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.coefficients, other.coefficients, rtol=0.0, atol=atol))


ONE = Octonion.basis(0)


def oct_mul(a: Octonion, b: Octonion) -> Octonion:
    """The octonion product a·b, read off the Fano-plane table"""
    return Octonion(coefficients=mul_arrays(a.coefficients, b.coefficients))


def oct_conj(a: Octonion) -> Octonion:
    """Conjugation: negates the imaginary part"""
    return Octonion(coefficients=conj_arrays(a.coefficients))


def oct_norm(a: Octonion) -> float:
    """Euclidean norm, the square root of a·conj(a)"""
    return float(np.linalg.norm(a.coefficients))


def oct_inner(a: Octonion, b: Octonion) -> float:
    """The inner product Re(a·conj(b))"""
    return float(np.dot(a.coefficients, b.coefficients))


def oct_inverse(a: Octonion) -> Octonion:
    """The two-sided inverse conj(a) / |a|²"""
    norm_sq = float(np.dot(a.coefficients, a.coefficients))
    if norm_sq == 0.0:
        raise ZeroDivisor("The zero octonion has no inverse")
    return Octonion(coefficients=conj_arrays(a.coefficients) / norm_sq)


def associator(a: Octonion, b: Octonion, c: Octonion) -> Octonion:
    """The associator (a, b, c) = (ab)c - a(bc); alternating in its arguments"""
    return oct_mul(oct_mul(a, b), c) - oct_mul(a, oct_mul(b, c))


def left_multiplication_matrix(a: Union[Octonion, np.ndarray]) -> np.ndarray:
    """Matrix of v ↦ a·v on coefficient vectors"""
    c = a.coefficients if isinstance(a, Octonion) else np.asarray(a, dtype=np.float64)
    return np.einsum("i,ijk->kj", c, MULTIPLICATION_TABLE)


def right_multiplication_matrix(a: Union[Octonion, np.ndarray]) -> np.ndarray:
    """Matrix of v ↦ v·a on coefficient vectors"""
    c = a.coefficients if isinstance(a, Octonion) else np.asarray(a, dtype=np.float64)
    return np.einsum("j,ijk->ki", c, MULTIPLICATION_TABLE)
