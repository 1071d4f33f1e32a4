from itertools import combinations
from typing import Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from malcevap.algebra import (
    FULL_COMMUTATOR_FACTOR,
    AlgebraSpec,
    Octonion,
    bracket,
    builtin,
    defect_S,
    jacobian,
    left_multiplication_matrix,
    right_multiplication_matrix,
    scaled,
)
from malcevap.errors import UnknownConvention
from malcevap.types import ActionConvention, LinOp, Vector
from malcevap.utils import frozen_array

# Coordinates of span(1, e₁, e₂, e₄) = H inside O
QUATERNION_INDICES = [0, 1, 2, 4]

# The values quoted for the octonion action, compared against but never asserted
REFERENCE_T_NORM = 2.0
REFERENCE_STRUCTURAL_CONSTANT = 1.0


class EigenspaceAction(BaseModel):
    """
    The action π of a tangent Malcev algebra on the degree-1 eigenspace of the sphere Laplacian.

    Degree-1 eigenfunctions are restrictions of linear functionals on the ambient space, so π(e_i)
    acts on their coefficient vectors by the transpose of a translation-multiplication matrix.

    Attributes:
        dim: The dimension of the eigenspace, 8 on S⁷ and 4 on S³.
        generators: The `(n, dim, dim)` stack π(e₁), ..., π(e_n).
        convention: The vector-field side and bracket normalization in force.
        tangent: The tangent algebra with its ½-commutator bracket. Its defect S is the reference
            for the structural constant.
    """

    dim: int
    generators: np.ndarray
    convention: ActionConvention
    tangent: AlgebraSpec

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("generators", mode="before")
    def _validate_generators(cls, value):
        return frozen_array(value, ndim=3, name="generators")

    @model_validator(mode="after")
    def _validate_model(self):
        n, d = self.tangent.dim, self.dim
        if self.generators.shape != (n, d, d):
            raise ValueError(f"generators must have shape {(n, d, d)}, got {self.generators.shape}")
        if np.any(self.generators + self.generators.transpose(0, 2, 1) != 0):
            raise ValueError("Every generator must be skew-symmetric")
        casimir = -np.einsum("iab,ibc->ac", self.generators, self.generators)
        if not np.allclose(casimir, casimir[0, 0] * np.eye(d), rtol=0.0, atol=1e-12):
            raise ValueError("The Casimir operator must be scalar")
        return self

    @field_serializer("generators")
    def _serialize_generators(self, value: np.ndarray):
        return value.tolist()

    @property
    def bracket_factor(self) -> float:
        """How the bracket used by π relates to the ½-commutator of the tangent algebra"""
        if self.convention is ActionConvention.STANDARD_RIGHT:
            return FULL_COMMUTATOR_FACTOR
        return 1.0

    @property
    def algebra(self) -> AlgebraSpec:
        """The tangent algebra with the bracket that π is compared against"""
        if self.bracket_factor == 1.0:
            return self.tangent
        return scaled(self.tangent, self.bracket_factor, name=f"{self.tangent.name}-full")

    def pi(self, x: Vector) -> LinOp:
        """The operator π(x) = Σ x_i π(e_i)"""
        return np.einsum("i,ijk->jk", np.asarray(x, dtype=np.float64), self.generators)


def _convention(convention: Union[str, ActionConvention]) -> ActionConvention:
    try:
        return ActionConvention(convention)
    except ValueError as e:
        valid = [c.value for c in ActionConvention]
        raise UnknownConvention(f"Unknown action convention '{convention}'. Choose from {valid}") from e


def _translation_generators(convention: ActionConvention, units: range) -> np.ndarray:
    if convention is ActionConvention.STANDARD_RIGHT:
        mats = [right_multiplication_matrix(Octonion.basis(i)).T for i in units]
    else:
        mats = [left_multiplication_matrix(Octonion.basis(i)).T for i in units]
    return np.stack(mats)


def build_action(convention: Union[str, ActionConvention] = ActionConvention.STANDARD_RIGHT) -> EigenspaceAction:
    """The action of Im(O) on the degree-1 harmonics of S⁷.

    Under `standard-right` the vector fields come from right translations and are compared with the
    full commutator xy - yx. Under `paper-left` they come from left translations and are compared
    with the ½-commutator.

    Raises:
        UnknownConvention: `convention` is not one of the documented labels.
    """
    convention = _convention(convention)
    generators = _translation_generators(convention, range(1, 8))
    return EigenspaceAction(dim=8, generators=generators, convention=convention, tangent=builtin("octonion"))


def quaternion_action(convention: Union[str, ActionConvention] = ActionConvention.STANDARD_RIGHT) -> EigenspaceAction:
    """The associative calibration: Im(H) acting on the degree-1 harmonics of S³ ⊂ H"""
    convention = _convention(convention)
    full = _translation_generators(convention, range(8))
    units = QUATERNION_INDICES[1:]
    generators = np.stack([full[i][np.ix_(QUATERNION_INDICES, QUATERNION_INDICES)] for i in units])
    return EigenspaceAction(dim=4, generators=generators, convention=convention, tangent=builtin("im_quaternion"))


def casimir_check(action: EigenspaceAction) -> LinOp:
    """The Casimir operator −Σ π(e_i)², which equals λ₁·I on the degree-1 eigenspace"""
    return -np.einsum("iab,ibc->ac", action.generators, action.generators)


def defect_T(action: EigenspaceAction, x: Vector, y: Vector) -> LinOp:
    """The representation defect T(x, y) = [π(x), π(y)] − π([x, y])"""
    px, py = action.pi(x), action.pi(y)
    return px @ py - py @ px - action.pi(bracket(action.algebra, x, y))


def delta_T(action: EigenspaceAction, x: Vector, y: Vector, z: Vector) -> LinOp:
    """The coboundary of T.

    (δT)(x, y, z) = [π(x), T(y, z)] + [π(y), T(z, x)] + [π(z), T(x, y)]
                    − T([x, y], z) − T([y, z], x) − T([z, x], y)

    It equals π(J(x, y, z)) for any linear π, with J taken in `action.algebra`.
    """
    alg = action.algebra
    out = np.zeros((action.dim, action.dim))
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        pa = action.pi(a)
        t = defect_T(action, b, c)
        out += pa @ t - t @ pa
        out -= defect_T(action, bracket(alg, a, b), c)
    return out


def pi_jacobian(action: EigenspaceAction, x: Vector, y: Vector, z: Vector) -> LinOp:
    """π(J(x, y, z)), the right-hand side of the coboundary identity"""
    return action.pi(jacobian(action.algebra, x, y, z))


def defect_ratio(action: EigenspaceAction, x: Vector, y: Vector) -> float:
    """‖T(x, y)‖ / ‖S(x, y)‖ in operator norms; 0 when both vanish"""
    t = float(np.linalg.norm(defect_T(action, x, y), ord=2))
    s = float(np.linalg.norm(defect_S(action.tangent, x, y), ord=2))
    if s <= 1e-12:
        return 0.0 if t <= 1e-12 else float("inf")
    return t / s


def structural_constant(action: EigenspaceAction) -> float:
    """The smallest C with ‖T(e_i, e_j)‖ ≤ C‖S(e_i, e_j)‖ on all basis pairs.

    Algebras with S ≡ 0 report 0, whatever T is.
    """
    n = action.tangent.dim
    eye = np.eye(n)
    pairs = list(combinations(range(n), 2))
    if all(np.max(np.abs(defect_S(action.tangent, eye[i], eye[j])), initial=0.0) <= 1e-12 for i, j in pairs):
        logger.debug(f"S vanishes on '{action.tangent.name}', the structural constant is 0 by convention")
        return 0.0

    ratios = [defect_ratio(action, eye[i], eye[j]) for i, j in pairs]
    constant = max(ratios, default=0.0)
    if action.tangent.name == "octonion" and not np.isclose(constant, REFERENCE_STRUCTURAL_CONSTANT):
        logger.debug(
            f"Structural constant {constant:.6g} under '{action.convention.value}' "
            f"differs from the reference value {REFERENCE_STRUCTURAL_CONSTANT}"
        )
    return constant
