from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from malcevap.algebra import FULL_COMMUTATOR_FACTOR, AlgebraSpec, bracket, builtin, oct_mul, scaled, vector_norm
from malcevap.dynamics import oct_exp, oct_log
from malcevap.errors import UnsupportedOrder
from malcevap.types import Vector

MAX_ORDER = 6

Words = Dict[str, Fraction]


def _truncated_product(a: Words, b: Words, order: int) -> Words:
    out: Words = defaultdict(Fraction)
    for u, cu in a.items():
        for v, cv in b.items():
            if len(u) + len(v) <= order:
                out[u + v] += cu * cv
    return out


def log_words(order: int) -> Words:
    """Exact coefficients of the words in x, y of log(e^x e^y), through degree `order`.

    Expands log(1 + W) = Σ (-1)^{k+1} W^k / k with W = e^x e^y - 1 in the free associative algebra.
    """
    increment: Words = {
        "x" * p + "y" * q: Fraction(1, factorial(p) * factorial(q))
        for p in range(order + 1)
        for q in range(order + 1 - p)
        if p + q > 0
    }
    log: Words = defaultdict(Fraction)
    power: Words = {"": Fraction(1)}
    for k in range(1, order + 1):
        power = _truncated_product(power, increment, order)
        for word, coeff in power.items():
            log[word] += Fraction((-1) ** (k + 1), k) * coeff
    return dict(log)


def dynkin_table(order: int = MAX_ORDER) -> Dict[int, List[Tuple[Fraction, str]]]:
    """Homogeneous BCH components as weighted right-nested commutators.

    A degree n component P = Σ c_w w is a Lie polynomial, so P = (1/n) Σ c_w [w₁, [w₂, ..., wₙ]].
    Words whose bracket vanishes identically are dropped.
    """
    table: Dict[int, List[Tuple[Fraction, str]]] = {n: [] for n in range(1, order + 1)}
    for word, coeff in sorted(log_words(order).items()):
        n = len(word)
        if coeff == 0 or (n > 1 and word[-1] == word[-2]):
            continue
        table[n].append((coeff / n, word))
    return table


# A word (a, b, ..., y, z) stands for [a, [b, ..., [y, z]]], evaluated with the full commutator xy - yx.
# The identity behind the table holds in any associative algebra, and two octonions generate one.
BCH_TABLE = dynkin_table(MAX_ORDER)


class BchConfig(BaseModel):
    """
    Parameters of the BCH convergence predicate B(‖x‖ + ‖y‖) < 1/(4K).

    Attributes:
        order: The truncation order.
        B: The continuity constant of the bracket, ‖[x, y]‖ ≤ B‖x‖‖y‖. The full octonion commutator has B = 2.
        K: A bound on the absolute values of the BCH coefficients.
    """

    order: int = Field(MAX_ORDER, ge=1, le=MAX_ORDER)
    B: float = Field(FULL_COMMUTATOR_FACTOR, gt=0)
    K: float = Field(1.0, ge=1)

    @property
    def bound(self) -> float:
        """The right-hand side 1/(4K)"""
        return 1.0 / (4.0 * self.K)

    @property
    def radius(self) -> float:
        """The largest admissible ‖x‖ + ‖y‖, 1/(4KB)"""
        return self.bound / self.B


@lru_cache(maxsize=None)
def full_commutator_algebra() -> AlgebraSpec:
    """Im(O) with the full commutator xy - yx as bracket"""
    return scaled(builtin("octonion"), FULL_COMMUTATOR_FACTOR, name="octonion-full")


def _nested(alg: AlgebraSpec, word: str, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    letters = {"x": x, "y": y}
    out = letters[word[-1]]
    for letter in reversed(word[:-1]):
        out = bracket(alg, letters[letter], out)
    return out


def bch_terms(x: Vector, y: Vector, order: int, alg: Optional[AlgebraSpec] = None) -> List[np.ndarray]:
    """The homogeneous BCH components of degree 1 through `order`.

    Args:
        x: The first element.
        y: The second element.
        order: The highest degree, at most 6.
        alg: The bracket to expand with. Defaults to the full octonion commutator.

    Raises:
        UnsupportedOrder: `order` is outside [1, 6].
    """
    if not 1 <= order <= MAX_ORDER:
        raise UnsupportedOrder(f"BCH coefficients are tabulated for orders 1 to {MAX_ORDER}, got {order}")
    alg = full_commutator_algebra() if alg is None else alg
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return [
        sum(float(coeff) * _nested(alg, word, x, y) for coeff, word in BCH_TABLE[degree])
        for degree in range(1, order + 1)
    ]


def bch_truncated(x: Vector, y: Vector, order: int, alg: Optional[AlgebraSpec] = None) -> Vector:
    """The BCH series log(e^x e^y) truncated after degree `order`"""
    return sum(bch_terms(x, y, order, alg=alg))


def bch_radius_ok(cfg: BchConfig, x: Vector, y: Vector) -> bool:
    """Whether B(‖x‖ + ‖y‖) < 1/(4K) holds strictly"""
    alg = full_commutator_algebra()
    return cfg.B * (vector_norm(alg, x) + vector_norm(alg, y)) < cfg.bound


def bch_error(x: Vector, y: Vector, order: int) -> float:
    """Distance between log(exp(x)·exp(y)) in the unit octonions and the truncated series

    Raises:
        BranchPoint: The product is too close to -1 for the logarithm.
    """
    exact = oct_log(oct_mul(oct_exp(x), oct_exp(y))).imaginary
    return float(np.linalg.norm(exact - bch_truncated(x, y, order)))


def bch_scaling(x: Vector, y: Vector, order: int, scales: Sequence[float] = (0.1,)) -> List[float]:
    """Convergence-order slopes log₂(error(s) / error(s/2)) of the truncation at each scale s.

    The truncation error at order k is O(s^{k+1}), so slopes should approach at least k + 1.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    slopes = []
    for s in scales:
        coarse = bch_error(s * x, s * y, order)
        fine = bch_error(0.5 * s * x, 0.5 * s * y, order)
        slopes.append(float(np.log2(coarse / fine)) if fine > 0 else float("inf"))
    return slopes


class BchSummary(BaseModel):
    """
    The truncation error of one BCH evaluation.

    Attributes:
        order: The truncation order.
        error: ‖log(exp(x)·exp(y)) − BCH_order(x, y)‖.
        radius_ok: Whether (x, y) lies inside the convergence radius.
        bound: The right-hand side 1/(4K) of the radius condition.
        slopes: Convergence-order slopes at the requested scales, if any.
    """

    order: int = Field(..., ge=1, le=MAX_ORDER)
    error: float = Field(..., ge=0)
    radius_ok: bool
    bound: float = Field(..., gt=0)
    slopes: Optional[List[float]] = None


def bch_summary(
    x: Vector, y: Vector, cfg: Optional[BchConfig] = None, scales: Optional[Sequence[float]] = None
) -> BchSummary:
    """Evaluates the truncation at `cfg.order`, with the scaling slopes if `scales` is given"""
    cfg = BchConfig() if cfg is None else cfg
    return BchSummary(
        order=cfg.order,
        error=bch_error(x, y, cfg.order),
        radius_ok=bch_radius_ok(cfg, x, y),
        bound=cfg.bound,
        slopes=None if scales is None else bch_scaling(x, y, cfg.order, scales=scales),
    )
