from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, List, Optional

import fsspec
import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, Field, model_validator
from scipy import sparse

from malcevap.errors import NegativeDegree, ParseError

SPHERE_AMBIENT_DIM = 8

CSV_COLUMNS = ["k", "lambda", "mult_oracle", "mult_paper", "mismatch"]


def _check_degree(k: int):
    if k < 0:
        raise NegativeDegree(f"Polynomial degrees are non-negative, got {k}")


def laplacian_eigenvalue(k: int, n: int = SPHERE_AMBIENT_DIM) -> int:
    """The eigenvalue k(k + n − 2) of the Laplacian on degree-k harmonics of S^{n−1}"""
    _check_degree(k)
    return k * (k + n - 2)


def _monomials(k: int, n: int) -> dict:
    return {m: i for i, m in enumerate(combinations_with_replacement(range(n), k))}


@lru_cache(maxsize=None)
def multiplicity_oracle(k: int, n: int = SPHERE_AMBIENT_DIM) -> int:
    """Dimension of the space of harmonic homogeneous polynomials of degree k in n variables.

    Builds the flat Laplacian from degree-k to degree-(k − 2) monomials and returns its kernel
    dimension by rank–nullity.
    """
    _check_degree(k)
    source = _monomials(k, n)
    if k < 2:
        return len(source)
    target = _monomials(k - 2, n)

    laplacian = sparse.lil_matrix((len(target), len(source)))
    for monomial, col in source.items():
        exponents = np.bincount(monomial, minlength=n)
        for var in range(n):
            e = exponents[var]
            if e < 2:
                continue
            reduced = list(monomial)
            reduced.remove(var)
            reduced.remove(var)
            laplacian[target[tuple(reduced)], col] += e * (e - 1)

    rank = np.linalg.matrix_rank(laplacian.toarray())
    return len(source) - int(rank)


def harmonic_dimension(k: int, n: int = SPHERE_AMBIENT_DIM) -> int:
    """Closed form C(k+n−1, n−1) − C(k+n−3, n−1) of the harmonic polynomial count"""
    _check_degree(k)
    return comb(k + n - 1, n - 1) - comb(k + n - 3, n - 1)


def paper_multiplicity(k: int) -> int:
    """The binomial expression C(k+6, 6) − C(k+4, 6) quoted for the multiplicities on S⁷"""
    _check_degree(k)
    return comb(k + 6, 6) - comb(k + 4, 6)


class LaplacianRow(BaseModel):
    """
    One eigenvalue of the Laplacian on S⁷.

    Attributes:
        k: The polynomial degree.
        lam: The eigenvalue k(k + 6).
        mult_oracle: The multiplicity counted from the polynomial Laplacian kernel.
        mult_paper: The multiplicity from the quoted binomial expression.
        mismatch: Whether the two multiplicities differ.
    """

    k: int = Field(..., ge=0)
    lam: int
    mult_oracle: int = Field(..., ge=1)
    mult_paper: int
    mismatch: bool

    @model_validator(mode="after")
    def _validate_row(self):
        if self.lam != laplacian_eigenvalue(self.k):
            raise ValueError(f"λ_{self.k} must be {laplacian_eigenvalue(self.k)}, got {self.lam}")
        if self.mismatch != (self.mult_oracle != self.mult_paper):
            raise ValueError(f"The mismatch flag of row k={self.k} disagrees with its multiplicities")
        return self


class LaplacianTable(BaseModel):
    """The eigenvalues of the Laplacian on S⁷ with both multiplicity counts"""

    rows: List[LaplacianRow]

    @property
    def k_max(self) -> int:
        return self.rows[-1].k

    def to_dataframe(self) -> pd.DataFrame:
        df = pd.DataFrame([row.model_dump() for row in self.rows])
        return df.rename(columns={"lam": "lambda"})[CSV_COLUMNS]

    def to_csv(self, path: Optional[str] = None) -> Optional[str]:
        """Writes the `k,lambda,mult_oracle,mult_paper,mismatch` CSV, or returns it when `path` is None"""
        if path is None:
            return self.to_dataframe().to_csv(index=False)
        with fsspec.open(path, "w") as fd:
            self.to_dataframe().to_csv(fd, index=False)

    @classmethod
    def from_csv(cls, path: str) -> "LaplacianTable":
        with fsspec.open(path, "r") as fd:
            df = pd.read_csv(fd)
        if list(df.columns) != CSV_COLUMNS:
            raise ParseError(f"Expected the columns {CSV_COLUMNS}, got {list(df.columns)}")
        columns = [df[name].tolist() for name in CSV_COLUMNS]
        rows = [
            LaplacianRow(k=k, lam=lam, mult_oracle=oracle, mult_paper=paper, mismatch=bool(mismatch))
            for k, lam, oracle, paper, mismatch in zip(*columns)
        ]
        return cls(rows=rows)


def laplacian_table(k_max: int) -> LaplacianTable:
    """Tabulates degrees 0 through `k_max`, flagging where the quoted multiplicity disagrees"""
    _check_degree(k_max)
    rows = []
    for k in range(k_max + 1):
        oracle, paper = multiplicity_oracle(k), paper_multiplicity(k)
        if oracle != paper:
            logger.warning(f"Multiplicity mismatch at k={k}: the harmonic count is {oracle}, the quoted formula gives {paper}")
        rows.append(
            LaplacianRow(k=k, lam=laplacian_eigenvalue(k), mult_oracle=oracle, mult_paper=paper, mismatch=oracle != paper)
        )
    return LaplacianTable(rows=rows)


def spectral_invariant(f: Callable[[float], float], k_max: int) -> float:
    """The truncated trace Σ_{k ≤ k_max} f(λ_k)·dim H_k of f applied to the Laplacian"""
    _check_degree(k_max)
    return float(sum(f(laplacian_eigenvalue(k)) * multiplicity_oracle(k) for k in range(k_max + 1)))
