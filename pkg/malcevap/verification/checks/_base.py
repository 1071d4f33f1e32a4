import abc
from typing import ClassVar, Optional

import numpy as np
from pydantic import BaseModel

from malcevap.algebra import BUILTIN_NAMES, AlgebraSpec, builtin, is_octonion
from malcevap.report import CheckResult, VerificationReport
from malcevap.types import VerbosityLevel
from malcevap.utils import DEFAULT_SEED


def builtin_name(alg: AlgebraSpec) -> Optional[str]:
    """The name of the builtin that `alg` equals, if any"""
    for name in BUILTIN_NAMES:
        ref = builtin(name)
        if (
            ref.dim == alg.dim
            and np.array_equal(ref.structure_constants, alg.structure_constants)
            and np.array_equal(ref.metric, alg.metric)
        ):
            return name
    return None


class BaseCheck(BaseModel, abc.ABC):
    """
    An invariant that the verification suite checks.

    Info: Reproducibility
        Like the suite itself, every check is serializable and uniquely identified by its `name`.
        Randomized checks draw from a generator seeded by the run, so that identical configurations
        measure identical values.

    Attributes:
        name: The name that uniquely identifies the check. This is used to serialize and deserialize the check.
        gated: Whether a failure fails the run. Set to False to only report the measurements.
    """

    name: str
    gated: bool = True

    octonion_only: ClassVar[bool] = False

    def applies_to(self, alg: AlgebraSpec) -> bool:
        return not self.octonion_only or is_octonion(alg)

    def result(self, passed: Optional[bool], message: str, **kwargs) -> CheckResult:
        return CheckResult(name=self.name, gated=self.gated, passed=passed, message=message, **kwargs)

    @staticmethod
    def log(report: Optional[VerificationReport], message: str):
        if report is not None:
            report.log(message)

    @abc.abstractmethod
    def run(
        self,
        alg: AlgebraSpec,
        seed: int = DEFAULT_SEED,
        report: Optional[VerificationReport] = None,
        verbosity: VerbosityLevel = VerbosityLevel.NORMAL,
    ) -> CheckResult:
        raise NotImplementedError

    def __call__(self, alg: AlgebraSpec, seed: int = DEFAULT_SEED) -> CheckResult:
        return self.run(alg, seed=seed)
