import json
from typing import Annotated, List, Optional, Union

import fsspec
from loguru import logger
from pydantic import BaseModel, Field, field_serializer, field_validator
from tqdm import tqdm

from malcevap.algebra import AlgebraSpec, resolve_algebra
from malcevap.report import CheckResult, VerificationReport
from malcevap.types import VerbosityLevel
from malcevap.utils import DEFAULT_SEED
from malcevap.verification.checks import (
    AdjointSpectrumCheck,
    AlmostPeriodicityCheck,
    BaseCheck,
    BchCheck,
    CasimirCheck,
    CoboundaryCheck,
    CommutatorDefectCheck,
    ConjugationIdentityCheck,
    DefectNormCheck,
    LaplacianCheck,
    MalcevIdentityCheck,
    PeriodicityCheck,
    ResolventCheck,
    StructuralDefectCheck,
)


class Verifier(BaseModel):
    """
    A verifier is a serializable suite of invariant checks that are run against an algebra.

    Attributes:
        checks: Ordered list of checks to run.
        algebra: A builtin algebra name or a path to an algebra file.
        seed: The seed of every randomized check.
        tol: If set, overrides the spectrum grouping tolerance of the checks that have one.
        reproducible: Omit the time stamp from the report, so that identical configurations
            produce byte-identical reports.
        verbosity: Verbosity level for logging.
    """

    # To know which check object to create, we need a discriminated union
    # over all subclasses. See https://github.com/pydantic/pydantic/issues/2200
    checks: List[
        Annotated[
            Union[tuple(BaseCheck.__subclasses__())],  # type: ignore
            Field(..., discriminator="name"),
        ]
    ]

    algebra: str = "octonion"
    seed: int = DEFAULT_SEED
    tol: Optional[float] = Field(None, gt=0)
    reproducible: bool = False
    verbosity: VerbosityLevel = VerbosityLevel.NORMAL

    @field_validator("verbosity", mode="before")
    def _validate_verbosity(cls, v):
        if isinstance(v, VerbosityLevel):
            return v
        if isinstance(v, int):
            return VerbosityLevel(v)
        try:
            return VerbosityLevel[str(v).upper()]
        except KeyError:
            raise ValueError(f"Unknown verbosity '{v}'. Choose from {[level.name for level in VerbosityLevel]}")

    @field_serializer("verbosity")
    def _serialize_verbosity(self, value: VerbosityLevel):
        return value.name

    @classmethod
    def default(cls, **kwargs) -> "Verifier":
        """The full suite of checks in their documented configuration"""
        checks = [
            MalcevIdentityCheck(),
            CommutatorDefectCheck(),
            DefectNormCheck(),
            AdjointSpectrumCheck(),
            AlmostPeriodicityCheck(),
            PeriodicityCheck(),
            ConjugationIdentityCheck(),
            CasimirCheck(),
            CoboundaryCheck(),
            BchCheck(),
            LaplacianCheck(),
            StructuralDefectCheck(),
            ResolventCheck(),
        ]
        return cls(checks=checks, **kwargs)

    def _configured(self, check: BaseCheck) -> BaseCheck:
        if self.tol is not None and "tol" in type(check).model_fields:
            return check.model_copy(update={"tol": self.tol})
        return check

    def verify(self, alg: Optional[AlgebraSpec] = None) -> VerificationReport:
        """Runs every check.

        Args:
            alg: The algebra to verify. If None, `self.algebra` is resolved.

        Returns:
            A report with one section per check.
        """
        if alg is None:
            alg = resolve_algebra(self.algebra)

        report = VerificationReport(algebra=alg.name, seed=self.seed)
        if self.reproducible:
            report.time_stamp = None

        check: BaseCheck
        for check in tqdm(self.checks, desc="Verifying", disable=self.verbosity < VerbosityLevel.VERBOSE):
            with report.section(check.name):
                if not check.applies_to(alg):
                    logger.info(f"Skipping {check.name}: it only applies to the octonions")
                    report.log_result(
                        CheckResult(name=check.name, gated=check.gated, skipped=True, message="octonion only")
                    )
                    continue

                logger.info(f"Running check: {check.name}")
                result = self._configured(check).run(alg, seed=self.seed, report=report, verbosity=self.verbosity)
                logger.debug(f"{check.name}: {result.measured}")
                report.log_result(result)

        return report

    def __call__(self, alg: Optional[AlgebraSpec] = None) -> VerificationReport:
        return self.verify(alg)

    @classmethod
    def from_json(cls, path: str):
        """Loads a verification suite from a JSON file.

        Args:
            path: The path to load from
        """
        with fsspec.open(path, "r") as f:
            data = json.load(f)
        return cls(**data)

    def to_json(self, path: str):
        """Saves the verification suite to a JSON file.

        Args:
            path: The destination to save to.
        """
        with fsspec.open(path, "w") as f:
            json.dump(self.model_dump(mode="json"), f)
