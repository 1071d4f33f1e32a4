import json
from contextlib import contextmanager
from datetime import datetime
from typing import Any, Dict, List, Optional

import fsspec
from pydantic import BaseModel, Field, PrivateAttr

from malcevap import __version__


class CheckResult(BaseModel):
    """
    The outcome of a single invariant check.

    Attributes:
        name: The name of the check.
        gated: Whether a failure fails the verification run. Diagnostics are never gated.
        passed: Whether the invariant holds. None for skipped checks and pure diagnostics.
        skipped: Whether the check does not apply to the algebra under test.
        measured: The measured quantities.
        reference: Values quoted in the literature, reported next to the measurements.
        message: A human readable summary.
    """

    name: str
    gated: bool = True
    passed: Optional[bool] = None
    skipped: bool = False
    measured: Dict[str, Any] = Field(default_factory=dict)
    reference: Dict[str, Any] = Field(default_factory=dict)
    message: str = ""

    @property
    def failed(self) -> bool:
        return self.gated and not self.skipped and self.passed is False


class Section(BaseModel):
    """
    A section in a report.
    """

    title: str
    logs: List[str] = Field(default_factory=list)
    results: List[CheckResult] = Field(default_factory=list)


class VerificationReport(BaseModel):
    """
    A report that summarizes the outcome of a verification run.

    Attributes:
        algebra: The name of the algebra under test.
        seed: The seed of every randomized check.
        time_stamp: When the run started. None for reproducible runs, so that identical
            configurations produce byte-identical reports.
    """

    title: str = "Verification Report"
    algebra: str = ""
    seed: Optional[int] = None
    sections: List[Section] = Field(default_factory=list)
    malcevap_version: str = Field(default=__version__)
    time_stamp: Optional[datetime] = Field(default_factory=datetime.now)

    _active_section: Optional[Section] = PrivateAttr(None)

    def start_section(self, name: str):
        self.sections.append(Section(title=name))
        self._active_section = self.sections[-1]

    def end_section(self):
        self._active_section = None

    @contextmanager
    def section(self, name: str):
        self.start_section(name)
        try:
            yield self
        finally:
            self.end_section()

    def log(self, message: str):
        """Log a message to the report"""
        self._check_active_section()
        self._active_section.logs.append(message)

    def log_result(self, result: CheckResult):
        """Log the outcome of a check to the report"""
        self._check_active_section()
        self._active_section.results.append(result)

    @property
    def results(self) -> List[CheckResult]:
        return [result for section in self.sections for result in section.results]

    @property
    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if result.failed]

    @property
    def passed(self) -> bool:
        """Whether every gated check that ran passed"""
        return len(self.failures) == 0

    def to_json(self, path: Optional[str] = None) -> str:
        """Serializes the report, and saves it if a path is given"""
        data = self.model_dump_json(indent=2)
        if path is not None:
            with fsspec.open(path, "w") as fd:
                fd.write(data)
        return data

    @classmethod
    def from_json(cls, path: str) -> "VerificationReport":
        with fsspec.open(path, "r") as fd:
            return cls(**json.load(fd))

    def _check_active_section(self):
        if self._active_section is None:
            raise RuntimeError("No active section. Use `with report.section(name):`")
