from typing import Optional

from malcevap.report import VerificationReport
from malcevap.utils import write_text

from ._base import ReportBroadcaster


class JSONBroadcaster(ReportBroadcaster):
    """
    Writes the report as JSON.

    Args:
        report: Verification report object.
        destination: A fsspec-compatible file path. Prints to stdout if None.
    """

    def __init__(self, report: VerificationReport, destination: Optional[str] = None):
        super().__init__(report)
        self._destination = destination

    def broadcast(self) -> Optional[str]:
        write_text(self._report.to_json(), self._destination)
        return self._destination
