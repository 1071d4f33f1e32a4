from ._base import ReportBroadcaster
from ._json import JSONBroadcaster
from ._logger import LoggerBroadcaster

__all__ = ["ReportBroadcaster", "LoggerBroadcaster", "JSONBroadcaster"]
