from ._report import CheckResult, Section, VerificationReport

__all__ = ["VerificationReport", "Section", "CheckResult"]
