from loguru import logger

from malcevap.report import CheckResult, Section, VerificationReport

from ._base import ReportBroadcaster


class LoggerBroadcaster(ReportBroadcaster):
    """Writes the report to the terminal through the loguru sinks"""

    def broadcast(self):
        self.on_report_start(self._report)
        for section in self._report.sections:
            self.on_section_start(section)
            for log in section.logs:
                self.render_log(log)
            for result in section.results:
                self.render_result(result)
        self.on_report_end(self._report)

    def render_log(self, message: str):
        logger.debug(f"[LOG]: {message}")

    def render_result(self, result: CheckResult):
        if result.skipped:
            logger.info(f"[SKIP]: {result.name}: {result.message}")
        elif result.passed is None:
            logger.info(f"[INFO]: {result.name}: {result.message}")
        elif result.passed:
            logger.success(f"[PASS]: {result.name}: {result.message}")
        elif result.gated:
            logger.error(f"[FAIL]: {result.name}: {result.message}")
        else:
            logger.warning(f"[WARN]: {result.name}: {result.message}")
        for key, value in result.reference.items():
            logger.debug(f"[REF]: {key} = {value}, measured {result.measured.get(key)}")

    def on_section_start(self, section: Section):
        logger.info(f"===== {section.title} =====")

    def on_report_start(self, report: VerificationReport):
        logger.info(f"===== {report.title}: {report.algebra} =====")
        if report.time_stamp is not None:
            logger.debug(f"Time: {report.time_stamp.strftime('%Y-%m-%d %H:%M:%S')}")
        logger.debug(f"Version: {report.malcevap_version}")
        logger.debug(f"Seed: {report.seed}")

    def on_report_end(self, report: VerificationReport):
        status = "PASSED" if report.passed else f"FAILED ({len(report.failures)} checks)"
        logger.info(f"===== {report.title} END: {status} =====")
