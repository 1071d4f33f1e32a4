import functools
import sys
from typing import Annotated, Optional

import fsspec
import numpy as np
import pandas as pd
import typer
from loguru import logger
from pydantic import BaseModel, Field, ValidationError, field_serializer, field_validator

from malcevap.algebra import AlgebraSpec, DefectNorm, Octonion, associator_norm, defect_norm, is_octonion, resolve_algebra
from malcevap.bch import BchConfig, BchSummary, bch_summary
from malcevap.dynamics import Trajectory, flow_trajectory
from malcevap.errors import MalcevError, ParseError
from malcevap.harmonics import LaplacianTable, laplacian_table
from malcevap.report import VerificationReport
from malcevap.report.broadcaster import JSONBroadcaster, LoggerBroadcaster
from malcevap.spectral import SpectrumReport, spectrum_ad
from malcevap.types import FlowConvention, OutputFormat, VerbosityLevel
from malcevap.utils import DEFAULT_SEED, parse_coefficients, read_text, write_text
from malcevap.verification import Verifier

app = typer.Typer(help="Verify and simulate almost periodic Malcev algebras.")

SPECTRUM_COLUMNS = ["re", "im", "mult"]

_LOG_LEVELS = {
    VerbosityLevel.NORMAL: "INFO",
    VerbosityLevel.VERBOSE: "DEBUG",
    VerbosityLevel.DEAFENING: "TRACE",
}


class RunConfig(BaseModel):
    """
    The options shared by every command.

    Attributes:
        algebra: A builtin algebra name or a path to an algebra file.
        seed: The seed of every randomized computation.
        tol: The eigenvalue grouping tolerance. If None, 1e-9·(1 + ‖x‖) is used.
        output: A fsspec-compatible destination. Prints to stdout if None.
        format: The artifact format. If None, each command uses its natural format.
        reproducible: Omit time stamps, so that identical runs produce identical artifacts.
        verbosity: Verbosity level for logging.
    """

    algebra: str = "octonion"
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2**64)
    tol: Optional[float] = Field(None, gt=0)
    output: Optional[str] = None
    format: Optional[OutputFormat] = None
    reproducible: bool = False
    verbosity: VerbosityLevel = VerbosityLevel.NORMAL

    @field_validator("verbosity", mode="before")
    def _validate_verbosity(cls, v):
        if isinstance(v, VerbosityLevel):
            return v
        try:
            return VerbosityLevel[str(v).upper()]
        except KeyError:
            raise ValueError(f"Unknown verbosity '{v}'. Choose from {[level.name for level in VerbosityLevel]}")

    @field_serializer("verbosity")
    def _serialize_verbosity(self, value: VerbosityLevel):
        return value.name

    def resolve_algebra(self) -> AlgebraSpec:
        return resolve_algebra(self.algebra)

    def format_or(self, default: OutputFormat) -> OutputFormat:
        return default if self.format is None else self.format

    def setup_logging(self):
        """Routes loguru to stderr at the level matching the verbosity"""
        logger.remove()
        if self.verbosity > VerbosityLevel.SILENT:
            logger.add(sys.stderr, level=_LOG_LEVELS[self.verbosity])


AlgebraOption = Annotated[str, typer.Option("--algebra", "-a", help="Builtin name or path to an algebra file.")]
SeedOption = Annotated[int, typer.Option(help="Seed of every randomized computation.")]
TolOption = Annotated[Optional[float], typer.Option(help="Eigenvalue grouping tolerance.")]
FormatOption = Annotated[Optional[str], typer.Option("--format", "-f", help="json or csv.")]
OutputOption = Annotated[Optional[str], typer.Option("--output", "-o", help="Destination, stdout if omitted.")]
ReproducibleOption = Annotated[bool, typer.Option(help="Omit time stamps from the artifacts.")]
CheckOption = Annotated[Optional[str], typer.Option("--check", help="Re-read and validate an emitted artifact.")]
VerbosityOption = Annotated[str, typer.Option(help="SILENT, NORMAL, VERBOSE or DEAFENING.")]


def _exit_on_error(func):
    """Usage errors exit with code 2"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (MalcevError, ValidationError) as e:
            logger.error(f"{type(e).__name__}: {e}")
            raise typer.Exit(code=2)

    return wrapper


def _config(**kwargs) -> RunConfig:
    config = RunConfig(**kwargs)
    config.setup_logging()
    return config


def _unsupported(fmt: str, command: str):
    raise ParseError(f"The {command} command does not write {fmt}")


@app.command()
@_exit_on_error
def verify(
    config: Annotated[Optional[str], typer.Option("--config", help="A saved verification suite.")] = None,
    algebra: Annotated[Optional[str], typer.Option("--algebra", "-a", help="Builtin name or path to an algebra file.")] = None,
    seed: Annotated[Optional[int], typer.Option(help="Seed of every randomized computation.")] = None,
    tol: TolOption = None,
    format: FormatOption = None,
    output: OutputOption = None,
    reproducible: Annotated[Optional[bool], typer.Option(help="Omit time stamps from the artifacts.")] = None,
    check: CheckOption = None,
    verbosity: Annotated[Optional[str], typer.Option(help="SILENT, NORMAL, VERBOSE or DEAFENING.")] = None,
):
    """Runs the invariant suite and writes a JSON report. Exits with 1 if a gated check fails.

    With --config, the saved suite runs as saved, except for the options given on the command line.
    """
    given = {"algebra": algebra, "seed": seed, "tol": tol, "reproducible": reproducible, "verbosity": verbosity}
    given = {key: value for key, value in given.items() if value is not None}
    run = _config(format=format, output=output, **given)
    if run.format_or("json") != "json":
        _unsupported(run.format, "verify")

    if check is not None:
        report = VerificationReport.model_validate_json(read_text(check))
        logger.info(f"{check} is a valid report with {len(report.results)} results")
    else:
        verifier = Verifier.from_json(config) if config is not None else Verifier.default()
        verifier = verifier.model_copy(update={key: getattr(run, key) for key in given})
        if "verbosity" not in given:
            run = run.model_copy(update={"verbosity": verifier.verbosity})
            run.setup_logging()

        report = verifier.verify()
        if run.verbosity > VerbosityLevel.SILENT:
            LoggerBroadcaster(report).broadcast()
        JSONBroadcaster(report, run.output).broadcast()

    if not report.passed:
        raise typer.Exit(code=1)


@app.command()
@_exit_on_error
def spectrum(
    x: Annotated[Optional[str], typer.Option("--x", help="Comma-separated coefficients of the generator.")] = None,
    algebra: AlgebraOption = "octonion",
    seed: SeedOption = DEFAULT_SEED,
    tol: TolOption = None,
    format: FormatOption = None,
    output: OutputOption = None,
    reproducible: ReproducibleOption = False,
    check: CheckOption = None,
    verbosity: VerbosityOption = "NORMAL",
):
    """Writes the spectrum of ad(x) with multiplicities."""
    run = _config(
        algebra=algebra, seed=seed, tol=tol, format=format, output=output, reproducible=reproducible, verbosity=verbosity
    )
    fmt = run.format_or("json")

    if check is not None:
        if fmt == "csv":
            with fsspec.open(check, "r") as fd:
                columns = list(pd.read_csv(fd).columns)
            if columns != SPECTRUM_COLUMNS:
                raise ParseError(f"Expected the columns {SPECTRUM_COLUMNS}, got {columns}")
        else:
            SpectrumReport.model_validate_json(read_text(check))
        logger.info(f"{check} is a valid spectrum")
        return

    if x is None:
        raise ParseError("--x is required")
    alg = run.resolve_algebra()
    report = spectrum_ad(alg, parse_coefficients(x, dim=alg.dim), tol=run.tol)
    logger.info(f"{len(report.eigenvalues)} distinct eigenvalues, almost periodic: {report.almost_periodic}")

    if fmt == "csv":
        df = pd.DataFrame([ev.model_dump() for ev in report.eigenvalues], columns=SPECTRUM_COLUMNS)
        write_text(df.to_csv(index=False, float_format="%.17g"), run.output)
    else:
        write_text(report.model_dump_json(indent=2), run.output)


@app.command()
@_exit_on_error
def orbit(
    x: Annotated[str, typer.Option("--x", help="The 7 imaginary coefficients of the generator.")] = "1,0,0,0,0,0,0",
    p0: Annotated[str, typer.Option("--p0", help="The 8 coefficients of the unit starting point.")] = "1,0,0,0,0,0,0,0",
    t_max: Annotated[float, typer.Option("--t-max", help="The final time.")] = 2 * np.pi,
    steps: Annotated[int, typer.Option(help="The number of time steps.")] = 1000,
    convention: Annotated[FlowConvention, typer.Option(help="The translation side.")] = FlowConvention.LEFT,
    algebra: AlgebraOption = "octonion",
    seed: SeedOption = DEFAULT_SEED,
    tol: TolOption = None,
    format: FormatOption = None,
    output: OutputOption = None,
    reproducible: ReproducibleOption = False,
    check: CheckOption = None,
    verbosity: VerbosityOption = "NORMAL",
):
    """Samples the translation flow exp(tx) on the unit octonions at steps + 1 equally spaced times."""
    run = _config(
        algebra=algebra, seed=seed, tol=tol, format=format, output=output, reproducible=reproducible, verbosity=verbosity
    )
    fmt = run.format_or("csv")

    if check is not None:
        traj = Trajectory.from_csv(check) if fmt == "csv" else Trajectory.model_validate_json(read_text(check))
        logger.info(f"{check} is a valid trajectory with {len(traj)} samples")
        return

    if not is_octonion(run.resolve_algebra()):
        raise ParseError("Flows are defined on the unit octonions only, use --algebra octonion")
    if steps < 1 or t_max <= 0:
        raise ParseError(f"Expected steps ≥ 1 and t_max > 0, got {steps} and {t_max}")

    t_grid = np.linspace(0.0, t_max, steps + 1)
    start = Octonion(coefficients=parse_coefficients(p0, dim=8))
    traj = flow_trajectory(parse_coefficients(x, dim=7), start, t_grid, convention=convention)
    logger.info(f"Sampled {len(traj)} points of the {convention.value} flow")

    if fmt == "csv":
        write_text(traj.to_csv(), run.output)
    else:
        write_text(traj.model_dump_json(), run.output)


class DefectSummary(BaseModel):
    """The defect norms of an algebra, with the associator norm of Im(O) for the octonions"""

    algebra: str
    defect: DefectNorm
    associator_norm: Optional[float] = None


@app.command()
@_exit_on_error
def defect(
    sample_count: Annotated[int, typer.Option(help="Random triples of the sampled estimate.")] = 1000,
    algebra: AlgebraOption = "octonion",
    seed: SeedOption = DEFAULT_SEED,
    tol: TolOption = None,
    format: FormatOption = None,
    output: OutputOption = None,
    reproducible: ReproducibleOption = False,
    check: CheckOption = None,
    verbosity: VerbosityOption = "NORMAL",
):
    """Writes the Malcev defect norm estimates of the algebra."""
    run = _config(
        algebra=algebra, seed=seed, tol=tol, format=format, output=output, reproducible=reproducible, verbosity=verbosity
    )
    if run.format_or("json") != "json":
        _unsupported(run.format, "defect")

    if check is not None:
        DefectSummary.model_validate_json(read_text(check))
        logger.info(f"{check} is a valid defect summary")
        return

    alg = run.resolve_algebra()
    summary = DefectSummary(
        algebra=alg.name,
        defect=defect_norm(alg, sample_count=sample_count, seed=run.seed),
        associator_norm=associator_norm() if is_octonion(alg) else None,
    )
    logger.info(f"basis_sup = {summary.defect.basis_sup:.17g}")
    write_text(summary.model_dump_json(indent=2), run.output)


@app.command()
@_exit_on_error
def bch(
    order: Annotated[int, typer.Option(help="The truncation order, 1 to 6.")] = 6,
    x: Annotated[str, typer.Option("--x", help="The 7 coefficients of x.")] = "0.05,0,0,0,0,0,0",
    y: Annotated[str, typer.Option("--y", help="The 7 coefficients of y.")] = "0,0.05,0,0,0,0,0",
    scales: Annotated[Optional[str], typer.Option(help="Comma-separated scales of the slope experiment.")] = None,
    algebra: AlgebraOption = "octonion",
    seed: SeedOption = DEFAULT_SEED,
    tol: TolOption = None,
    format: FormatOption = None,
    output: OutputOption = None,
    reproducible: ReproducibleOption = False,
    check: CheckOption = None,
    verbosity: VerbosityOption = "NORMAL",
):
    """Compares the truncated BCH series with log(exp(x)·exp(y)) in the octonions."""
    run = _config(
        algebra=algebra, seed=seed, tol=tol, format=format, output=output, reproducible=reproducible, verbosity=verbosity
    )
    if run.format_or("json") != "json":
        _unsupported(run.format, "bch")

    if check is not None:
        BchSummary.model_validate_json(read_text(check))
        logger.info(f"{check} is a valid BCH summary")
        return

    if not is_octonion(run.resolve_algebra()):
        raise ParseError("The BCH comparison is implemented for the octonions only, use --algebra octonion")

    cfg = BchConfig(order=order)
    summary = bch_summary(
        parse_coefficients(x, dim=7),
        parse_coefficients(y, dim=7),
        cfg=cfg,
        scales=None if scales is None else parse_coefficients(scales).tolist(),
    )
    if not summary.radius_ok:
        logger.warning(f"(x, y) lies outside the convergence radius ‖x‖ + ‖y‖ < {cfg.radius:g}")
    write_text(summary.model_dump_json(exclude_none=True), run.output)


@app.command()
@_exit_on_error
def laplacian(
    k_max: Annotated[int, typer.Option("--k-max", help="The highest polynomial degree.")] = 6,
    algebra: AlgebraOption = "octonion",
    seed: SeedOption = DEFAULT_SEED,
    tol: TolOption = None,
    format: FormatOption = None,
    output: OutputOption = None,
    reproducible: ReproducibleOption = False,
    check: CheckOption = None,
    verbosity: VerbosityOption = "NORMAL",
):
    """Tabulates the eigenvalues and multiplicities of the Laplacian on S⁷."""
    run = _config(
        algebra=algebra, seed=seed, tol=tol, format=format, output=output, reproducible=reproducible, verbosity=verbosity
    )
    fmt = run.format_or("csv")

    if check is not None:
        table = LaplacianTable.from_csv(check) if fmt == "csv" else LaplacianTable.model_validate_json(read_text(check))
        logger.info(f"{check} is a valid table up to k = {table.k_max}")
        return

    table = laplacian_table(k_max)
    if fmt == "csv":
        write_text(table.to_csv(), run.output)
    else:
        write_text(table.model_dump_json(indent=2), run.output)


if __name__ == "__main__":
    app()
