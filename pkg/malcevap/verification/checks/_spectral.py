from typing import ClassVar, Literal, Optional

import numpy as np

from malcevap.algebra import AlgebraSpec, ad_matrix, orthonormal_basis, vector_norm
from malcevap.report import CheckResult, VerificationReport
from malcevap.spectral import (
    classify_almost_periodic,
    minpoly_residual,
    orbit_stats,
    resolvent,
    resolvent_laplace,
    spectrum_ad,
)
from malcevap.types import VerbosityLevel
from malcevap.utils import DEFAULT_SEED
from malcevap.verification.checks._base import BaseCheck, builtin_name

# Builtins whose adjoint orbits are all relatively compact
COMPACT_BUILTINS = ("octonion", "su2", "im_quaternion")
NONCOMPACT_BUILTINS = ("sl2", "m3")


class AdjointSpectrumCheck(BaseCheck):
    """
    For x ≠ 0 in Im(O), ad(x) has spectrum {0, ±i‖x‖} with multiplicities (1, 3, 3) and satisfies
    ad(x)³ = −‖x‖² ad(x).

    Attributes:
        sample_count: The number of seeded random generators.
        threshold: Tolerance on eigenvalues and on the minimal polynomial residual.
        tol: The eigenvalue grouping tolerance. Defaults to 1e-9·(1 + ‖x‖).
    """

    name: Literal["adjoint_spectrum"] = "adjoint_spectrum"
    sample_count: int = 100
    threshold: float = 1e-10
    tol: Optional[float] = None

    octonion_only: ClassVar[bool] = True

    def run(
        self,
        alg: AlgebraSpec,
        seed: int = DEFAULT_SEED,
        report: Optional[VerificationReport] = None,
        verbosity: VerbosityLevel = VerbosityLevel.NORMAL,
    ) -> CheckResult:
        rng = np.random.default_rng(seed)
        eigenvalue_error, minpoly_error, bad_patterns = 0.0, 0.0, 0
        for x in rng.standard_normal((self.sample_count, alg.dim)):
            spectrum = spectrum_ad(alg, x, tol=self.tol)
            norm = vector_norm(alg, x)
            pattern = {(round(ev.im / norm), ev.mult) for ev in spectrum.eigenvalues}
            if pattern != {(0, 1), (1, 3), (-1, 3)} or not spectrum.purely_imaginary:
                bad_patterns += 1
            for ev in spectrum.eigenvalues:
                target = norm * round(ev.im / norm)
                eigenvalue_error = max(eigenvalue_error, abs(ev.value - 1j * target))
            minpoly_error = max(minpoly_error, minpoly_residual(alg, x))

        passed = bad_patterns == 0 and eigenvalue_error <= self.threshold and minpoly_error <= self.threshold
        self.log(report, f"{self.sample_count - bad_patterns}/{self.sample_count} spectra match {{0: 1, ±i‖x‖: 3}}")
        self.log(report, f"Largest eigenvalue error {eigenvalue_error:.3g}, minimal polynomial residual {minpoly_error:.3g}")
        return self.result(
            passed,
            f"{bad_patterns} mismatched spectra",
            measured={
                "mismatched_spectra": bad_patterns,
                "eigenvalue_error": eigenvalue_error,
                "minpoly_residual": minpoly_error,
            },
        )


class AlmostPeriodicityCheck(BaseCheck):
    """
    Classifies the algebra as almost periodic or not.

    Compact builtins must be classified almost periodic. The split builtins must not be, with a
    hyperbolic generator witnessing |Re λ| > `real_part_threshold` and orbit growth beyond
    `growth_threshold` by `t_max`. Custom algebras are only classified.

    Attributes:
        sample_count: Random elements classified on top of the basis.
    """

    name: Literal["almost_periodicity"] = "almost_periodicity"
    sample_count: int = 100
    real_part_threshold: float = 1e-6
    growth_threshold: float = 100.0
    t_max: float = 20.0
    steps: int = 2001

    def run(
        self,
        alg: AlgebraSpec,
        seed: int = DEFAULT_SEED,
        report: Optional[VerificationReport] = None,
        verbosity: VerbosityLevel = VerbosityLevel.NORMAL,
    ) -> CheckResult:
        almost_periodic = classify_almost_periodic(alg, sample_count=self.sample_count, seed=seed)
        measured = {"almost_periodic": almost_periodic}
        self.log(report, f"'{alg.name}' is {'' if almost_periodic else 'not '}almost periodic")

        basis = orthonormal_basis(alg)
        witness = None
        for i in range(alg.dim):
            spectrum = spectrum_ad(alg, basis[:, i])
            if not spectrum.purely_imaginary:
                witness = i
                break
        measured["purely_imaginary"] = witness is None

        if witness is not None:
            x = basis[:, witness]
            spectrum = spectrum_ad(alg, x)
            largest_real = max(abs(ev.re) for ev in spectrum.eigenvalues)
            y = np.ones(alg.dim) / np.sqrt(alg.dim)
            stats = orbit_stats(alg, x, y, t_max=self.t_max, steps=self.steps)
            measured.update(witness_index=witness, largest_real_part=largest_real, orbit_sup_norm=stats.sup_norm)
            self.log(report, f"Basis element {witness} has |Re λ| = {largest_real:.6g}, orbit sup norm {stats.sup_norm:.6g}")

        name = builtin_name(alg)
        if name in COMPACT_BUILTINS:
            return self.result(almost_periodic, "compact builtin is almost periodic", measured=measured)
        if name in NONCOMPACT_BUILTINS:
            passed = (
                not almost_periodic
                and witness is not None
                and measured["largest_real_part"] > self.real_part_threshold
                and measured["orbit_sup_norm"] > self.growth_threshold
            )
            return self.result(passed, "split builtin has an unbounded orbit", measured=measured)
        return CheckResult(
            name=self.name,
            gated=False,
            measured=measured,
            message=f"classified as {'' if almost_periodic else 'not '}almost periodic",
        )


class ResolventCheck(BaseCheck):
    """
    The resolvent at λ agrees with its truncated Laplace representation ∫₀^{t_max} e^{−λt} e^{t ad(x)} dt.

    Attributes:
        sample_count: The number of seeded random unit generators.
        lam: The real resolvent parameter.
        t_max: The truncation of the Laplace integral.
        threshold: Tolerance between quadrature and direct inverse.
    """

    name: Literal["resolvent_laplace"] = "resolvent_laplace"
    sample_count: int = 10
    lam: float = 2.0
    t_max: float = 40.0
    threshold: float = 1e-6

    octonion_only: ClassVar[bool] = True

    def run(
        self,
        alg: AlgebraSpec,
        seed: int = DEFAULT_SEED,
        report: Optional[VerificationReport] = None,
        verbosity: VerbosityLevel = VerbosityLevel.NORMAL,
    ) -> CheckResult:
        rng = np.random.default_rng(seed)
        quadrature_error, inverse_residual = 0.0, 0.0
        for x in rng.standard_normal((self.sample_count, alg.dim)):
            x = x / vector_norm(alg, x)
            R = resolvent(alg, x, self.lam)
            quadrature = resolvent_laplace(alg, x, self.lam, t_max=self.t_max)
            quadrature_error = max(quadrature_error, float(np.linalg.norm(quadrature - R)))
            A = self.lam * np.eye(alg.dim) - ad_matrix(alg, x)
            inverse_residual = max(inverse_residual, float(np.linalg.norm(A @ R - np.eye(alg.dim))))

        self.log(report, f"Laplace quadrature error {quadrature_error:.3g}, inverse residual {inverse_residual:.3g}")
        passed = quadrature_error <= self.threshold and inverse_residual <= 1e-10
        return self.result(
            passed,
            f"quadrature error {quadrature_error:.3g}",
            measured={"quadrature_error": quadrature_error, "inverse_residual": inverse_residual},
        )