from typing import ClassVar, Literal, Optional

import numpy as np

from malcevap.algebra import AlgebraSpec, Octonion
from malcevap.dynamics import conj_orbit, flow_conjugacy_residual, flow_trajectory, orbit_closure_dim
from malcevap.report import CheckResult, VerificationReport
from malcevap.spectral import exp_ad, minimal_period
from malcevap.types import FlowConvention, VerbosityLevel
from malcevap.utils import DEFAULT_SEED
from malcevap.verification.checks._base import BaseCheck


class PeriodicityCheck(BaseCheck):
    """
    Strict periodicity of the flows generated by x ∈ Im(O) with minimal period T = 2π/‖x‖.

    Both e^{T ad(x)} = I and Φ_T(p) = p must hold, the orbit must move away from p in between, and
    its closure must be a circle. Both translation sides are checked.

    Attributes:
        sample_count: The number of random (x, p) pairs.
        threshold: Tolerance of the return to the identity and to p.
        minimality_witness: The smallest admissible max ‖Φ_t(p) − p‖ over t in [0.1T, 0.9T].
        steps: Samples per period of the trajectories used for the closure dimension.
    """

    name: Literal["periodicity"] = "periodicity"
    sample_count: int = 50
    threshold: float = 1e-9
    minimality_witness: float = 0.05
    steps: int = 400

    octonion_only: ClassVar[bool] = True

    def run(
        self,
        alg: AlgebraSpec,
        seed: int = DEFAULT_SEED,
        report: Optional[VerificationReport] = None,
        verbosity: VerbosityLevel = VerbosityLevel.NORMAL,
    ) -> CheckResult:
        rng = np.random.default_rng(seed)
        exp_error, flow_error, period_error, witness = 0.0, 0.0, 0.0, np.inf
        closure_dims = set()
        for _ in range(self.sample_count):
            x = rng.standard_normal(7)
            p = rng.standard_normal(8)
            p0 = Octonion(coefficients=p / np.linalg.norm(p))
            T = 2 * np.pi / np.linalg.norm(x)

            exp_error = max(exp_error, float(np.linalg.norm(exp_ad(alg, x, T) - np.eye(7))))
            period = minimal_period(alg, x)
            period_error = max(period_error, np.inf if period is None else abs(period - T))

            for convention in FlowConvention:
                traj = flow_trajectory(x, p0, np.linspace(0.0, T, self.steps + 1), convention=convention)
                flow_error = max(flow_error, float(np.linalg.norm(traj.points[-1] - p0.coefficients)))
                inner = (traj.times >= 0.1 * T) & (traj.times <= 0.9 * T)
                distances = np.linalg.norm(traj.points[inner] - p0.coefficients, axis=1)
                witness = min(witness, float(np.max(distances)))
                closure_dims.add(orbit_closure_dim(traj))

        self.log(report, f"‖e^(T ad x) − I‖ ≤ {exp_error:.3g}, ‖Φ_T(p) − p‖ ≤ {flow_error:.3g}")
        self.log(report, f"Smallest excursion over [0.1T, 0.9T]: {witness:.6g}")
        self.log(report, f"Orbit closure dimensions: {sorted(closure_dims)}")
        passed = (
            exp_error <= self.threshold
            and flow_error <= self.threshold
            and period_error <= self.threshold
            and witness >= self.minimality_witness
            and closure_dims == {1}
        )
        return self.result(
            passed,
            f"periodic with T = 2π/‖x‖ on {self.sample_count} samples",
            measured={
                "exp_error": exp_error,
                "flow_error": flow_error,
                "period_error": period_error,
                "minimality_witness": witness,
                "closure_dims": sorted(closure_dims),
            },
        )


class ConjugationIdentityCheck(BaseCheck):
    """
    The inner automorphism e^{t ad(x)} y equals exp(tx/2)·y·exp(−tx/2).

    The flow-conjugacy residual ‖Φ_t(exp(y)) − exp(e^{t ad(x)} y)‖ of the left translation flow is
    measured alongside as a diagnostic for x = e₁, y = 0.3·e₂, t = 1.

    Attributes:
        sample_count: The number of random (x, y, t) triples.
        max_norm: Bound on ‖x‖ and ‖y‖.
        max_time: Bound on |t|.
    """

    name: Literal["conjugation_identity"] = "conjugation_identity"
    sample_count: int = 200
    max_norm: float = 2.0
    max_time: float = 10.0
    threshold: float = 1e-9

    octonion_only: ClassVar[bool] = True

    def run(
        self,
        alg: AlgebraSpec,
        seed: int = DEFAULT_SEED,
        report: Optional[VerificationReport] = None,
        verbosity: VerbosityLevel = VerbosityLevel.NORMAL,
    ) -> CheckResult:
        rng = np.random.default_rng(seed)
        error = 0.0
        for _ in range(self.sample_count):
            x, y = rng.standard_normal((2, 7))
            x *= rng.uniform(0, self.max_norm) / np.linalg.norm(x)
            y *= rng.uniform(0, self.max_norm) / np.linalg.norm(y)
            t = rng.uniform(-self.max_time, self.max_time)
            error = max(error, float(np.linalg.norm(exp_ad(alg, x, t) @ y - conj_orbit(x, y, t))))

        e1, e2 = np.eye(7)[0], np.eye(7)[1]
        diagnostics = {
            f"flow_conjugacy_residual_{flow}": flow_conjugacy_residual(e1, 0.3 * e2, 1.0, flow=flow)
            for flow in ("left", "right", "conjugation")
        }
        for key, value in diagnostics.items():
            self.log(report, f"{key} at x = e1, y = 0.3 e2, t = 1: {value:.17g}")
        self.log(report, f"Largest conjugation identity error {error:.3g}")

        return self.result(
            error <= self.threshold,
            f"max error {error:.3g}",
            measured={"max_error": error, **diagnostics},
        )
