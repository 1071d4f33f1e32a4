from typing import ClassVar, List, Literal, Optional

import numpy as np

from malcevap.algebra import AlgebraSpec
from malcevap.bch import BchConfig, bch_error, bch_radius_ok, bch_scaling
from malcevap.report import CheckResult, VerificationReport
from malcevap.types import VerbosityLevel
from malcevap.utils import DEFAULT_SEED
from malcevap.verification.checks._base import BaseCheck


class BchCheck(BaseCheck):
    """
    Convergence of the truncated BCH series inside the radius B(‖x‖ + ‖y‖) < 1/(4K).

    Attributes:
        config: The truncation order and the constants of the radius.
        sample_count: The number of random pairs.
        max_total_norm: Bound on ‖x‖ + ‖y‖ of the random pairs.
        threshold: Tolerance of the truncation error at `config.order`.
        scaling_orders: Orders whose convergence slope is measured along (e₁, e₂).
        scale: The scale s of the slope log₂(error(s) / error(s/2)).
        slope_margin: The slope must reach at least order + `slope_margin`.
    """

    name: Literal["bch"] = "bch"
    config: BchConfig = BchConfig()
    sample_count: int = 100
    max_total_norm: float = 0.12
    threshold: float = 1e-8
    scaling_orders: List[int] = [2, 3, 4]
    scale: float = 0.1
    slope_margin: float = 0.8

    octonion_only: ClassVar[bool] = True

    def run(
        self,
        alg: AlgebraSpec,
        seed: int = DEFAULT_SEED,
        report: Optional[VerificationReport] = None,
        verbosity: VerbosityLevel = VerbosityLevel.NORMAL,
    ) -> CheckResult:
        rng = np.random.default_rng(seed)
        error, outside = 0.0, 0
        for _ in range(self.sample_count):
            x, y = rng.standard_normal((2, 7))
            total = rng.uniform(0, self.max_total_norm)
            share = rng.uniform(0, 1)
            x *= share * total / np.linalg.norm(x)
            y *= (1 - share) * total / np.linalg.norm(y)
            outside += not bch_radius_ok(self.config, x, y)
            error = max(error, bch_error(x, y, self.config.order))

        e1, e2 = np.eye(7)[0], np.eye(7)[1]
        slopes = {order: bch_scaling(e1, e2, order, scales=(self.scale,))[0] for order in self.scaling_orders}
        slopes_ok = all(slope >= order + self.slope_margin for order, slope in slopes.items())

        self.log(report, f"Radius {self.config.radius:g}, {outside} of {self.sample_count} pairs outside")
        self.log(report, f"Largest order-{self.config.order} truncation error {error:.3g}")
        for order, slope in slopes.items():
            self.log(report, f"Order {order} converges with slope {slope:.6g}")

        return self.result(
            outside == 0 and error <= self.threshold and slopes_ok,
            f"order-{self.config.order} error {error:.3g}",
            measured={
                "max_error": error,
                "pairs_outside_radius": outside,
                "radius": self.config.radius,
                "slopes": {str(order): slope for order, slope in slopes.items()},
            },
        )
