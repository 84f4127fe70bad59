import math

from src.core import (
    verify_oracle,
    verify_parseval,
    verify_reduction,
    verify_riemann_lebesgue,
    verify_round_trip,
)
from src.suites.fixtures import gaussian_pair, sweep_signals
from src.suites.manager import Suite, worst_of


class TransformIdentities(Suite):
    """Unitarity, spectral decay, fast-vs-direct agreement and the round trip."""

    description = "transform"

    def run(self):
        params, tolerances = self.params, self.tolerances
        f, g = gaussian_pair(self.config)
        sweep = sweep_signals(self.config)
        parseval = [
            verify_parseval(params, s, tolerance=tolerances.parseval) for s in sweep
        ]
        parseval.append(verify_parseval(params, f, g, tolerance=tolerances.parseval))
        return [
            worst_of("parseval", parseval),
            verify_riemann_lebesgue(
                params,
                f,
                self.config.verify.edge_fraction,
                tolerances.riemann_lebesgue,
            ),
            worst_of(
                "oracle",
                [verify_oracle(params, s, tolerances.oracle) for s in sweep],
            ),
            verify_round_trip(params, f, tolerances.round_trip),
        ]


class ClassicalReductions(Suite):
    """FT and FrFT parameter sets against independent classical transforms."""

    description = "reductions"
    per_params = False

    def run(self):
        f, _ = gaussian_pair(self.config)
        # complex and asymmetric, so the spectrum is not real up to a phase
        f = f.with_samples(f.samples * (1 + 0.5j * f.x))
        tolerance = self.tolerances.reduction
        return [
            verify_reduction("ft", f, tolerance=tolerance),
            verify_reduction("frft", f, alpha=math.pi / 3, tolerance=tolerance),
        ]
