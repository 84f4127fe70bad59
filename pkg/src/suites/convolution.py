from attrs import evolve

from src.convolution import (
    verify_convolution_theorem,
    verify_correlation_theorem,
    verify_l1_bound,
)
from src.suites.fixtures import gaussian_pair, l1_pairs
from src.suites.manager import Suite
from src.verification import VerificationReport


class ConvolutionIdentities(Suite):
    """Convolution product theorem, its L1 bound and the correlation theorem."""

    description = "convolution"

    def run(self):
        params, tolerances = self.params, self.tolerances
        f, g = gaussian_pair(self.config)
        return [
            verify_convolution_theorem(params, f, g, tolerances.convolution),
            self.l1_sweep(),
            self.correlation(f, g),
        ]

    def l1_sweep(self):
        variant = self.config.convolution.variant
        reports = [
            verify_l1_bound(self.params, p, q, variant)
            for p, q in l1_pairs(self.config)
        ]
        ratios = [report.details["ratio"] for report in reports]
        worst = max(reports, key=lambda report: report.details["ratio"])
        return VerificationReport.build(
            "l1_bound",
            worst.max_abs_err,
            worst.rel_err,
            worst.tolerance,
            pairs=len(reports),
            violations=sum(not report.passed for report in reports),
            max_ratio=max(ratios),
            variant=variant,
        )

    def correlation(self, f, g):
        """Gates on the offset-free parameters; the full set is reported alongside."""
        tolerance = self.tolerances.correlation
        gate_params = evolve(self.params, u0=0.0, w0=0.0)
        gate = verify_correlation_theorem(gate_params, f, g, tolerance)
        if gate_params == self.params:
            return gate
        full = verify_correlation_theorem(self.params, f, g, tolerance)
        return evolve(
            gate, details={**gate.details, "full_parameters": full.to_dict()}
        )
