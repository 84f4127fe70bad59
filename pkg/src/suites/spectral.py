"""
Derivative-chirp and Boas operator identities and the limit estimators.
"""
from src.spectral import (
    boas_highpass_estimate,
    pw_bandwidth_estimate,
    verify_boas_relation,
    verify_delta_boas_inverse,
    verify_delta_eigen,
    verify_pw_bound,
)
from src.suites.fixtures import (
    bandlimited_fixture,
    boas_relation_fixture,
    gaussian_pair,
    highpass_fixture,
)
from src.suites.manager import Suite
from src.verification import VerificationReport

# designed band limits of the estimator fixtures, in units of |b|
DESIGNED_GAMMAS = [1.0, 2.0]


def estimate_report(name, sequence, expected, tolerance):
    error = abs(sequence.estimate - expected)
    return VerificationReport.build(
        name,
        error,
        error / expected,
        tolerance,
        expected=expected,
        sequence=sequence.to_dict(),
    )


class SpectralIdentities(Suite):
    description = "spectral"

    def run(self):
        params, config = self.params, self.config
        spectral, tolerances = config.spectral, self.tolerances
        f, _ = gaussian_pair(config)
        highpass = boas_relation_fixture(params)

        # orders past the configured list reuse its last tolerance
        delta_tolerances = list(tolerances.delta)
        reports = [
            verify_delta_eigen(
                params,
                f,
                n,
                delta_tolerances[min(n, len(delta_tolerances)) - 1],
                spectral.derivative,
            )
            for n in config.verify.delta_orders
        ]
        reports += [
            verify_boas_relation(
                params, highpass, n, spectral.boas_exclusion, tolerances.boas
            )
            for n in config.verify.boas_orders
        ]
        reports.append(
            verify_delta_boas_inverse(
                params, highpass, 1, tolerances.delta_boas_inverse
            )
        )

        for gamma in DESIGNED_GAMMAS:
            bandlimited = bandlimited_fixture(params, gamma)
            if gamma == DESIGNED_GAMMAS[0]:
                reports.append(verify_pw_bound(params, bandlimited, spectral.n_max))
            sequence = pw_bandwidth_estimate(
                params,
                bandlimited,
                spectral.n_max,
                spectral.method,
                spectral.derivative,
                spectral.project,
            )
            reports.append(
                estimate_report(
                    f"pw_estimate_gamma{gamma:g}",
                    sequence,
                    gamma,
                    tolerances.pw_estimate,
                )
            )
            sequence = boas_highpass_estimate(
                params,
                highpass_fixture(params, gamma),
                spectral.n_max,
                spectral.method,
                spectral.project,
            )
            reports.append(
                estimate_report(
                    f"boas_estimate_gamma{gamma:g}",
                    sequence,
                    1 / gamma,
                    tolerances.boas_estimate,
                )
            )
        return reports
