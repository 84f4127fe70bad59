"""
The derivative-chirp operator Delta, the Boas integral operator B, their
OLCT eigen-relations and the band-limit / high-pass limit estimators.

Both operators act through the dechirping factor Q(x) = exp((i/2b)(a x^2 + 2 u0 x)):
Delta = -conj(Q) d/dx Q and B = conj(Q) int_x^inf Q.
"""
import math
import warnings
from typing import Any, Dict

import numpy as np
import scipy.fft
from attrs import field, frozen
from scipy.integrate import cumulative_trapezoid

from src.constants.common import (
    BOAS_MULTIPLIERS,
    DERIVATIVE_SCHEMES,
    EXTRAPOLATION_METHODS,
)
from src.constants.numerics import (
    EDGE_LEAKAGE_RATIO,
    EXTRAPOLATION_TAIL,
    INTERIOR_FRACTION,
    MIN_SEQUENCE_LENGTH,
    PW_BOUND_SLACK,
    SUPPORT_THRESHOLD,
)
from src.core import dechirp_factor, edge_ratio, olct_fast, plan_for
from src.defaults import CONFIG_DEFAULTS
from src.exceptions import EdgeLeakage, NumericalOverflow, NumericalUnderflow
from src.logger import logger
from src.params import OlctParams
from src.signal import SampledSignal, Spectrum, next_power_of_two
from src.verification import (
    VerificationReport,
    jsonable,
    relative_l2_error,
    relative_max_error,
)

SPECTRAL = CONFIG_DEFAULTS.spectral
TOLERANCES = CONFIG_DEFAULTS.tolerances


def _derivative(samples: np.ndarray, dx: float, scheme: str) -> np.ndarray:
    if scheme == "spectral":
        n = len(samples)
        n_fft = next_power_of_two(n)
        padded = np.zeros(n_fft, dtype=np.complex128)
        padded[:n] = samples
        wavenumbers = 2 * np.pi * scipy.fft.fftfreq(n_fft, dx)
        # the Nyquist bin has no unambiguous derivative
        wavenumbers[n_fft // 2] = 0.0
        return scipy.fft.ifft(1j * wavenumbers * scipy.fft.fft(padded))[:n]
    if scheme == "fd4":
        padded = np.concatenate([np.zeros(2), samples, np.zeros(2)])
        return (
            -padded[4:] + 8 * padded[3:-1] - 8 * padded[1:-3] + padded[:-4]
        ) / (12 * dx)
    raise ValueError(
        f"Unknown derivative scheme '{scheme}', expected {DERIVATIVE_SCHEMES}"
    )


def delta_op(
    params: OlctParams, f: SampledSignal, scheme: str = SPECTRAL.derivative
) -> SampledSignal:
    """-(f' + (i/b)(a x + u0) f)."""
    params.require_main_branch()
    q = dechirp_factor(params, f.x)
    return f.with_samples(-np.conj(q) * _derivative(q * f.samples, f.dx, scheme))


def delta_op_n(
    params: OlctParams, f: SampledSignal, n: int, scheme: str = SPECTRAL.derivative
) -> SampledSignal:
    if n < 0:
        raise ValueError(f"Operator power must be >= 0, got {n}")
    for _ in range(n):
        f = delta_op(params, f, scheme)
    return f


def boas_op(params: OlctParams, f: SampledSignal, warn: bool = True) -> SampledSignal:
    """conj(Q(x)) int_x^{x_end} Q(t) f(t) dt by reverse cumulative trapezoid."""
    params.require_main_branch()
    if warn:
        ratio = edge_ratio(f, "right")
        if ratio > EDGE_LEAKAGE_RATIO:
            warnings.warn(
                f"Boas integral truncated at the grid end: edge/peak = {ratio:.3g}",
                EdgeLeakage,
                stacklevel=2,
            )
    q = dechirp_factor(params, f.x)
    weighted = q * f.samples
    tail = cumulative_trapezoid(weighted[::-1], dx=f.dx, initial=0)[::-1]
    return f.with_samples(np.conj(q) * tail)


def boas_op_n(params: OlctParams, f: SampledSignal, n: int) -> SampledSignal:
    for _ in range(n):
        f = boas_op(params, f)
    return f


def measure_support(spectrum: Spectrum, threshold: float = SUPPORT_THRESHOLD):
    """(sup, inf) of |u/b| over the points where |F| exceeds threshold * peak."""
    magnitude = np.abs(spectrum.samples)
    peak = magnitude.max()
    if peak == 0:
        return math.nan, math.nan
    scaled = np.abs(spectrum.u / spectrum.params.b)[magnitude > threshold * peak]
    return float(scaled.max()), float(scaled.min())


@frozen(eq=False)
class OperatorSequence:
    operator: str
    orders: np.ndarray
    norms: np.ndarray
    log_norms: np.ndarray
    roots: np.ndarray
    estimate: float
    method: str
    gamma_direct: float
    degenerate: bool = False
    capped: bool = False
    details: Dict[str, Any] = field(factory=dict)

    def to_dict(self):
        return jsonable(
            {
                "operator": self.operator,
                "orders": self.orders,
                "norms": self.norms,
                "log_norms": self.log_norms,
                "roots": self.roots,
                "estimate": self.estimate,
                "method": self.method,
                "gamma_direct": self.gamma_direct,
                "degenerate": self.degenerate,
                "capped": self.capped,
                "details": self.details,
            }
        )


def extrapolate(orders, log_norms, method: str = SPECTRAL.method) -> float:
    """Limit of ||A^n f||^(1/n) from the tail of the sequence.

    richardson fits a_n = L + c/n; power_law fits
    2 log||A^n f|| = 2n log L + log C - p log n.
    """
    if method not in EXTRAPOLATION_METHODS:
        raise ValueError(
            f"Unknown extrapolation '{method}', expected {EXTRAPOLATION_METHODS}"
        )
    orders = np.asarray(orders, dtype=float)
    log_norms = np.asarray(log_norms, dtype=float)
    roots = np.exp(log_norms / orders)
    if method == "last_value" or len(orders) < 2:
        return float(roots[-1])

    tail = max(2, int(math.ceil(EXTRAPOLATION_TAIL * len(orders))))
    n, a, log_a = orders[-tail:], roots[-tail:], log_norms[-tail:]
    if method == "power_law" and tail >= 3:
        design = np.column_stack([2 * n, np.ones_like(n), -np.log(n)])
        coefficients, *_ = np.linalg.lstsq(design, 2 * log_a, rcond=None)
        return float(np.exp(coefficients[0]))
    slope, intercept = np.polyfit(1 / n, a, 1)
    return float(intercept)


def _support_projector(params: OlctParams, f: SampledSignal, spectrum: Spectrum):
    plan = plan_for(params, f)
    magnitude = np.abs(spectrum.samples)
    mask = magnitude > SUPPORT_THRESHOLD * magnitude.max()

    def project(samples):
        return plan.adjoint(mask * plan.forward(samples))

    return project


def _iterate(f, step, n_max, project, overflow_error):
    """log ||A^n f|| for n = 1..n_max with the iterate renormalized each step."""
    current = f.samples / f.norm()
    log_norm = math.log(f.norm())
    log_norms = []
    for _ in range(n_max):
        current = step(current)
        if project is not None:
            current = project(current)
        growth = float(np.sqrt(np.sum(np.abs(current) ** 2) * f.dx))
        if not math.isfinite(growth) or growth == 0:
            break
        log_norm += math.log(growth)
        log_norms.append(log_norm)
        current = current / growth
    if len(log_norms) < 2:
        raise overflow_error(
            f"Operator norms left the floating-point range after {len(log_norms)} terms"
        )
    capped = len(log_norms) < n_max
    if capped:
        logger.warning(f"Operator sequence capped at n = {len(log_norms)} of {n_max}")
    return np.array(log_norms), capped


def _degenerate_sequence(operator, n_max, method):
    zeros = np.zeros(n_max)
    return OperatorSequence(
        operator,
        np.arange(1, n_max + 1),
        zeros,
        np.full(n_max, -np.inf),
        zeros.copy(),
        math.nan,
        method,
        math.nan,
        degenerate=True,
    )


def _build_sequence(operator, log_norms, method, gamma_direct, capped, details):
    orders = np.arange(1, len(log_norms) + 1)
    with np.errstate(over="ignore"):
        norms = np.exp(log_norms)
    return OperatorSequence(
        operator,
        orders,
        norms,
        log_norms,
        np.exp(log_norms / orders),
        extrapolate(orders, log_norms, method),
        method,
        gamma_direct,
        capped=capped,
        details=details,
    )


def pw_bandwidth_estimate(
    params: OlctParams,
    f: SampledSignal,
    n_max: int = SPECTRAL.n_max,
    method: str = SPECTRAL.method,
    scheme: str = SPECTRAL.derivative,
    project: bool = SPECTRAL.project,
) -> OperatorSequence:
    """||Delta^n f||^(1/n) and its limit, the band limit sup |u/b| of the spectrum."""
    params.require_main_branch()
    if n_max < MIN_SEQUENCE_LENGTH:
        raise ValueError(f"n_max must be at least {MIN_SEQUENCE_LENGTH}, got {n_max}")
    if not np.any(f.samples):
        return _degenerate_sequence("delta", n_max, method)

    spectrum = olct_fast(params, f)
    gamma_sup, _ = measure_support(spectrum)
    projector = _support_projector(params, f, spectrum) if project else None
    q = dechirp_factor(params, f.x)

    def step(samples):
        return -np.conj(q) * _derivative(q * samples, f.dx, scheme)

    log_norms, capped = _iterate(f, step, n_max, projector, NumericalOverflow)
    return _build_sequence(
        "delta",
        log_norms,
        method,
        gamma_sup,
        capped,
        {"projected": project, "derivative": scheme},
    )


def boas_highpass_estimate(
    params: OlctParams,
    f: SampledSignal,
    n_max: int = SPECTRAL.n_max,
    method: str = SPECTRAL.method,
    project: bool = SPECTRAL.project,
) -> OperatorSequence:
    """||B^n f||^(1/n) and its limit R, expected at 1 / inf |u/b| over the support."""
    params.require_main_branch()
    if n_max < MIN_SEQUENCE_LENGTH:
        raise ValueError(f"n_max must be at least {MIN_SEQUENCE_LENGTH}, got {n_max}")
    if not np.any(f.samples):
        return _degenerate_sequence("boas", n_max, method)

    spectrum = olct_fast(params, f)
    _, gamma_inf = measure_support(spectrum)
    projector = _support_projector(params, f, spectrum) if project else None
    q = dechirp_factor(params, f.x)

    def step(samples):
        tail = cumulative_trapezoid((q * samples)[::-1], dx=f.dx, initial=0)[::-1]
        return np.conj(q) * tail

    log_norms, capped = _iterate(f, step, n_max, projector, NumericalUnderflow)
    sequence = _build_sequence(
        "boas",
        log_norms,
        method,
        gamma_inf,
        capped,
        {
            "projected": project,
            "expected_limit": 1 / gamma_inf if gamma_inf else math.inf,
        },
    )
    return sequence


def _interior_mask(spectrum: Spectrum, fraction=INTERIOR_FRACTION):
    n = spectrum.n
    offset = np.abs(np.arange(n) - n // 2)
    return offset <= fraction * n / 2


def verify_delta_eigen(
    params: OlctParams,
    f: SampledSignal,
    n: int,
    tolerance=None,
    scheme: str = SPECTRAL.derivative,
) -> VerificationReport:
    """O(Delta^n f)(u) against (-iu/b)^n F(u) on the interior of the u grid."""
    if tolerance is None:
        tolerances = list(TOLERANCES.delta)
        tolerance = tolerances[min(n, len(tolerances)) - 1]
    F = olct_fast(params, f)
    lhs = olct_fast(params, delta_op_n(params, f, n, scheme)).samples
    rhs = (-1j * F.u / params.b) ** n * F.samples
    max_abs, rel = relative_max_error(lhs, rhs, mask=_interior_mask(F))
    return VerificationReport.build(
        f"delta_eigen_n{n}", max_abs, rel, tolerance, order=n, derivative=scheme
    )


def boas_multiplier(params: OlctParams, u, n: int, form: str):
    """(ib/u)^n, or the printed (b/(iu))^n; the two agree for even n."""
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if form == "consistent":
            return (1j * params.b / u) ** n
        if form == "printed":
            return (params.b / (1j * u)) ** n
    raise ValueError(f"Unknown Boas multiplier '{form}', expected {BOAS_MULTIPLIERS}")


def verify_boas_relation(
    params: OlctParams,
    f: SampledSignal,
    n: int,
    exclusion: float = SPECTRAL.boas_exclusion,
    tolerance=TOLERANCES.boas,
) -> VerificationReport:
    """O(B^n f)(u) against the Boas multiplier times F(u) where |u/b| >= exclusion."""
    F = olct_fast(params, f)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EdgeLeakage)
        lhs = olct_fast(params, boas_op_n(params, f, n)).samples
    outside = np.abs(F.u / params.b) >= exclusion
    errors, abs_errors = {}, {}
    for form in BOAS_MULTIPLIERS:
        rhs = np.where(outside, boas_multiplier(params, F.u, n, form), 0) * F.samples
        abs_errors[form], errors[form] = relative_max_error(lhs, rhs, mask=outside)
    best = min(errors, key=errors.get)
    return VerificationReport.build(
        f"boas_relation_n{n}",
        abs_errors[best],
        errors[best],
        tolerance,
        order=n,
        exclusion=exclusion,
        form_errors=errors,
        matching_forms=[form for form in BOAS_MULTIPLIERS if errors[form] <= tolerance],
    )


def verify_delta_boas_inverse(
    params: OlctParams,
    f: SampledSignal,
    n: int = 1,
    tolerance=TOLERANCES.delta_boas_inverse,
) -> VerificationReport:
    """Delta^n B^n f = f for a high-pass f."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EdgeLeakage)
        restored = delta_op_n(params, boas_op_n(params, f, n), n)
    max_abs, rel = relative_max_error(restored.samples, f.samples)
    _, l2 = relative_l2_error(restored.samples, f.samples)
    return VerificationReport.build(
        f"delta_boas_inverse_n{n}", max_abs, rel, tolerance, order=n, rel_l2_err=l2
    )


def verify_pw_bound(
    params: OlctParams,
    f: SampledSignal,
    n_max: int = SPECTRAL.n_max,
    slack: float = PW_BOUND_SLACK,
) -> VerificationReport:
    """Root sequence against the band limit for every computed n.

    Gates on both ||Delta^n f||^(1/n) <= gamma ||f||^(1/n) (1 + slack), the
    sup bound, and ||Delta^n f||^(1/n) <= gamma (1 + slack), which inputs of
    large energy overshoot at small n.
    """
    sequence = pw_bandwidth_estimate(params, f, n_max)
    if sequence.degenerate:
        return VerificationReport.build("pw_bound", 0.0, 0.0, slack, degenerate=True)
    gamma = sequence.gamma_direct
    sup_excess = sequence.roots / (gamma * f.norm() ** (1 / sequence.orders)) - 1
    root_excess = sequence.roots / gamma - 1
    excess = np.maximum(sup_excess, root_excess)
    worst = int(np.argmax(excess))
    return VerificationReport.build(
        "pw_bound",
        float(max(0.0, excess[worst] * gamma)),
        float(max(0.0, excess[worst])),
        slack,
        gamma_direct=gamma,
        worst_order=int(sequence.orders[worst]),
        max_root=float(sequence.roots.max()),
        sup_bound_holds=bool(sup_excess.max() <= slack),
        roots=sequence.roots,
    )
