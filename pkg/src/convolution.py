"""
Convolution and correlation for the OLCT, their spectral-product forms and
the checks of the product theorems.
"""
import math

import numpy as np
import scipy.fft

from src.constants.common import (
    CHIRP_T_FORMS,
    CONVOLUTION_VARIANTS,
    CORRELATION_CHIRPS,
    CORRELATION_VARIANTS,
)
from src.constants.numerics import QUADRATURE_BLOCK_ROWS
from src.core import olct_direct, olct_fast, olct_inverse
from src.defaults import CONFIG_DEFAULTS
from src.exceptions import GridMismatch
from src.logger import logger
from src.params import OlctParams
from src.signal import (
    Grid,
    SampledSignal,
    Spectrum,
    next_power_of_two,
    trapezoid_weights,
)
from src.verification import (
    VerificationReport,
    ratio_statistics,
    relative_max_error,
)

TOLERANCES = CONFIG_DEFAULTS.tolerances

# offsets closer than this to a whole half-step are treated as aligned
ALIGNMENT_SLACK = 1e-9


def chirp_T(params: OlctParams, u, form: str = "product"):
    """Unit-modulus factor of the convolution theorem.

    ``product``: T(u) = exp((i/2b)(6u(d u0 - b w0) - 7 d u^2)), the factor left
    over when the consistent convolution is transformed.
    ``as_printed``: exp(-(i/2b)(6u(d u0 - b w0) + 7 d u^2)). The two agree when
    d u0 = b w0.
    """
    params.require_main_branch()
    if form not in CHIRP_T_FORMS:
        raise ValueError(f"Unknown T(u) form '{form}', expected {CHIRP_T_FORMS}")
    p = params
    u = np.asarray(u, dtype=float)
    linear = 6 * u * (p.d * p.u0 - p.b * p.w0)
    if form == "as_printed":
        linear = -linear
    value = np.exp(0.5j * (linear - 7 * p.d * u**2) / p.b)
    return complex(value) if value.ndim == 0 else value


def half_step_table(signal: SampledSignal, base: float):
    """Band-limited samples of the signal on a half-step grid.

    Returns (values, whole) such that the point x0 + (base + i) * dx/2 is read
    from values[whole + i]. Points outside the sampled span read as zero.
    """
    n = signal.n
    whole = math.floor(base + ALIGNMENT_SLACK)
    fraction = base - whole
    if abs(fraction) < ALIGNMENT_SLACK:
        fraction = 0.0
    shift = fraction * signal.dx / 2

    length = next_power_of_two(2 * n)
    padded = np.zeros(length, dtype=np.complex128)
    padded[:n] = signal.samples
    spectrum = scipy.fft.fft(padded)
    half = length // 2
    nyquist = spectrum[half]
    frequencies = scipy.fft.fftfreq(length, signal.dx)
    spectrum = spectrum * np.exp(2j * np.pi * frequencies * shift)

    upsampled = np.zeros(2 * length, dtype=np.complex128)
    upsampled[:half] = spectrum[:half]
    upsampled[-half:] = spectrum[half:]
    # the Nyquist bin is shared between the two new half-band edges
    nyquist_phase = np.exp(1j * np.pi * shift / signal.dx)
    upsampled[-half] = 0.5 * nyquist / nyquist_phase
    upsampled[half] = 0.5 * nyquist * nyquist_phase
    values = 2 * scipy.fft.ifft(upsampled)

    last = 2 * (n - 1) if fraction == 0.0 else 2 * (n - 1) - 1
    values[last + 1 :] = 0
    return values, whole


def _lookup(table, index):
    valid = (index >= 0) & (index < len(table))
    return np.where(valid, table[np.clip(index, 0, len(table) - 1)], 0)


def dilate_signal(signal: SampledSignal) -> SampledSignal:
    """s(2x) on the grid of s."""
    # 2 x_k = x0 + (2 x0 / dx + 4k) dx/2
    table, whole = half_step_table(signal, 2 * signal.x_start / signal.dx)
    return signal.with_samples(_lookup(table, whole + 4 * np.arange(signal.n)))


def _require_same_grid(f: SampledSignal, g: SampledSignal):
    f.grid.require_same(g.grid, "input grids")


def _half_argument_quadrature(f: SampledSignal, g: SampledSignal, phase):
    """sum_k w_k f(t_k) g(x_m/2 - t_k) exp(i phase(x_m, t_k)) over the grid of f."""
    _require_same_grid(f, g)
    n = f.n
    x = f.x
    # x_m/2 - t_k = x0 + (base + m - 2k) dx/2
    base = -3 * f.x_start / f.dx
    table, whole = half_step_table(g, base)
    weighted = trapezoid_weights(n, f.dx) * f.samples
    k = np.arange(n)
    out = np.empty(n, dtype=np.complex128)
    for start in range(0, n, QUADRATURE_BLOCK_ROWS):
        m = np.arange(start, min(start + QUADRATURE_BLOCK_ROWS, n))
        g_values = _lookup(table, whole + m[:, None] - 2 * k[None, :])
        kernel = g_values * np.exp(1j * phase(x[m, None], x[None, :]))
        out[m] = kernel @ weighted
    return out


def convolve_time(
    params: OlctParams,
    f: SampledSignal,
    g: SampledSignal,
    variant: str = CONFIG_DEFAULTS.convolution.variant,
) -> SampledSignal:
    """(f + g)(x) by quadrature over tau with g(x/2 - tau) band-limited.

    ``as_printed`` uses the phase a{(x/2 + 2t)^2 - 6t^2 + x^2/2}, ``consistent``
    uses a{(x/2 + t)^2 - 3t^2 + x^2/2}.
    """
    params.require_main_branch()
    if variant not in CONVOLUTION_VARIANTS:
        raise ValueError(f"Unknown convolution variant '{variant}'")
    p = params

    def phase(x, t):
        if variant == "as_printed":
            quadratic = (x / 2 + 2 * t) ** 2 - 6 * t**2 + x**2 / 2
        else:
            quadratic = (x / 2 + t) ** 2 - 3 * t**2 + x**2 / 2
        return -0.5 * (p.a * quadratic + x * p.u0) / p.b

    values = _half_argument_quadrature(f, g, phase)
    return f.with_samples(p.amplitude * p.offset_phase * values)


def dilate_spectrum(spectrum: Spectrum) -> Spectrum:
    """F(2u) on the grid of twice the density; a native spectrum stays native."""
    n = spectrum.n
    # fine point m sits at (m - n) du/2, twice that is coarse point m - n - u_start/du
    fine = Grid(-n * spectrum.du / 2, spectrum.du / 2, 2 * n)
    origin = -spectrum.u_start / spectrum.du
    if abs(origin - round(origin)) > ALIGNMENT_SLACK:
        raise GridMismatch("u grid origin is off its lattice; cannot dilate on-grid")
    coarse_index = np.arange(2 * n) - n + int(round(origin))
    values = _lookup(spectrum.samples, coarse_index)
    return Spectrum(fine, values, spectrum.params, spectrum.source)


def spectral_product(params: OlctParams, F: Spectrum, G: Spectrum) -> Spectrum:
    """2 T(u) F(2u) G(2u) on the doubled-density grid."""
    F.grid.require_same(G.grid, "spectrum grids")
    dilated_f, dilated_g = dilate_spectrum(F), dilate_spectrum(G)
    logger.debug(f"Spectral product on {dilated_f.n} points, du = {dilated_f.du:g}")
    values = 2 * chirp_T(params, dilated_f.u) * dilated_f.samples * dilated_g.samples
    return dilated_f.with_samples(values)


def convolve_spectral(
    params: OlctParams, f: SampledSignal, g: SampledSignal
) -> SampledSignal:
    """Inverse OLCT of 2 T(u) F(2u) G(2u), O(N log N)."""
    params.require_main_branch()
    _require_same_grid(f, g)
    product = spectral_product(params, olct_fast(params, f), olct_fast(params, g))
    return olct_inverse(product)


def correlation_constant(params: OlctParams) -> complex:
    p = params
    phase = p.c * p.d * p.u0**2 - 2 * p.a * p.d * p.u0 * p.w0 + p.a * p.b * p.w0**2
    return complex(np.exp(0.5j * phase))


def as_signal(spectrum: Spectrum) -> SampledSignal:
    return SampledSignal(spectrum.grid, spectrum.samples)


def correlate(
    params: OlctParams,
    p: SampledSignal,
    q: SampledSignal,
    exponent_variant: str = CONFIG_DEFAULTS.correlation.variant,
) -> SampledSignal:
    """(p x q)(x) by quadrature; spectra are correlated through ``as_signal``.

    The offset term is -4(d u0 - b w0) for ``as_printed`` and
    -x(d u0 - b w0) for ``proof_consistent``.
    """
    params.require_main_branch()
    if exponent_variant not in CORRELATION_VARIANTS:
        raise ValueError(f"Unknown correlation variant '{exponent_variant}'")
    m = params
    offset = m.d * m.u0 - m.b * m.w0

    def phase(x, t):
        extra = -4 * offset if exponent_variant == "as_printed" else -x * offset
        return 0.5 * (m.d * (0.75 * x**2 + t * x - 2 * t**2) + extra) / m.b

    values = _half_argument_quadrature(p, q, phase)
    amplitude = complex(np.sqrt(1j / (2 * np.pi * m.b)))
    return p.with_samples(amplitude * correlation_constant(m) * values)


def verify_convolution_theorem(
    params: OlctParams,
    f: SampledSignal,
    g: SampledSignal,
    tolerance=TOLERANCES.convolution,
    variants=CONVOLUTION_VARIANTS,
) -> VerificationReport:
    """O(f + g)(u) against 2 T(u) F(2u) G(2u), both sides by quadrature.

    u runs over half the native band at twice the density so that 2u is the
    native grid itself and never aliases. The check gates on the product form
    of T; errors against the printed form are reported alongside.
    """
    _require_same_grid(f, g)
    native = olct_fast(params, f).grid
    u_grid = Grid(native.start / 2, native.step / 2, native.n)
    spectra = (
        2
        * olct_direct(params, f, native).samples
        * olct_direct(params, g, native).samples
    )
    rhs = {
        form: chirp_T(params, u_grid.points, form) * spectra for form in CHIRP_T_FORMS
    }
    errors, abs_errors, printed_errors = {}, {}, {}
    for variant in variants:
        lhs = olct_direct(params, convolve_time(params, f, g, variant), u_grid).samples
        abs_errors[variant], errors[variant] = relative_max_error(lhs, rhs["product"])
        _, printed_errors[variant] = relative_max_error(lhs, rhs["as_printed"])
    best = min(errors, key=errors.get)
    return VerificationReport.build(
        "convolution_theorem",
        abs_errors[best],
        errors[best],
        tolerance,
        variant_errors=errors,
        passing_variants=[v for v in variants if errors[v] <= tolerance],
        printed_chirp_errors=printed_errors,
    )


def verify_l1_bound(
    params: OlctParams,
    f: SampledSignal,
    g: SampledSignal,
    variant: str = CONFIG_DEFAULTS.convolution.variant,
) -> VerificationReport:
    """||f + g||_1 <= sqrt(4 / (2 pi |b|)) ||f||_1 ||g||_1."""
    lhs = convolve_time(params, f, g, variant).l1_norm()
    rhs = math.sqrt(4 / (2 * math.pi * abs(params.b))) * f.l1_norm() * g.l1_norm()
    ratio = lhs / rhs if rhs > 0 else 0.0
    return VerificationReport.build(
        "l1_bound",
        max(0.0, lhs - rhs),
        max(0.0, ratio - 1.0),
        0.0,
        lhs=lhs,
        bound=rhs,
        ratio=ratio,
    )


def correlation_chirp(params: OlctParams, x, chirp: str):
    p = params
    x = np.asarray(x, dtype=float)
    if chirp == "statement":
        return chirp_T(params, x)
    return 2 * np.exp(0.5j * (7 * p.a * x**2 + 6 * p.u0 * x) / p.b)


def verify_correlation_theorem(
    params: OlctParams,
    f: SampledSignal,
    g: SampledSignal,
    tolerance=TOLERANCES.correlation,
    oversample: int = 4,
) -> VerificationReport:
    """Four pairings of (statement, proof) chirp with (printed, proof) exponent.

    Right sides correlate the spectra F and G; left sides transform
    chirp(x) f(2x) g(2x) by quadrature on the same u grid. Spectra carry the
    output chirp exp(i d u^2 / 2b), so the u grid is oversampled before G is
    interpolated at half arguments.
    """
    _require_same_grid(f, g)
    n_fft = oversample * next_power_of_two(f.n)
    F, G = olct_fast(params, f, n_fft=n_fft), olct_fast(params, g, n_fft=n_fft)
    product = dilate_signal(f).samples * dilate_signal(g).samples

    lhs = {}
    for chirp in CORRELATION_CHIRPS:
        weighted = f.with_samples(correlation_chirp(params, f.x, chirp) * product)
        lhs[chirp] = olct_direct(params, weighted, F.grid).samples
    rhs = {
        variant: correlate(params, as_signal(F), as_signal(G), variant).samples
        for variant in CORRELATION_VARIANTS
    }

    pairings = {}
    for chirp in CORRELATION_CHIRPS:
        for variant in CORRELATION_VARIANTS:
            max_abs, rel = relative_max_error(lhs[chirp], rhs[variant])
            mean, deviation = ratio_statistics(lhs[chirp], rhs[variant])
            pairings[f"{chirp}/{variant}"] = {
                "max_abs_err": max_abs,
                "rel_err": rel,
                "ratio_mean": mean,
                "ratio_std": deviation,
                "passed": rel <= tolerance,
            }
    best = min(pairings, key=lambda key: pairings[key]["rel_err"])
    return VerificationReport.build(
        "correlation_theorem",
        pairings[best]["max_abs_err"],
        pairings[best]["rel_err"],
        tolerance,
        pairings=pairings,
        passing_pairings=[key for key, value in pairings.items() if value["passed"]],
        offsets_zero=params.u0 == 0 and params.w0 == 0,
    )


def classical_dilated_convolution(f: SampledSignal, g: SampledSignal) -> np.ndarray:
    """(f * g)(x/2) on the even output points, by direct summation.

    Only the even points of a grid whose origin is a whole number of steps
    land on full-step arguments; others are returned as nan.
    """
    _require_same_grid(f, g)
    n = f.n
    full = np.convolve(trapezoid_weights(n, f.dx) * f.samples, g.samples)
    # full[j] approximates (f * g)(2 x0 + j dx)
    values = np.full(n, np.nan + 0j)
    origin = f.x_start / f.dx
    if abs(origin - round(origin)) > ALIGNMENT_SLACK:
        return values
    for m in range(0, n, 2):
        # x_m / 2 = 2 x0 + j dx  =>  j = m/2 - 3 x0 / (2 dx)
        j = m // 2 - 3 * int(round(origin)) / 2
        if float(j).is_integer() and 0 <= j < len(full):
            values[m] = full[int(j)]
    return values
