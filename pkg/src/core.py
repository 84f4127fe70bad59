"""
Offset linear canonical transform: kernel, quadrature oracle, chirp-FFT fast
path, b = 0 branch and inverses, plus the identity checks of the transform.
"""
import math
import warnings
from functools import lru_cache
from typing import Optional

import numpy as np
import scipy.fft
from attrs import frozen

from src.constants.common import INVERSE_METHODS
from src.constants.numerics import (
    DIRECT_BLOCK_ROWS,
    EDGE_LEAKAGE_RATIO,
    GRID_LAW_RTOL,
    PLAN_CACHE_SIZE,
)
from src.defaults import CONFIG_DEFAULTS
from src.exceptions import DegenerateCase, EdgeLeakage, GridMismatch
from src.logger import logger
from src.params import OlctParams, inverse_params, special_params
from src.signal import Grid, SampledSignal, Spectrum, next_power_of_two
from src.signal import trapezoid_weights
from src.verification import (
    VerificationReport,
    ratio_statistics,
    relative_l2_error,
    relative_max_error,
)

TOLERANCES = CONFIG_DEFAULTS.tolerances

# constant factors tried against the completed inverse tuple
INVERSE_TUPLE_CONSTANTS = ["none", "half_phase", "b_phase"]


def edge_ratio(signal: SampledSignal, side="both") -> float:
    magnitude = np.abs(signal.samples)
    peak = magnitude.max()
    if peak == 0:
        return 0.0
    ends = {"both": (0, -1), "left": (0,), "right": (-1,)}[side]
    return float(max(magnitude[i] for i in ends) / peak)


def check_edge_leakage(signal: SampledSignal, side="both") -> float:
    ratio = edge_ratio(signal, side)
    if ratio > EDGE_LEAKAGE_RATIO:
        warnings.warn(
            f"Signal is not negligible at the grid {side} end(s): "
            f"edge/peak = {ratio:.3g} > {EDGE_LEAKAGE_RATIO:g}",
            EdgeLeakage,
            stacklevel=3,
        )
    return ratio


def dechirp_factor(params: OlctParams, x) -> np.ndarray:
    """Q(x) = exp((i/2b)(a x^2 + 2 u0 x))."""
    x = np.asarray(x, dtype=float)
    return np.exp(0.5j * (params.a * x**2 + 2 * params.u0 * x) / params.b)


def output_chirp(params: OlctParams, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    p = params
    return np.exp(0.5j * (p.d * u**2 - 2 * u * (p.d * p.u0 - p.b * p.w0)) / p.b)


def kernel(params: OlctParams, u, x):
    """K(u, x); broadcasts over array arguments."""
    params.require_main_branch()
    p = params
    u = np.asarray(u, dtype=float)
    x = np.asarray(x, dtype=float)
    phase = (
        p.a * x**2
        + 2 * x * (p.u0 - u)
        - 2 * u * (p.d * p.u0 - p.b * p.w0)
        + p.d * u**2
    ) / (2 * p.b)
    value = p.amplitude * p.offset_phase * np.exp(1j * phase)
    return complex(value) if value.ndim == 0 else value


def native_grid(params: OlctParams, dx: float, n_fft: int) -> Grid:
    du = 2 * math.pi * abs(params.b) / (n_fft * dx)
    return Grid(-(n_fft // 2) * du, du, n_fft)


@frozen(eq=False)
class OlctPlan:
    """Read-only chirps and grids of the fast transform for one x grid."""

    params: OlctParams
    source: Grid
    u_grid: Grid
    prechirp: np.ndarray
    dechirp: np.ndarray
    postchirp: np.ndarray

    @property
    def n_fft(self) -> int:
        return self.u_grid.n

    def _spin(self, values, forward: bool) -> np.ndarray:
        # sum_k v_k exp(-+ i s 2 pi j k / N), s = sign(b)
        if forward == (self.params.sign_b > 0):
            return scipy.fft.fft(values)
        return self.n_fft * scipy.fft.ifft(values)

    def forward(self, samples) -> np.ndarray:
        padded = np.zeros(self.n_fft, dtype=np.complex128)
        padded[: self.source.n] = self.prechirp * samples
        return self.postchirp * self._spin(padded, forward=True)

    def adjoint(self, values) -> np.ndarray:
        spun = self._spin(np.conj(self.postchirp) * values, forward=False)
        return self.u_grid.step * self.dechirp * spun[: self.source.n]


@lru_cache(maxsize=PLAN_CACHE_SIZE)
def make_plan(
    params: OlctParams, x_start: float, dx: float, n: int, n_fft: Optional[int] = None
) -> OlctPlan:
    params.require_main_branch()
    source = Grid(x_start, dx, n)
    minimum = next_power_of_two(n)
    n_fft = minimum if n_fft is None else int(n_fft)
    if n_fft < minimum or n_fft != next_power_of_two(n_fft):
        raise GridMismatch(f"n_fft must be a power of two >= {minimum}, got {n_fft}")
    if n_fft != n:
        logger.debug(f"Zero-padding {n} samples to {n_fft} for the fast transform")

    x = source.points
    u_grid = native_grid(params, dx, n_fft)
    u = u_grid.points
    # exp(i s pi k) = (-1)^k recentres the FFT axis on omega = 0
    alternating = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    q = dechirp_factor(params, x)
    prechirp = trapezoid_weights(n, dx) * q * alternating
    dechirp = np.conj(q) * alternating
    postchirp = (
        params.amplitude
        * params.offset_phase
        * output_chirp(params, u)
        * np.exp(-1j * u * x_start / params.b)
    )
    for array in (prechirp, dechirp, postchirp):
        array.setflags(write=False)
    return OlctPlan(params, source, u_grid, prechirp, dechirp, postchirp)


def plan_for(params: OlctParams, signal: SampledSignal, n_fft=None) -> OlctPlan:
    return make_plan(params, signal.x_start, signal.dx, signal.n, n_fft)


def olct_direct(
    params: OlctParams, f: SampledSignal, u_grid: Optional[Grid] = None
) -> Spectrum:
    """Trapezoid quadrature of the kernel integral, O(N M)."""
    params.require_main_branch()
    check_edge_leakage(f)
    if u_grid is None:
        u_grid = native_grid(params, f.dx, next_power_of_two(f.n))
    x = f.x
    weighted = trapezoid_weights(f.n, f.dx) * f.samples
    u = u_grid.points
    values = np.empty(u_grid.n, dtype=np.complex128)
    for start in range(0, u_grid.n, DIRECT_BLOCK_ROWS):
        rows = slice(start, start + DIRECT_BLOCK_ROWS)
        values[rows] = kernel(params, u[rows, None], x[None, :]) @ weighted
    return Spectrum(u_grid, values, params, f.grid)


def olct_fast(
    params: OlctParams,
    f: SampledSignal,
    n_fft: Optional[int] = None,
    du: Optional[float] = None,
) -> Spectrum:
    """Chirp multiply, FFT, chirp multiply on the native grid du = 2 pi |b| / (N dx)."""
    params.require_main_branch()
    check_edge_leakage(f)
    plan = plan_for(params, f, n_fft)
    if du is not None and not math.isclose(du, plan.u_grid.step, rel_tol=GRID_LAW_RTOL):
        raise GridMismatch(
            f"du = {du!r} violates the fast-path grid law, expected "
            f"2 pi |b| / (N dx) = {plan.u_grid.step!r} for N = {plan.n_fft}"
        )
    return Spectrum(plan.u_grid, plan.forward(f.samples), params, f.grid)


def olct_b_zero(params: OlctParams, f: SampledSignal) -> SampledSignal:
    """b = 0 branch: sqrt(d) exp(i(cd/2)(u - u0)^2 + i w0 u) f(d(u - u0))."""
    p = params
    if p.is_main_branch:
        raise DegenerateCase(f"b = {p.b!r} is not zero; use the main branch")
    if p.d <= 0:
        raise DegenerateCase(f"The b = 0 branch needs d > 0, got d = {p.d!r}")
    u_grid = Grid(f.x_start / p.d + p.u0, f.dx / p.d, f.n)
    u = u_grid.points
    phase = 0.5 * p.c * p.d * (u - p.u0) ** 2 + p.w0 * u
    return SampledSignal(u_grid, math.sqrt(p.d) * np.exp(1j * phase) * f.samples)


def _require_source(spectrum: Spectrum) -> Grid:
    if spectrum.source is None:
        raise GridMismatch("The spectrum does not record the x grid it came from")
    return spectrum.source


def _inverse_direct(spectrum: Spectrum, x_grid: Grid) -> np.ndarray:
    params = spectrum.params
    x = x_grid.points
    u = spectrum.u
    values = np.empty(x_grid.n, dtype=np.complex128)
    weighted = spectrum.du * spectrum.samples
    for start in range(0, x_grid.n, DIRECT_BLOCK_ROWS):
        rows = slice(start, start + DIRECT_BLOCK_ROWS)
        values[rows] = np.conj(kernel(params, u[None, :], x[rows, None])) @ weighted
    return values


def tuple_constant(params: OlctParams, candidate: str) -> complex:
    p = params
    phase = p.c * p.d * p.u0**2 - 2 * p.a * p.d * p.u0 * p.w0 + p.a * p.b * p.w0**2
    if candidate == "none":
        return 1.0 + 0j
    if candidate == "half_phase":
        return complex(np.exp(0.5j * phase))
    if candidate == "b_phase":
        return complex(np.exp(1j * phase / p.b))
    raise ValueError(
        f"Unknown constant '{candidate}', expected {INVERSE_TUPLE_CONSTANTS}"
    )


def _inverse_tuple(spectrum: Spectrum, x_grid: Grid, constant: str) -> np.ndarray:
    inverse = inverse_params(spectrum.params)
    x = x_grid.points
    u = spectrum.u
    values = np.empty(x_grid.n, dtype=np.complex128)
    weighted = spectrum.du * spectrum.samples
    for start in range(0, x_grid.n, DIRECT_BLOCK_ROWS):
        rows = slice(start, start + DIRECT_BLOCK_ROWS)
        # O^{M^-1} treats u as its input variable and x as its output
        values[rows] = kernel(inverse, x[rows, None], u[None, :]) @ weighted
    return tuple_constant(spectrum.params, constant) * values


def olct_inverse(
    spectrum: Spectrum,
    method: str = "adjoint",
    x_grid: Optional[Grid] = None,
    constant: str = "none",
) -> SampledSignal:
    """Back to the x grid the spectrum was taken from.

    ``adjoint`` conjugates the kernel and runs the fast path when the spectrum
    sits on its native grid, quadrature otherwise. ``direct`` always uses
    quadrature. ``tuple`` applies the completed inverse parameter set.
    """
    spectrum.params.require_main_branch()
    if method not in INVERSE_METHODS:
        raise ValueError(
            f"Unknown inverse method '{method}', expected {INVERSE_METHODS}"
        )
    if x_grid is None:
        x_grid = _require_source(spectrum)

    if method == "adjoint" and spectrum.is_native() and x_grid == spectrum.source:
        source = spectrum.source
        plan = make_plan(
            spectrum.params, source.start, source.step, source.n, spectrum.n
        )
        return SampledSignal(source, plan.adjoint(spectrum.samples))
    if method == "tuple":
        return SampledSignal(x_grid, _inverse_tuple(spectrum, x_grid, constant))
    if method == "adjoint":
        logger.debug("Spectrum is off its native grid, inverting by quadrature")
    return SampledSignal(x_grid, _inverse_direct(spectrum, x_grid))


def _relative(error, scale):
    if scale > 0:
        return error / scale
    return 0.0 if error == 0 else math.inf


def verify_parseval(
    params: OlctParams,
    f: SampledSignal,
    g: Optional[SampledSignal] = None,
    tolerance=TOLERANCES.parseval,
) -> VerificationReport:
    """Norm and inner-product preservation through the fast transform."""
    g = f if g is None else g
    F, G = olct_fast(params, f), olct_fast(params, g)
    energy_in = f.norm() ** 2
    energy_out = F.norm() ** 2
    inner_in = f.inner(g)
    inner_out = complex(np.sum(F.samples * np.conj(G.samples)) * F.du)

    norm_abs = abs(energy_in - energy_out)
    norm_rel = _relative(norm_abs, energy_in)
    inner_abs = abs(inner_in - inner_out)
    inner_rel = _relative(inner_abs, f.norm() * g.norm())
    return VerificationReport.build(
        "parseval",
        max(norm_abs, inner_abs),
        max(norm_rel, inner_rel),
        tolerance,
        energy_in=energy_in,
        energy_out=energy_out,
        norm_rel_err=norm_rel,
        inner_rel_err=inner_rel,
        edge_ratio=max(edge_ratio(f), edge_ratio(g)),
    )


def verify_riemann_lebesgue(
    params: OlctParams,
    f: SampledSignal,
    edge_fraction=CONFIG_DEFAULTS.verify.edge_fraction,
    tolerance=TOLERANCES.riemann_lebesgue,
) -> VerificationReport:
    F = olct_fast(params, f)
    magnitude = np.abs(F.samples)
    peak = float(magnitude.max())
    width = max(1, int(edge_fraction * F.n))
    outer = float(max(magnitude[:width].max(), magnitude[-width:].max()))
    ratio = outer / peak if peak > 0 else 0.0
    return VerificationReport.build(
        "riemann_lebesgue",
        outer,
        ratio,
        tolerance,
        edge_fraction=edge_fraction,
        edge_points=width,
        peak=peak,
        u_max=float(abs(F.u[0])),
    )


def verify_oracle(
    params: OlctParams, f: SampledSignal, tolerance=TOLERANCES.oracle
) -> VerificationReport:
    fast = olct_fast(params, f)
    direct = olct_direct(params, f, fast.grid)
    max_abs, rel = relative_max_error(fast.samples, direct.samples, floor=0.0)
    return VerificationReport.build(
        "oracle", max_abs, rel, tolerance, n=f.n, n_fft=fast.n, edge_ratio=edge_ratio(f)
    )


def verify_round_trip(
    params: OlctParams, f: SampledSignal, tolerance=TOLERANCES.round_trip
) -> VerificationReport:
    restored = olct_inverse(olct_fast(params, f))
    max_abs, rel = relative_l2_error(restored.samples, f.samples)
    return VerificationReport.build(
        "round_trip", max_abs, rel, tolerance, edge_ratio=edge_ratio(f)
    )


def classical_fourier(f: SampledSignal, u_grid: Grid) -> np.ndarray:
    """(1/sqrt(2 pi)) int f(x) exp(-iux) dx through numpy's DFT.

    The u grid must be the centred DFT grid of the zero-padded signal.
    """
    n_fft = u_grid.n
    padded = np.zeros(n_fft, dtype=np.complex128)
    padded[: f.n] = trapezoid_weights(f.n, f.dx) * f.samples
    frequencies = 2 * np.pi * np.fft.fftshift(np.fft.fftfreq(n_fft, f.dx))
    if not np.allclose(frequencies, u_grid.points, rtol=0, atol=1e-9 * u_grid.step):
        raise GridMismatch("u grid is not the centred DFT grid of the signal")
    spectrum = np.fft.fftshift(np.fft.fft(padded))
    return spectrum * np.exp(-1j * frequencies * f.x_start) / np.sqrt(2 * np.pi)


def classical_frft(f: SampledSignal, alpha: float, u_grid: Grid) -> np.ndarray:
    """Fractional Fourier transform with the textbook kernel
    sqrt((1 - i cot a) / 2 pi) exp(i (cot a / 2)(x^2 + u^2) - i x u / sin a)."""
    cot, csc = 1 / math.tan(alpha), 1 / math.sin(alpha)
    amplitude = np.sqrt((1 - 1j * cot) / (2 * np.pi))
    x = f.x
    weighted = trapezoid_weights(f.n, f.dx) * f.samples
    u = u_grid.points
    values = np.empty(u_grid.n, dtype=np.complex128)
    for start in range(0, u_grid.n, DIRECT_BLOCK_ROWS):
        block = u[start : start + DIRECT_BLOCK_ROWS, None]
        phase = 0.5 * cot * (x[None, :] ** 2 + block**2) - csc * x[None, :] * block
        values[start : start + DIRECT_BLOCK_ROWS] = np.exp(1j * phase) @ weighted
    return amplitude * values


def verify_reduction(
    kind: str,
    f: SampledSignal,
    alpha: Optional[float] = None,
    tolerance=TOLERANCES.reduction,
) -> VerificationReport:
    """FT / FrFT parameter sets against independent classical transforms.

    The two must agree up to one unit-modulus constant: the ratio's deviation
    over the points above 1e-6 of the peak is scored.
    """
    if kind == "ft":
        params = special_params("ft")
        F = olct_fast(params, f)
        reference = classical_fourier(f, F.grid)
    elif kind == "frft":
        params = special_params("frft", alpha)
        F = olct_fast(params, f)
        reference = classical_frft(f, alpha, F.grid)
    else:
        raise ValueError(
            f"No classical reference for '{kind}', expected 'ft' or 'frft'"
        )
    mean, deviation = ratio_statistics(F.samples, reference, floor=1e-6)
    max_abs = abs(abs(mean) - 1.0) if math.isfinite(deviation) else math.nan
    return VerificationReport.build(
        f"reduction_{kind}",
        max_abs,
        deviation if math.isfinite(deviation) else 0.0,
        tolerance,
        constant=mean,
        constant_modulus=abs(mean) if math.isfinite(deviation) else None,
        params=params.as_list(),
    )


def verify_inverse_tuple(
    params: OlctParams, f: SampledSignal, tolerance=TOLERANCES.inverse_tuple
) -> VerificationReport:
    """Adjoint inverse against the completed inverse tuple under each constant.

    Passes on the adjoint round trip; details list which constants reproduce it.
    """
    F = olct_fast(params, f)
    adjoint = olct_inverse(F)
    _, adjoint_err = relative_l2_error(adjoint.samples, f.samples)
    candidate_errors = {}
    for candidate in INVERSE_TUPLE_CONSTANTS:
        restored = olct_inverse(F, method="tuple", constant=candidate)
        _, candidate_errors[candidate] = relative_l2_error(
            restored.samples, adjoint.samples
        )
    matching = [c for c, err in candidate_errors.items() if err <= tolerance]
    _, ratio_deviation = ratio_statistics(
        olct_inverse(F, method="tuple").samples, adjoint.samples
    )
    return VerificationReport.build(
        "inverse_tuple",
        min(candidate_errors.values()),
        adjoint_err,
        tolerance,
        inverse_params=inverse_params(params).as_list(),
        candidate_errors=candidate_errors,
        matching_constants=matching,
        constant_ratio_deviation=ratio_deviation,
    )
