"""
Multiplicative filtering in the OLCT domain.

A mask multiplies the spectrum of the input, the inverse transform returns the
filtered signal. Masks built from a prototype signal g carry the convolution
route: they live on the doubled-density grid and multiply F(2u) by
2 T(u) G(2u), so filtering with them is the spectral form of f + g.
"""
import math
from typing import Optional, Tuple

import numpy as np
from attrs import field, frozen

from src.constants.common import FILTER_KINDS
from src.constants.numerics import DEFAULT_ROLLOFF_BINS
from src.convolution import chirp_T, convolve_spectral, dilate_spectrum
from src.core import native_grid, olct_fast, olct_inverse
from src.exceptions import ConfigInvalid, EdgeOutOfRange, GridMismatch, OlctError
from src.generators import (
    complex_noise,
    lfm_chirp,
    noise_generator,
    raised_cosine_ramp,
    smoothed_rect,
)
from src.logger import logger
from src.params import OlctParams
from src.signal import (
    Grid,
    SampledSignal,
    Spectrum,
    next_power_of_two,
    readonly_complex,
)
from src.verification import jsonable


def _edges(value):
    if isinstance(value, (int, float)):
        value = [value]
    return tuple(float(edge) for edge in value)


def _optional_float(value):
    return None if value is None else float(value)


@frozen
class FilterSpec:
    kind: str
    edges: Tuple[float, ...] = field(converter=_edges)
    # half-width of the raised-cosine transitions; None means two u bins
    rolloff: Optional[float] = field(converter=_optional_float, default=None)

    def __attrs_post_init__(self):
        if self.kind not in FILTER_KINDS:
            raise ConfigInvalid(
                f"Unknown filter kind '{self.kind}', expected one of {FILTER_KINDS}"
            )
        if self.rolloff is not None and self.rolloff < 0:
            raise ConfigInvalid(f"rolloff must be >= 0, got {self.rolloff}")
        if self.kind == "band_pass":
            if len(self.edges) != 2 or not self.edges[0] < self.edges[1]:
                raise ConfigInvalid(
                    f"band_pass needs two increasing edges, got {self.edges}"
                )
        elif len(self.edges) != 1 or self.edges[0] < 0:
            raise ConfigInvalid(
                f"{self.kind} needs one non-negative edge on |u|, got {self.edges}"
            )

    def rolloff_for(self, u_grid: Grid) -> float:
        rolloff = self.rolloff
        if rolloff is None:
            rolloff = DEFAULT_ROLLOFF_BINS * u_grid.step
        if self.kind == "band_pass":
            low, high = self.edges
            if rolloff >= (high - low) / 2:
                raise ConfigInvalid(
                    f"rolloff {rolloff:g} must be under half the band width "
                    f"{high - low:g}"
                )
        return rolloff


@frozen(eq=False)
class Mask:
    """Mask values on a u grid; dilation 2 masks multiply F(2u)."""

    grid: Grid
    values: np.ndarray = field(converter=readonly_complex)
    dilation: int = field(default=1)

    @dilation.validator
    def _check_dilation(self, attribute, value):
        if value not in (1, 2):
            raise ConfigInvalid(f"Mask dilation must be 1 or 2, got {value}")

    def __attrs_post_init__(self):
        if len(self.values) != self.grid.n:
            raise GridMismatch(
                f"{len(self.values)} mask values do not fit a grid of {self.grid.n}"
            )


def design_mask(spec: FilterSpec, u_grid: Grid) -> Mask:
    """Raised-cosine pass-band mask, real values in [0, 1]."""
    u = u_grid.points
    rolloff = spec.rolloff_for(u_grid)
    if spec.kind == "band_pass":
        low, high = spec.edges
        if low < u_grid.start or high > u_grid.stop:
            raise EdgeOutOfRange(
                f"Band [{low:g}, {high:g}] leaves the u grid "
                f"[{u_grid.start:g}, {u_grid.stop:g}]"
            )
        values = raised_cosine_ramp(u - low, rolloff) * raised_cosine_ramp(
            high - u, rolloff
        )
    else:
        (edge,) = spec.edges
        reach = max(abs(u_grid.start), abs(u_grid.stop))
        if edge > reach:
            raise EdgeOutOfRange(
                f"Edge |u| = {edge:g} leaves the u grid (|u| <= {reach:g})"
            )
        distance = edge - np.abs(u)
        if spec.kind == "high_pass":
            distance = -distance
        values = raised_cosine_ramp(distance, rolloff)
    logger.debug(f"Designed {spec.kind} mask {spec.edges} with rolloff {rolloff:g}")
    return Mask(u_grid, values, 1)


def filter_grid(params: OlctParams, f: SampledSignal) -> Grid:
    """Native u grid of the fast transform of f."""
    return native_grid(params, f.dx, next_power_of_two(f.n))


def masked_spectrum(params: OlctParams, f_in: SampledSignal, mask: Mask) -> Spectrum:
    spectrum = olct_fast(params, f_in)
    if mask.dilation == 2:
        spectrum = dilate_spectrum(spectrum)
    spectrum.grid.require_same(mask.grid, "spectrum and mask grids")
    return spectrum.with_samples(spectrum.samples * mask.values)


def apply_filter(params: OlctParams, f_in: SampledSignal, mask: Mask) -> SampledSignal:
    return olct_inverse(masked_spectrum(params, f_in, mask))


def mask_from_prototype(params: OlctParams, g: SampledSignal) -> Mask:
    """2 T(u) G(2u) on the doubled-density grid of g's native spectrum."""
    params.require_main_branch()
    dilated = dilate_spectrum(olct_fast(params, g))
    values = 2 * chirp_T(params, dilated.u) * dilated.samples
    return Mask(dilated.grid, values, 2)


def prototype_from_mask(params: OlctParams, mask: Mask, grid: Grid) -> SampledSignal:
    """Prototype g with 2 T(u) G(2u) = m(2u): the native mask moved onto the
    compressed band of the convolution route."""
    params.require_main_branch()
    if mask.dilation != 1:
        raise GridMismatch("prototype_from_mask expects a native (dilation 1) mask")
    expected = native_grid(params, grid.step, next_power_of_two(grid.n))
    mask.grid.require_same(expected, "mask grid and the native grid of the prototype")
    v = mask.grid.points
    values = mask.values / (2 * chirp_T(params, v / 2))
    return olct_inverse(Spectrum(mask.grid, values, params, grid))


def snr_db(clean: SampledSignal, test: SampledSignal) -> float:
    """10 log10(|clean|^2 / |test - clean|^2); +inf when test equals clean."""
    residual = test - clean
    error = float(np.sum(np.abs(residual.samples) ** 2))
    energy = float(np.sum(np.abs(clean.samples) ** 2))
    if error == 0:
        return math.inf
    if energy == 0:
        return -math.inf
    return 10 * math.log10(energy / error)


@frozen
class SnrReport:
    snr_in_db: float
    snr_out_db: float
    gain_db: float

    @classmethod
    def from_snrs(cls, snr_in_db, snr_out_db):
        # an exact input leaves nothing to remove
        gain = 0.0 if math.isinf(snr_in_db) else snr_out_db - snr_in_db
        return cls(float(snr_in_db), float(snr_out_db), float(gain))

    def to_dict(self):
        return jsonable(
            {
                "snr_in_db": self.snr_in_db,
                "snr_out_db": self.snr_out_db,
                "gain_db": self.gain_db,
            }
        )


@frozen(eq=False)
class DemoResult:
    report: SnrReport
    params: OlctParams
    band: Tuple[float, float]
    pipeline: str
    clean: SampledSignal
    received: SampledSignal
    output: SampledSignal
    reference: SampledSignal
    clean_spectrum: Spectrum
    received_spectrum: Spectrum
    output_spectrum: Spectrum
    mask: Mask


def occupied_band(spectrum: Spectrum, threshold: float) -> Tuple[float, float]:
    magnitude = np.abs(spectrum.samples)
    occupied = spectrum.u[magnitude > threshold * magnitude.max()]
    return float(occupied.min()), float(occupied.max())


def demo_chirp_denoise(config) -> DemoResult:
    """Matched-chirp denoising.

    The received signal is an LFM chirp with rate -a/b (compact in the OLCT
    domain of params), a tapered interference tone and seeded white noise.
    A band-pass mask over the occupied band of the clean chirp filters it.
    """
    demo = config.demo
    try:
        params = OlctParams.from_sequence(demo.params)
        params.require_main_branch()
        grid = Grid(demo.grid.x_start, demo.grid.dx, demo.grid.n)
    except (OlctError, KeyError, TypeError) as error:
        raise ConfigInvalid(f"Invalid demo setup: {error}") from None

    rate = -params.a / params.b
    clean = SampledSignal(
        grid, lfm_chirp(grid, rate, demo.center_freq, demo.envelope_width)
    )
    # interference is windowed to vanish at both grid ends
    span = grid.stop - grid.start
    taper = smoothed_rect(
        grid.points, grid.start + span / 16, grid.stop - span / 16, span / 8
    )
    interference = demo.tone_amplitude * np.exp(1j * demo.tone_freq * grid.points)
    if demo.noise_db is not None:
        noise = taper * complex_noise(noise_generator(int(config.seed)), grid.n, 1.0)
        target = np.sum(np.abs(clean.samples) ** 2) * 10 ** (demo.noise_db / 10)
        interference = interference + noise * np.sqrt(
            target / np.sum(np.abs(noise) ** 2)
        )
    received = clean + clean.with_samples(taper * interference)

    clean_spectrum = olct_fast(params, clean)
    u1, u2 = occupied_band(clean_spectrum, demo.occupancy_threshold)
    u_grid = clean_spectrum.grid
    rolloff = DEFAULT_ROLLOFF_BINS * u_grid.step
    band = (u1 - rolloff, u2 + rolloff)
    try:
        mask = design_mask(FilterSpec("band_pass", band, rolloff), u_grid)
    except EdgeOutOfRange as error:
        raise ConfigInvalid(f"Chirp band does not fit the u grid: {error}") from None
    logger.debug(f"Occupied band [{u1:g}, {u2:g}] at rate {rate:g}")

    if demo.pipeline == "convolution":
        prototype = prototype_from_mask(params, mask, grid)
        mask = mask_from_prototype(params, prototype)
        reference = convolve_spectral(params, clean, prototype)
    elif demo.pipeline == "mask":
        reference = clean
    else:
        raise ConfigInvalid(f"Unknown demo pipeline '{demo.pipeline}'")

    output_spectrum = masked_spectrum(params, received, mask)
    output = olct_inverse(output_spectrum)
    report = SnrReport.from_snrs(snr_db(clean, received), snr_db(reference, output))
    return DemoResult(
        report,
        params,
        band,
        demo.pipeline,
        clean,
        received,
        output,
        reference,
        clean_spectrum,
        olct_fast(params, received),
        output_spectrum,
        mask,
    )
