"""
Deterministic test and demo signals.

Analytic shapes have unit peak. The OLCT-band-limited and high-pass fixtures
are the inverse transform of a smoothed-rect spectrum laid on the native grid
of the signal, so their spectral support is known by construction. The
Gaussian-band fixture puts exp(-((|u| - center) / width)^2 / 2) there
instead; its samples decay like a Gaussian in x as well. Noise
comes from numpy's PCG64 bit generator (splittable through SeedSequence) with
ziggurat Gaussian deviates.
"""
import math
from typing import Optional

import numpy as np
from attrs import field, frozen

from src.constants.common import GENERATOR_KINDS
from src.core import native_grid, olct_inverse
from src.exceptions import ConfigInvalid
from src.logger import logger
from src.params import OlctParams
from src.signal import Grid, SampledSignal, Spectrum, next_power_of_two


def raised_cosine_ramp(distance, half_width: float) -> np.ndarray:
    """0 outside, 1 inside, 1/2 on the edge; ``distance`` is positive inside."""
    distance = np.asarray(distance, dtype=float)
    if half_width == 0:
        return np.where(distance >= 0, 1.0, 0.0)
    clipped = np.clip(distance / half_width, -1.0, 1.0)
    return 0.5 * (1.0 + np.sin(0.5 * math.pi * clipped))


def smoothed_rect(u, lo: float, hi: float, smooth: float) -> np.ndarray:
    """Indicator of [lo, hi] with raised-cosine transitions of total width smooth."""
    u = np.asarray(u, dtype=float)
    half_width = 0.5 * smooth
    return raised_cosine_ramp(u - lo, half_width) * raised_cosine_ramp(
        hi - u, half_width
    )


def _optional_params(value):
    if value is None or isinstance(value, OlctParams):
        return value
    return OlctParams.from_sequence(value)


def _grid(value):
    if isinstance(value, Grid):
        return value
    return Grid(value["x_start"], value["dx"], value["n"])


@frozen
class GeneratorSpec:
    kind: str
    grid: Grid = field(converter=_grid)
    center: float = field(converter=float, default=0.0)
    width: float = field(converter=float, default=1.0)
    rate: float = field(converter=float, default=0.0)
    center_freq: float = field(converter=float, default=0.0)
    envelope_width: float = field(converter=float, default=1.0)
    freq: float = field(converter=float, default=0.0)
    amplitude: float = field(converter=float, default=1.0)
    # rect edges in x; band edges in u for the OLCT fixtures
    lo: float = field(converter=float, default=-1.0)
    hi: float = field(converter=float, default=1.0)
    smooth: float = field(converter=float, default=0.0)
    params: Optional[OlctParams] = field(converter=_optional_params, default=None)
    seed: int = field(converter=int, default=0)
    level: float = field(converter=float, default=1.0)

    def __attrs_post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ConfigInvalid(
                f"Unknown generator '{self.kind}', expected one of {GENERATOR_KINDS}"
            )
        if self.width <= 0 or self.envelope_width <= 0:
            raise ConfigInvalid("Generator widths must be positive")
        if not self.lo < self.hi:
            raise ConfigInvalid(f"Expected lo < hi, got lo={self.lo}, hi={self.hi}")
        if self.smooth < 0:
            raise ConfigInvalid(f"smooth must be >= 0, got {self.smooth}")
        if self.level < 0:
            raise ConfigInvalid(f"Noise level must be >= 0, got {self.level}")
        if self.kind.startswith("olct_"):
            if self.params is None:
                raise ConfigInvalid(f"Generator '{self.kind}' needs params")
            self.params.require_main_branch()
        if self.kind == "olct_highpass" and self.lo < 0:
            raise ConfigInvalid("olct_highpass bands are |u| in [lo, hi], lo >= 0")
        if self.kind == "olct_gaussian_band" and self.center < 0:
            raise ConfigInvalid("olct_gaussian_band centres on |u|, center >= 0")

    @classmethod
    def from_mapping(cls, mapping, grid=None):
        """Spec from a config section; ``grid`` fills in a missing grid entry."""
        values = {k: v for k, v in dict(mapping).items() if v is not None}
        if "grid" not in values:
            if grid is None:
                raise ConfigInvalid("Generator spec needs a grid")
            values["grid"] = grid
        # CLI and config spellings of the band edges
        for alias, name in (("u_lo", "lo"), ("u_hi", "hi"), ("a", "lo"), ("b", "hi")):
            if alias in values:
                values[name] = values.pop(alias)
        try:
            return cls(**values)
        except TypeError as error:
            raise ConfigInvalid(f"Invalid generator spec: {error}") from None


def gaussian(grid: Grid, center=0.0, width=1.0) -> np.ndarray:
    return np.exp(-0.5 * ((grid.points - center) / width) ** 2)


def gaussian_band(u, center, width) -> np.ndarray:
    """Gaussian bump on |u| around center, mirrored onto negative u."""
    return np.exp(-0.5 * ((np.abs(u) - center) / width) ** 2)


def lfm_chirp(grid: Grid, rate, center_freq, envelope_width, center=0.0):
    """exp(i rate (x - c)^2 / 2 + i center_freq (x - c)) under a Gaussian envelope."""
    shifted = grid.points - center
    phase = 0.5 * rate * shifted**2 + center_freq * shifted
    return gaussian(grid, center, envelope_width) * np.exp(1j * phase)


def _olct_fixture(spec: GeneratorSpec, band) -> np.ndarray:
    grid = spec.grid
    u_grid = native_grid(spec.params, grid.step, next_power_of_two(grid.n))
    spectrum = Spectrum(u_grid, band(u_grid.points), spec.params, grid)
    samples = olct_inverse(spectrum).samples
    peak = np.abs(samples).max()
    return samples / peak if peak > 0 else samples


def noise_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def complex_noise(rng: np.random.Generator, n: int, level: float) -> np.ndarray:
    scale = level / math.sqrt(2)
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def generate(spec: GeneratorSpec) -> SampledSignal:
    grid = spec.grid
    x = grid.points
    kind = spec.kind
    if kind == "gaussian":
        samples = gaussian(grid, spec.center, spec.width)
    elif kind == "lfm_chirp":
        samples = lfm_chirp(
            grid, spec.rate, spec.center_freq, spec.envelope_width, spec.center
        )
    elif kind == "rect":
        samples = smoothed_rect(x, spec.lo, spec.hi, spec.smooth)
    elif kind == "tone":
        samples = np.exp(1j * spec.freq * x)
    elif kind == "olct_bandlimited":
        samples = _olct_fixture(
            spec, lambda u: smoothed_rect(u, spec.lo, spec.hi, spec.smooth)
        )
    elif kind == "olct_highpass":
        samples = _olct_fixture(
            spec, lambda u: smoothed_rect(np.abs(u), spec.lo, spec.hi, spec.smooth)
        )
    elif kind == "olct_gaussian_band":
        samples = _olct_fixture(
            spec, lambda u: gaussian_band(u, spec.center, spec.width)
        )
    else:
        samples = complex_noise(noise_generator(spec.seed), grid.n, spec.level)
        return SampledSignal(grid, samples)
    logger.debug(f"Generated {kind} on {grid}")
    return SampledSignal(grid, spec.amplitude * samples)


def random_smooth_signals(grid: Grid, seed: int, count: int, components: int = 3):
    """Seeded sums of modulated Gaussians well inside the grid.

    Centres stay within the middle quarter of the span and widths under a
    thirty-second of it, so the ends are negligible.
    """
    span = grid.step * (grid.n - 1)
    middle = grid.start + 0.5 * span
    signals = []
    for child in np.random.SeedSequence(seed).spawn(count):
        rng = np.random.Generator(np.random.PCG64(child))
        samples = np.zeros(grid.n, dtype=np.complex128)
        for _ in range(components):
            center = middle + rng.uniform(-span / 8, span / 8)
            width = rng.uniform(span / 64, span / 32)
            freq = rng.uniform(-1.0, 1.0)
            weight = rng.standard_normal() + 1j * rng.standard_normal()
            envelope = gaussian(grid, center, width)
            samples += weight * envelope * np.exp(1j * freq * (grid.points - center))
        signals.append(SampledSignal(grid, samples))
    return signals
