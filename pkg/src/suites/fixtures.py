"""
Signals the verification suites run on.

Band-edged fixtures decay only like 1/x^3 past their transitions, so their
grids are wide enough to bring the ends under 1e-7 of the peak.
"""
from src.generators import (
    GeneratorSpec,
    generate,
    random_smooth_signals,
)
from src.params import OlctParams
from src.signal import Grid, SampledSignal

# N = 512 sweep of the oracle and unitarity checks
SWEEP_GRID = Grid(-16.0, 0.0625, 512)
SWEEP_COUNT = 20
# short grid for the many quadratures of the L1 sweep
L1_GRID = Grid(-8.0, 0.0625, 256)
# band-limited estimator fixtures, |u/b| <= 2 against a Nyquist of 2 pi
PW_GRID = Grid(-2048.0, 0.5, 8192)
# high-pass estimator fixtures; the Boas integral needs a finer step
HIGHPASS_GRID = Grid(-4096.0, 0.125, 65536)
# Gaussian band; its envelope is under 1e-15 of the peak at the grid ends
BOAS_RELATION_GRID = Grid(-64.0, 0.015625, 8192)

# transitions span this share of the band: 2 gamma |b| wide for the
# band-limited fixtures and |b| for the high-pass ones
TRANSITION_SHARE = 0.05
# Gaussian band of the Boas relation checks, in units of |b|
BOAS_RELATION_CENTER = 1.5
BOAS_RELATION_WIDTH = 0.15


def config_grid(config) -> Grid:
    return Grid(config.grid.x_start, config.grid.dx, config.grid.n)


def gaussian_pair(config):
    grid = config_grid(config)
    f = generate(GeneratorSpec("gaussian", grid, center=0.0, width=1.0))
    g = generate(GeneratorSpec("gaussian", grid, center=0.5, width=0.8))
    return f, g


def sweep_signals(config):
    return random_smooth_signals(SWEEP_GRID, int(config.seed), SWEEP_COUNT)


def l1_pairs(config):
    count = int(config.verify.l1_pairs)
    signals = random_smooth_signals(L1_GRID, int(config.seed) + 1, 2 * count)
    return list(zip(signals[::2], signals[1::2]))


def bandlimited_fixture(params: OlctParams, gamma: float) -> SampledSignal:
    """Spectrum supported on exactly |u/b| <= gamma."""
    scale = abs(params.b)
    smooth = TRANSITION_SHARE * 2 * gamma * scale
    edge = gamma * scale - smooth / 2
    spec = GeneratorSpec(
        "olct_bandlimited",
        PW_GRID,
        lo=-edge,
        hi=edge,
        smooth=smooth,
        params=params,
    )
    return generate(spec)


def highpass_fixture(params: OlctParams, gamma: float) -> SampledSignal:
    """Spectrum supported on exactly gamma <= |u/b| <= gamma + 1."""
    scale = abs(params.b)
    smooth = TRANSITION_SHARE * scale
    spec = GeneratorSpec(
        "olct_highpass",
        HIGHPASS_GRID,
        lo=gamma * scale + smooth / 2,
        hi=(gamma + 1) * scale - smooth / 2,
        smooth=smooth,
        params=params,
    )
    return generate(spec)


def boas_relation_fixture(params: OlctParams) -> SampledSignal:
    """Gaussian band around |u/b| = 1.5; below 1e-20 of its peak at u = 0."""
    scale = abs(params.b)
    spec = GeneratorSpec(
        "olct_gaussian_band",
        BOAS_RELATION_GRID,
        center=BOAS_RELATION_CENTER * scale,
        width=BOAS_RELATION_WIDTH * scale,
        params=params,
    )
    return generate(spec)
