import math

import numpy as np
import pytest

from src.core import edge_ratio, olct_fast
from src.exceptions import ConfigInvalid, DegenerateCase
from src.generators import (
    GeneratorSpec,
    gaussian_band,
    generate,
    random_smooth_signals,
    smoothed_rect,
)
from src.params import make_params, special_params
from src.signal import Grid
from src.spectral import measure_support
from src.tests.utils import GENERAL_PARAMS, TEST_GRID


def test_gaussian_has_unit_peak_and_analytic_norm():
    f = generate(GeneratorSpec("gaussian", TEST_GRID))
    assert np.abs(f.samples).max() == 1.0
    assert f.norm() ** 2 == pytest.approx(math.sqrt(math.pi), rel=1e-9)
    scaled = generate(GeneratorSpec("gaussian", TEST_GRID, amplitude=3.0))
    assert np.allclose(scaled.samples, 3 * f.samples)


def test_lfm_chirp():
    spec = GeneratorSpec(
        "lfm_chirp", TEST_GRID, rate=2.0, center_freq=-1.0, envelope_width=2.0
    )
    x = TEST_GRID.points
    expected = np.exp(-0.5 * (x / 2) ** 2) * np.exp(1j * (x**2 - x))
    assert np.allclose(generate(spec).samples, expected)


def test_rect_is_one_half_on_its_edges():
    rect = generate(GeneratorSpec("rect", TEST_GRID, lo=-1.0, hi=1.0, smooth=0.5))
    x = TEST_GRID.points
    values = rect.samples.real
    assert values[x == -1.0][0] == 0.5
    assert values[x == 1.0][0] == 0.5
    assert values[x == 0.0][0] == 1.0
    assert np.all(values[np.abs(x) >= 1.25] == 0.0)
    # without smoothing the edges belong to the rect
    sharp = smoothed_rect(x, -1.0, 1.0, 0.0)
    assert np.array_equal(sharp, (np.abs(x) <= 1.0).astype(float))


def test_tone_has_unit_modulus():
    tone = generate(GeneratorSpec("tone", TEST_GRID, freq=2.5))
    assert np.allclose(np.abs(tone.samples), 1.0)


def test_noise_is_reproducible():
    first = generate(GeneratorSpec("noise", TEST_GRID, seed=5, level=0.5))
    again = generate(GeneratorSpec("noise", TEST_GRID, seed=5, level=0.5))
    other = generate(GeneratorSpec("noise", TEST_GRID, seed=6, level=0.5))
    assert np.array_equal(first.samples, again.samples)
    assert not np.allclose(first.samples, other.samples)
    assert np.any(first.samples.imag != 0)


def test_bandlimited_fixture_support():
    grid = Grid(-2048.0, 0.5, 8192)
    spec = GeneratorSpec(
        "olct_bandlimited",
        grid,
        lo=-2.0,
        hi=2.0,
        smooth=0.2,
        params=special_params("ft"),
    )
    f = generate(spec)
    assert np.abs(f.samples).max() == pytest.approx(1.0)
    sup, inf = measure_support(olct_fast(special_params("ft"), f))
    # transitions end smooth / 2 past the declared edges
    assert 2.09 <= sup < 2.1
    assert inf < 0.01


def test_gaussian_band_fixture_spectrum():
    grid = Grid(-64.0, 0.0625, 2048)
    spec = GeneratorSpec(
        "olct_gaussian_band",
        grid,
        center=1.5,
        width=0.15,
        params=GENERAL_PARAMS,
    )
    spectrum = olct_fast(GENERAL_PARAMS, generate(spec))
    expected = gaussian_band(spectrum.u, 1.5, 0.15)
    peak = np.argmax(expected)
    ratio = spectrum.samples[peak] / expected[peak]
    assert abs(ratio.imag) <= 1e-9 * abs(ratio)
    assert np.allclose(spectrum.samples, ratio * expected, atol=1e-9 * abs(ratio))


def test_random_smooth_signals():
    signals = random_smooth_signals(TEST_GRID, 3, 4)
    again = random_smooth_signals(TEST_GRID, 3, 4)
    assert len(signals) == 4
    for signal, copy in zip(signals, again):
        assert np.array_equal(signal.samples, copy.samples)
        assert edge_ratio(signal) < 1e-6
    assert not np.allclose(signals[0].samples, signals[1].samples)


def test_from_mapping():
    spec = GeneratorSpec.from_mapping(
        {"kind": "olct_highpass", "u_lo": 1, "u_hi": 3, "params": [1, 1, 1, 2, 1, 0]},
        grid=TEST_GRID,
    )
    assert (spec.lo, spec.hi) == (1.0, 3.0)
    assert spec.params == GENERAL_PARAMS
    assert spec.grid == TEST_GRID
    spec = GeneratorSpec.from_mapping(
        {
            "kind": "gaussian",
            "grid": {"x_start": -4.0, "dx": 0.5, "n": 17},
            "width": None,
        }
    )
    assert spec.grid == Grid(-4.0, 0.5, 17)
    assert spec.width == 1.0
    with pytest.raises(ConfigInvalid):
        GeneratorSpec.from_mapping({"kind": "gaussian"})
    with pytest.raises(ConfigInvalid):
        GeneratorSpec.from_mapping({"kind": "gaussian", "sigma": 2}, grid=TEST_GRID)


@pytest.mark.parametrize(
    "values",
    [
        {"kind": "sawtooth"},
        {"kind": "gaussian", "width": 0},
        {"kind": "lfm_chirp", "envelope_width": -1},
        {"kind": "rect", "lo": 1, "hi": 1},
        {"kind": "rect", "smooth": -0.1},
        {"kind": "noise", "level": -1},
        {"kind": "olct_bandlimited"},
        {"kind": "olct_highpass", "lo": -1, "hi": 2, "params": GENERAL_PARAMS},
        {"kind": "olct_gaussian_band", "center": -1, "params": GENERAL_PARAMS},
    ],
)
def test_invalid_specs(values):
    with pytest.raises(ConfigInvalid):
        GeneratorSpec(grid=TEST_GRID, **values)


def test_olct_fixtures_need_the_main_branch():
    with pytest.raises(DegenerateCase):
        GeneratorSpec("olct_bandlimited", TEST_GRID, params=make_params(2, 0, 0, 0.5))
