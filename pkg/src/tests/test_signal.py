import math

import numpy as np
import pytest

from src.exceptions import GridInvalid, GridMismatch
from src.params import special_params
from src.signal import (
    Grid,
    SampledSignal,
    Spectrum,
    next_power_of_two,
    trapezoid_weights,
)
from src.tests.utils import TEST_GRID, gaussian_signal


def test_grid_points_and_stop():
    grid = Grid(-1.0, 0.5, 5)
    assert np.allclose(grid.points, [-1.0, -0.5, 0.0, 0.5, 1.0])
    assert grid.stop == 1.0


@pytest.mark.parametrize(
    "start, step, n",
    [(0.0, 0.0, 4), (0.0, -1.0, 4), (math.inf, 1.0, 4), (0.0, math.nan, 4), (0, 1, 1)],
)
def test_malformed_grids(start, step, n):
    with pytest.raises(GridInvalid):
        Grid(start, step, n)


def test_require_same_grid():
    grid = Grid(-4.0, 0.125, 64)
    grid.require_same(Grid(-4.0 + 1e-15, 0.125, 64))
    with pytest.raises(GridMismatch):
        grid.require_same(Grid(-4.0, 0.25, 64))
    with pytest.raises(GridMismatch):
        grid.require_same(Grid(-4.0, 0.125, 32))


def test_next_power_of_two():
    assert [next_power_of_two(n) for n in (2, 3, 100, 512, 513)] == [
        2,
        4,
        128,
        512,
        1024,
    ]


def test_trapezoid_weights():
    weights = trapezoid_weights(4, 0.5)
    assert np.allclose(weights, [0.25, 0.5, 0.5, 0.25])


def test_samples_are_read_only_copies():
    source = np.ones(TEST_GRID.n)
    signal = SampledSignal(TEST_GRID, source)
    source[0] = 5.0
    assert signal.samples[0] == 1.0
    assert signal.samples.dtype == np.complex128
    with pytest.raises(ValueError):
        signal.samples[0] = 2.0


def test_sample_count_must_match_grid():
    with pytest.raises(GridInvalid):
        SampledSignal(TEST_GRID, np.ones(TEST_GRID.n - 1))
    with pytest.raises(GridInvalid):
        SampledSignal(TEST_GRID, np.ones((2, TEST_GRID.n)))


def test_norms_and_inner_product():
    f = gaussian_signal()
    # integral of exp(-x^2) is sqrt(pi)
    assert f.norm() ** 2 == pytest.approx(math.sqrt(math.pi), rel=1e-10)
    assert f.l1_norm() == pytest.approx(math.sqrt(2 * math.pi), rel=1e-10)
    assert f.inner(f) == pytest.approx(f.norm() ** 2)


def test_arithmetic_needs_matching_grids():
    f = gaussian_signal()
    assert np.allclose((f + f).samples, 2 * f.samples)
    assert np.allclose((f - f).samples, 0)
    other = gaussian_signal(Grid(-8.0, 0.0625, 128))
    with pytest.raises(GridMismatch):
        f.inner(other)


def test_native_spectrum_grid():
    params = special_params("ft")
    source = Grid(-8.0, 0.0625, 200)
    du = 2 * math.pi / (256 * 0.0625)
    native = Spectrum(Grid(-128 * du, du, 256), np.zeros(256), params, source)
    assert native.is_native()
    shifted = Spectrum(Grid(-127 * du, du, 256), np.zeros(256), params, source)
    assert not shifted.is_native()
    unsourced = Spectrum(Grid(-128 * du, du, 256), np.zeros(256), params)
    assert not unsourced.is_native()
    assert unsourced.n_signal is None
    assert native.n_signal == 200
