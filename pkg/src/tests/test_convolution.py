import math

import numpy as np
import pytest

from src.convolution import (
    as_signal,
    chirp_T,
    classical_dilated_convolution,
    convolve_spectral,
    convolve_time,
    correlate,
    dilate_signal,
    dilate_spectrum,
    spectral_product,
    verify_convolution_theorem,
    verify_correlation_theorem,
    verify_l1_bound,
)
from src.core import olct_fast
from src.exceptions import GridMismatch
from src.generators import random_smooth_signals
from src.params import special_params
from src.signal import Grid
from src.tests.utils import (
    GENERAL_PARAMS,
    OFFSET_PARAMS,
    TEST_GRID,
    gaussian_signal,
)

# room for the output of f + g, which spreads over twice the input support
WIDE_GRID = Grid(-16.0, 0.03125, 1024)


def gaussian_pair(grid=WIDE_GRID):
    return gaussian_signal(grid), gaussian_signal(grid, center=0.5, width=0.8)


def test_chirp_T_has_unit_modulus():
    u = np.linspace(-10, 10, 101)
    assert np.allclose(np.abs(chirp_T(OFFSET_PARAMS, u)), 1.0)
    assert isinstance(chirp_T(OFFSET_PARAMS, 0.5), complex)
    assert chirp_T(special_params("ft"), 3.0) == 1.0


def test_chirp_T_forms():
    # d u0 - b w0 = 2 for GENERAL_PARAMS
    assert chirp_T(GENERAL_PARAMS, 1.0) == pytest.approx(np.exp(-1j))
    assert chirp_T(GENERAL_PARAMS, 1.0, "as_printed") == pytest.approx(np.exp(-13j))
    assert chirp_T(GENERAL_PARAMS, 0.0, "as_printed") == 1.0
    # the forms differ only in the offset term
    u = np.linspace(-5, 5, 41)
    frft = special_params("frft", math.pi / 3)
    assert np.allclose(chirp_T(frft, u), chirp_T(frft, u, "as_printed"))
    with pytest.raises(ValueError):
        chirp_T(GENERAL_PARAMS, u, "swapped")


def test_dilate_signal_reads_twice_the_argument():
    f = gaussian_signal(freq=0.3)
    dilated = dilate_signal(f)
    x = f.x
    expected = np.exp(-0.5 * (2 * x) ** 2 + 0.6j * x)
    assert np.allclose(dilated.samples, expected, atol=1e-9)


def test_ft_convolution_matches_classical_sum():
    params = special_params("ft")
    f, g = gaussian_signal(), gaussian_signal(center=0.5, width=0.8)
    result = convolve_time(params, f, g)
    classical = classical_dilated_convolution(f, g)
    scored = ~np.isnan(classical)
    assert scored.sum() > 0
    assert np.allclose(
        result.samples[scored], params.amplitude * classical[scored], atol=1e-12
    )


def test_convolution_variants_agree_without_chirp():
    params = special_params("ft")
    f, g = gaussian_signal(), gaussian_signal(center=0.5, width=0.8)
    printed = convolve_time(params, f, g, "as_printed")
    consistent = convolve_time(params, f, g, "consistent")
    assert np.allclose(printed.samples, consistent.samples)
    with pytest.raises(ValueError):
        convolve_time(params, f, g, "reversed")


def test_convolution_needs_matching_grids():
    f = gaussian_signal()
    g = gaussian_signal(Grid(-8.0, 0.0625, 128))
    with pytest.raises(GridMismatch):
        convolve_time(GENERAL_PARAMS, f, g)
    with pytest.raises(GridMismatch):
        convolve_spectral(GENERAL_PARAMS, f, g)


def test_dilated_spectrum_sits_on_the_doubled_native_grid():
    spectrum = olct_fast(GENERAL_PARAMS, gaussian_signal())
    dilated = dilate_spectrum(spectrum)
    assert dilated.n == 2 * spectrum.n
    assert dilated.du == pytest.approx(spectrum.du / 2)
    assert dilated.is_native()
    # fine point m reads coarse point m - n/2
    middle = spectrum.n
    assert dilated.samples[middle] == spectrum.samples[spectrum.n // 2]
    assert dilated.samples[middle + 2] == spectrum.samples[spectrum.n // 2 + 2]


def test_spectral_product_needs_matching_grids():
    f = gaussian_signal()
    F = olct_fast(GENERAL_PARAMS, f)
    G = olct_fast(GENERAL_PARAMS, f, n_fft=512)
    with pytest.raises(GridMismatch):
        spectral_product(GENERAL_PARAMS, F, G)


@pytest.mark.parametrize(
    "params", [special_params("ft"), GENERAL_PARAMS, OFFSET_PARAMS]
)
def test_spectral_route_matches_time_route(params):
    f, g = gaussian_pair()
    time_route = convolve_time(params, f, g, "consistent")
    spectral_route = convolve_spectral(params, f, g)
    peak = np.abs(time_route.samples).max()
    assert np.abs(spectral_route.samples - time_route.samples).max() <= 1e-6 * peak


@pytest.mark.parametrize(
    "params", [special_params("frft", math.pi / 3), GENERAL_PARAMS, OFFSET_PARAMS]
)
def test_convolution_theorem(params):
    f, g = gaussian_pair()
    report = verify_convolution_theorem(params, f, g)
    assert report.passed, report.to_dict()
    assert report.details["passing_variants"] == ["consistent"]
    printed = report.details["printed_chirp_errors"]["consistent"]
    if params.d * params.u0 == params.b * params.w0:
        assert printed == pytest.approx(report.rel_err)
    else:
        assert printed > report.tolerance


def test_convolution_is_bilinear():
    f, g = gaussian_pair()
    alpha = 0.3 - 1.2j
    scaled = f.with_samples(alpha * f.samples)
    for convolve in (convolve_time, convolve_spectral):
        expected = alpha * convolve(OFFSET_PARAMS, f, g).samples
        result = convolve(OFFSET_PARAMS, scaled, g).samples
        assert np.allclose(result, expected, atol=1e-12)
    total = convolve_spectral(OFFSET_PARAMS, f + scaled, g).samples
    parts = (1 + alpha) * convolve_spectral(OFFSET_PARAMS, f, g).samples
    assert np.allclose(total, parts, atol=1e-12)


@pytest.mark.parametrize("params", [GENERAL_PARAMS, OFFSET_PARAMS])
def test_spectral_route_commutes(params):
    f, g = gaussian_pair()
    forward = convolve_spectral(params, f, g).samples
    backward = convolve_spectral(params, g, f).samples
    assert np.abs(forward - backward).max() <= 1e-9 * np.abs(forward).max()


def test_l1_bound_is_tight_for_positive_signals_without_chirp():
    f, g = gaussian_pair()
    report = verify_l1_bound(special_params("ft"), f, g)
    assert report.details["ratio"] == pytest.approx(1.0, rel=1e-6)


def test_l1_bound_holds_for_random_signals():
    signals = random_smooth_signals(TEST_GRID, 7, 6)
    for p, q in zip(signals[::2], signals[1::2]):
        report = verify_l1_bound(GENERAL_PARAMS, p, q)
        assert report.passed, report.to_dict()
        assert report.details["ratio"] < 1.0


def test_correlation_variants():
    f, g = gaussian_signal(), gaussian_signal(center=0.5, width=0.8)
    printed = correlate(OFFSET_PARAMS, f, g, "as_printed")
    consistent = correlate(OFFSET_PARAMS, f, g, "proof_consistent")
    assert printed.grid == f.grid
    assert not np.allclose(printed.samples, consistent.samples)
    with pytest.raises(ValueError):
        correlate(OFFSET_PARAMS, f, g, "statement")


def test_spectra_correlate_as_signals_on_their_u_grid():
    spectrum = olct_fast(GENERAL_PARAMS, gaussian_signal())
    signal = as_signal(spectrum)
    assert signal.grid == spectrum.grid
    assert np.array_equal(signal.samples, spectrum.samples)


def test_correlation_theorem_without_offsets():
    f, g = gaussian_pair()
    report = verify_correlation_theorem(special_params("frft", math.pi / 3), f, g)
    assert report.passed, report.to_dict()
    assert report.details["offsets_zero"]
    assert len(report.details["pairings"]) == 4
    assert report.details["passing_pairings"] == [
        "proof/as_printed",
        "proof/proof_consistent",
    ]


def test_correlation_theorem_with_offsets_is_off_by_a_constant_phase():
    f, g = gaussian_pair()
    report = verify_correlation_theorem(GENERAL_PARAMS, f, g)
    assert not report.passed
    assert not report.details["offsets_zero"]
    assert report.details["passing_pairings"] == []
    # lhs = exp(-2i) rhs for (1, 1, 1, 2, 1, 0), so the gap is |exp(-2i) - 1|
    proof = report.details["pairings"]["proof/proof_consistent"]
    assert proof["rel_err"] == pytest.approx(2 * math.sin(1.0), rel=1e-3)
