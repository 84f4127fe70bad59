import math

import numpy as np
import pytest

from src.core import (
    kernel,
    native_grid,
    olct_b_zero,
    olct_direct,
    olct_fast,
    olct_inverse,
    verify_inverse_tuple,
    verify_oracle,
    verify_parseval,
    verify_reduction,
    verify_riemann_lebesgue,
    verify_round_trip,
)
from src.exceptions import DegenerateCase, EdgeLeakage, GridMismatch
from src.params import make_params, special_params
from src.signal import Grid, SampledSignal
from src.tests.utils import (
    GENERAL_PARAMS,
    OFFSET_PARAMS,
    TEST_GRID,
    gaussian_signal,
    sweep_params,
)


def asymmetric_signal():
    f = gaussian_signal(center=0.3, width=0.9, freq=0.7)
    return f.with_samples(f.samples * (1 + 0.5j * f.x))


def test_kernel_modulus():
    for params in sweep_params():
        value = kernel(params, 1.5, -0.25)
        assert isinstance(value, complex)
        assert abs(value) == pytest.approx(1 / math.sqrt(2 * math.pi * abs(params.b)))


def test_kernel_needs_main_branch():
    with pytest.raises(DegenerateCase):
        kernel(make_params(2, 0, 0, 0.5), 0.0, 0.0)


def test_fast_path_grid_law():
    f = gaussian_signal()
    spectrum = olct_fast(GENERAL_PARAMS, f)
    du = 2 * math.pi * abs(GENERAL_PARAMS.b) / (256 * f.dx)
    assert spectrum.n == 256
    assert spectrum.du == pytest.approx(du)
    assert spectrum.u_start == pytest.approx(-128 * du)
    assert spectrum.source == f.grid
    assert spectrum.is_native()


def test_fast_path_zero_pads_to_power_of_two():
    f = gaussian_signal(Grid(-8.0, 0.0625, 200))
    spectrum = olct_fast(OFFSET_PARAMS, f, n_fft=512)
    assert spectrum.n == 512
    assert spectrum.n_signal == 200
    with pytest.raises(GridMismatch):
        olct_fast(OFFSET_PARAMS, f, n_fft=128)
    with pytest.raises(GridMismatch):
        olct_fast(OFFSET_PARAMS, f, n_fft=300)


def test_forced_du_must_follow_grid_law():
    f = gaussian_signal()
    with pytest.raises(GridMismatch):
        olct_fast(GENERAL_PARAMS, f, du=0.1)


@pytest.mark.parametrize("params", sweep_params())
def test_fast_matches_direct_quadrature(params):
    report = verify_oracle(params, asymmetric_signal())
    assert report.passed, report.to_dict()
    assert report.rel_err <= 1e-9


def test_direct_on_custom_grid():
    f = gaussian_signal()
    u_grid = Grid(-2.0, 0.01, 401)
    direct = olct_direct(GENERAL_PARAMS, f, u_grid)
    expected = np.array(
        [
            np.sum(kernel(GENERAL_PARAMS, u, f.x) * f.samples) * f.dx
            for u in u_grid.points[::50]
        ]
    )
    assert np.allclose(direct.samples[::50], expected, atol=1e-12)


@pytest.mark.parametrize("params", sweep_params())
def test_parseval(params):
    f, g = asymmetric_signal(), gaussian_signal(center=-1.0, width=0.7, freq=-0.4)
    report = verify_parseval(params, f, g)
    assert report.passed, report.to_dict()
    assert report.details["norm_rel_err"] < 1e-10


def test_riemann_lebesgue():
    report = verify_riemann_lebesgue(GENERAL_PARAMS, gaussian_signal())
    assert report.passed
    assert report.details["edge_points"] == int(0.05 * 256)


def test_riemann_lebesgue_decay_of_a_rect():
    ratios = []
    for dx in (0.125, 0.0625, 0.03125):
        grid = Grid(-16.0, dx, int(32 / dx))
        rect = SampledSignal(grid, (np.abs(grid.points) <= 4).astype(complex))
        report = verify_riemann_lebesgue(special_params("ft"), rect)
        ratios.append(report.rel_err)
    # the outer band moves out as dx shrinks and the sinc tail falls like 1/u
    assert ratios[1] < 0.6 * ratios[0]
    assert ratios[2] < 0.6 * ratios[1]
    assert ratios[2] < 5e-3


@pytest.mark.parametrize("params", sweep_params())
def test_round_trip(params):
    f = asymmetric_signal()
    report = verify_round_trip(params, f)
    assert report.passed, report.to_dict()
    restored = olct_inverse(olct_fast(params, f))
    assert np.allclose(restored.samples, f.samples, atol=1e-10)


def test_inverse_methods_agree():
    f = asymmetric_signal()
    spectrum = olct_fast(OFFSET_PARAMS, f)
    adjoint = olct_inverse(spectrum)
    direct = olct_inverse(spectrum, method="direct")
    assert np.allclose(adjoint.samples, direct.samples, atol=1e-10)
    with pytest.raises(ValueError):
        olct_inverse(spectrum, method="newton")


def test_inverse_needs_source_grid():
    spectrum = olct_fast(GENERAL_PARAMS, gaussian_signal())
    orphan = spectrum.__class__(spectrum.grid, spectrum.samples, spectrum.params)
    with pytest.raises(GridMismatch):
        olct_inverse(orphan)
    # an explicit x grid stands in for the missing source
    restored = olct_inverse(orphan, x_grid=TEST_GRID)
    assert np.allclose(restored.samples, gaussian_signal().samples, atol=1e-10)


def test_inverse_tuple_without_offsets_needs_no_constant():
    params = special_params("frft", math.pi / 3)
    report = verify_inverse_tuple(params, asymmetric_signal())
    assert report.passed
    assert "none" in report.details["matching_constants"]


def test_inverse_tuple_with_offsets():
    report = verify_inverse_tuple(OFFSET_PARAMS, asymmetric_signal())
    assert report.passed
    assert set(report.details["candidate_errors"]) == {"none", "half_phase", "b_phase"}


@pytest.mark.parametrize("kind, alpha", [("ft", None), ("frft", math.pi / 3)])
def test_classical_reductions(kind, alpha):
    report = verify_reduction(kind, asymmetric_signal(), alpha=alpha, tolerance=1e-7)
    assert report.passed, report.to_dict()
    assert report.details["constant_modulus"] == pytest.approx(1.0, abs=1e-7)


def test_reduction_kind_must_be_known():
    with pytest.raises(ValueError):
        verify_reduction("hankel", asymmetric_signal())


def test_b_zero_branch_is_scaled_chirp_multiplication():
    params = make_params(2, 0, 0.5, 0.5, 0.25, -1)
    f = gaussian_signal()
    result = olct_b_zero(params, f)
    assert result.dx == pytest.approx(f.dx / params.d)
    assert result.x_start == pytest.approx(f.x_start / params.d + params.u0)
    assert np.allclose(np.abs(result.samples), math.sqrt(params.d) * np.abs(f.samples))
    # unitary: the step scales by 1/d and the values by sqrt(d)
    assert result.norm() == pytest.approx(f.norm())


def test_b_zero_branch_errors():
    with pytest.raises(DegenerateCase):
        olct_b_zero(make_params(-1, 0, 0, -1), gaussian_signal())
    with pytest.raises(DegenerateCase):
        olct_b_zero(GENERAL_PARAMS, gaussian_signal())
    with pytest.raises(DegenerateCase):
        olct_fast(make_params(2, 0, 0, 0.5), gaussian_signal())


def test_edge_leakage_warning():
    truncated = SampledSignal(TEST_GRID, np.ones(TEST_GRID.n))
    with pytest.warns(EdgeLeakage):
        olct_fast(GENERAL_PARAMS, truncated)


def test_native_grid_is_centred():
    grid = native_grid(special_params("ft"), 0.0625, 256)
    assert grid.n == 256
    assert grid.points[128] == 0.0
