"""
Uniformly sampled signals and OLCT spectra.
"""
import math
from typing import Optional

import numpy as np
from attrs import field, frozen

from src.constants.numerics import GRID_LAW_RTOL
from src.exceptions import GridInvalid, GridMismatch
from src.params import OlctParams


def _positive_finite(instance, attribute, value):
    if not math.isfinite(value) or value <= 0:
        raise GridInvalid(
            f"{attribute.name} must be positive and finite, got {value!r}"
        )


def _finite(instance, attribute, value):
    if not math.isfinite(value):
        raise GridInvalid(f"{attribute.name} must be finite, got {value!r}")


def _at_least_two(instance, attribute, value):
    if value < 2:
        raise GridInvalid(f"{attribute.name} must be at least 2, got {value!r}")


def readonly_complex(values):
    array = np.array(values, dtype=np.complex128, copy=True)
    if array.ndim != 1:
        raise GridInvalid(f"Samples must be one-dimensional, got shape {array.shape}")
    array.setflags(write=False)
    return array


def next_power_of_two(n: int) -> int:
    return 1 << max(1, int(n - 1).bit_length())


@frozen
class Grid:
    """Uniform grid: point k sits at start + k * step."""

    start: float = field(converter=float, validator=_finite)
    step: float = field(converter=float, validator=_positive_finite)
    n: int = field(converter=int, validator=_at_least_two)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.n)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.n - 1)

    def is_close(self, other: "Grid", rtol=GRID_LAW_RTOL) -> bool:
        scale = max(abs(self.start), abs(other.start), self.step)
        return (
            self.n == other.n
            and math.isclose(self.step, other.step, rel_tol=rtol)
            and abs(self.start - other.start) <= rtol * scale
        )

    def require_same(self, other: "Grid", what="grids"):
        if not self.is_close(other):
            raise GridMismatch(f"The {what} differ: {self} vs {other}")


def trapezoid_weights(n: int, step: float) -> np.ndarray:
    weights = np.full(n, step)
    weights[0] = weights[-1] = 0.5 * step
    return weights


@frozen(eq=False)
class SampledSignal:
    grid: Grid
    samples: np.ndarray = field(converter=readonly_complex)

    def __attrs_post_init__(self):
        if len(self.samples) != self.grid.n:
            raise GridInvalid(
                f"{len(self.samples)} samples do not fit a grid of {self.grid.n} points"
            )

    @classmethod
    def from_samples(cls, x_start, dx, samples):
        return cls(Grid(x_start, dx, len(samples)), samples)

    @classmethod
    def zeros_like(cls, other: "SampledSignal"):
        return cls(other.grid, np.zeros(other.n, dtype=np.complex128))

    @property
    def x_start(self) -> float:
        return self.grid.start

    @property
    def dx(self) -> float:
        return self.grid.step

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def x(self) -> np.ndarray:
        return self.grid.points

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.dx))

    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.samples)) * self.dx)

    def inner(self, other: "SampledSignal") -> complex:
        self.grid.require_same(other.grid, "signal grids")
        return complex(np.sum(self.samples * np.conj(other.samples)) * self.dx)

    def with_samples(self, samples) -> "SampledSignal":
        return SampledSignal(self.grid, samples)

    def __add__(self, other: "SampledSignal") -> "SampledSignal":
        self.grid.require_same(other.grid, "signal grids")
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other: "SampledSignal") -> "SampledSignal":
        self.grid.require_same(other.grid, "signal grids")
        return self.with_samples(self.samples - other.samples)


@frozen(eq=False)
class Spectrum:
    """OLCT values on a uniform u grid.

    ``source`` is the x grid the spectrum is conjugate to (origin, step and the
    signal length before padding); inverses land back on it.
    """

    grid: Grid
    samples: np.ndarray = field(converter=readonly_complex)
    params: OlctParams
    source: Optional[Grid] = None

    def __attrs_post_init__(self):
        if len(self.samples) != self.grid.n:
            raise GridInvalid(
                f"{len(self.samples)} samples do not fit a grid of {self.grid.n} points"
            )

    @property
    def u_start(self) -> float:
        return self.grid.start

    @property
    def du(self) -> float:
        return self.grid.step

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def u(self) -> np.ndarray:
        return self.grid.points

    @property
    def x_start(self) -> Optional[float]:
        return None if self.source is None else self.source.start

    @property
    def n_signal(self) -> Optional[int]:
        return None if self.source is None else self.source.n

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.du))

    def peak(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def with_samples(self, samples) -> "Spectrum":
        return Spectrum(self.grid, samples, self.params, self.source)

    def is_native(self) -> bool:
        """Whether the grid obeys the fast-path law for its source step."""
        if self.source is None:
            return False
        n_fft = self.grid.n
        if n_fft != next_power_of_two(n_fft) or n_fft < self.source.n:
            return False
        du = 2 * math.pi * abs(self.params.b) / (n_fft * self.source.step)
        expected = Grid(-(n_fft // 2) * du, du, n_fft)
        return self.grid.is_close(expected)
