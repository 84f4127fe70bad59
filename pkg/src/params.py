"""
The six-parameter set M = (a, b, c, d, u0, w0) of the offset linear canonical
transform and the classical transforms it specializes to.
"""
import math

import numpy as np
from attrs import field, frozen

from src.constants.common import SPECIAL_KINDS
from src.constants.numerics import B_ZERO_THRESHOLD, UNIMODULARITY_TOLERANCE
from src.exceptions import DegenerateCase, UnimodularityViolation


@frozen
class OlctParams:
    a: float = field(converter=float)
    b: float = field(converter=float)
    c: float = field(converter=float)
    d: float = field(converter=float)
    u0: float = field(converter=float, default=0.0)
    w0: float = field(converter=float, default=0.0)

    def __attrs_post_init__(self):
        values = self.as_tuple()
        if not all(math.isfinite(v) for v in values):
            raise UnimodularityViolation(f"Parameters must be finite, got {values}")
        determinant = self.a * self.d - self.b * self.c
        if abs(determinant - 1.0) > UNIMODULARITY_TOLERANCE:
            raise UnimodularityViolation(
                f"ad - bc = {determinant!r} for {values}, expected 1"
            )

    @classmethod
    def from_sequence(cls, values):
        values = list(values)
        if len(values) != 6:
            raise UnimodularityViolation(
                f"Expected six parameters a,b,c,d,u0,w0, got {len(values)}"
            )
        return cls(*values)

    @property
    def is_main_branch(self) -> bool:
        return abs(self.b) > B_ZERO_THRESHOLD

    @property
    def sign_b(self) -> int:
        return 1 if self.b > 0 else -1

    @property
    def amplitude(self) -> complex:
        # principal root of 1/(2 pi i b)
        return complex(np.sqrt(1.0 / (2j * np.pi * self.b)))

    @property
    def offset_phase(self) -> complex:
        return complex(np.exp(0.5j * self.d * self.u0**2 / self.b))

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d, self.u0, self.w0)

    def as_list(self):
        return list(self.as_tuple())

    def require_main_branch(self):
        if not self.is_main_branch:
            raise DegenerateCase(
                f"|b| = {abs(self.b)!r} is within {B_ZERO_THRESHOLD} of zero; "
                "use the b = 0 branch"
            )
        return self

    def __str__(self):
        return ",".join(f"{v:g}" for v in self.as_tuple())


def make_params(a, b, c, d, u0=0.0, w0=0.0) -> OlctParams:
    return OlctParams(a, b, c, d, u0, w0)


def special_params(kind, *args) -> OlctParams:
    """Parameter sets of the classical special cases.

    ft              -> (0, 1, -1, 0, 0, 0)
    frft(alpha)     -> (cos a, sin a, -sin a, cos a, 0, 0)
    lct(a, b, c, d) -> (a, b, c, d, 0, 0)
    fresnel(z)      -> (1, z, 0, 1, 0, 0)
    offset_ft(u0, w0) -> (0, 1, -1, 0, u0, w0)
    """
    kind = kind.lower().replace("-", "_")
    if kind not in SPECIAL_KINDS:
        raise ValueError(
            f"Unknown special transform '{kind}', expected {SPECIAL_KINDS}"
        )

    if kind == "ft":
        values = (0.0, 1.0, -1.0, 0.0, 0.0, 0.0)
    elif kind == "frft":
        (alpha,) = args
        cos_a, sin_a = math.cos(alpha), math.sin(alpha)
        # snap rounding noise such as cos(pi/2) = 6e-17
        cos_a = 0.0 if abs(cos_a) < 1e-15 else cos_a
        sin_a = 0.0 if abs(sin_a) < 1e-15 else sin_a
        values = (cos_a, sin_a, -sin_a, cos_a, 0.0, 0.0)
    elif kind == "lct":
        a, b, c, d = args
        values = (a, b, c, d, 0.0, 0.0)
    elif kind == "fresnel":
        (z,) = args
        values = (1.0, z, 0.0, 1.0, 0.0, 0.0)
    else:
        u0, w0 = args
        values = (0.0, 1.0, -1.0, 0.0, u0, w0)

    params = OlctParams(*values)
    if not params.is_main_branch:
        raise DegenerateCase(f"{kind}{tuple(args)} gives b = {params.b!r}")
    return params


def inverse_params(params: OlctParams) -> OlctParams:
    """The completed inverse tuple (d, -b, -c, a, b w0 - d u0, c u0 - a w0)."""
    p = params
    return OlctParams(
        p.d,
        -p.b,
        -p.c,
        p.a,
        p.b * p.w0 - p.d * p.u0,
        p.c * p.u0 - p.a * p.w0,
    )
