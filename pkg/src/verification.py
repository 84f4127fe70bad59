"""
Identity-check reports and the error metrics they are scored with.
"""
import math
from typing import Any, Dict

import numpy as np
from attrs import field, frozen

from src.constants.numerics import REFERENCE_FLOOR


def jsonable(value):
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": jsonable(value.real), "im": jsonable(value.imag)}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # non-finite values are spelled out, json has no literal for them
        return value if math.isfinite(value) else str(value)
    return value


@frozen(eq=False)
class VerificationReport:
    name: str
    max_abs_err: float = field(converter=float)
    rel_err: float = field(converter=float)
    tolerance: float = field(converter=float)
    passed: bool = field(converter=bool)
    details: Dict[str, Any] = field(factory=dict)

    @classmethod
    def build(cls, name, max_abs_err, rel_err, tolerance, **details):
        passed = bool(rel_err <= tolerance)
        return cls(name, max_abs_err, rel_err, tolerance, passed, details)

    def __attrs_post_init__(self):
        if self.passed != (self.rel_err <= self.tolerance):
            raise ValueError(
                f"Report '{self.name}' is inconsistent: rel_err={self.rel_err!r}, "
                f"tolerance={self.tolerance!r}, passed={self.passed}"
            )

    def to_dict(self):
        return {
            "name": self.name,
            "max_abs_err": jsonable(self.max_abs_err),
            "rel_err": jsonable(self.rel_err),
            "tolerance": jsonable(self.tolerance),
            "passed": self.passed,
            "details": jsonable(self.details),
        }


def reference_mask(reference, floor=REFERENCE_FLOOR):
    magnitude = np.abs(reference)
    peak = magnitude.max() if magnitude.size else 0.0
    return magnitude > floor * peak, peak


def relative_max_error(test, reference, floor=REFERENCE_FLOOR, mask=None):
    """(max abs error, max abs error / reference peak) over the scored points.

    Points where the reference falls below ``floor`` of its peak are skipped.
    A zero reference scores 0 when the test side is zero too, inf otherwise.
    """
    test = np.asarray(test)
    reference = np.asarray(reference)
    scored, peak = reference_mask(reference, floor)
    if mask is not None:
        scored &= mask
    if peak == 0 or not scored.any():
        max_abs = float(np.max(np.abs(test))) if test.size else 0.0
        return max_abs, (0.0 if max_abs == 0 else math.inf)
    max_abs = float(np.max(np.abs(test - reference)[scored]))
    return max_abs, max_abs / float(peak)


def relative_l2_error(test, reference):
    test = np.asarray(test)
    reference = np.asarray(reference)
    error = float(np.linalg.norm(test - reference))
    scale = float(np.linalg.norm(reference))
    max_abs = float(np.max(np.abs(test - reference))) if test.size else 0.0
    if scale == 0:
        return max_abs, (0.0 if error == 0 else math.inf)
    return max_abs, error / scale


def ratio_statistics(test, reference, floor=REFERENCE_FLOOR, mask=None):
    """Mean of test/reference and its relative standard deviation.

    An identity that holds up to one constant factor has a deviation near zero.
    """
    test = np.asarray(test)
    reference = np.asarray(reference)
    scored, peak = reference_mask(reference, floor)
    if mask is not None:
        scored &= mask
    if peak == 0 or not scored.any():
        return complex("nan"), math.nan
    ratio = test[scored] / reference[scored]
    mean = complex(np.mean(ratio))
    if mean == 0:
        return mean, math.inf
    deviation = float(np.sqrt(np.mean(np.abs(ratio - mean) ** 2)) / abs(mean))
    return mean, deviation
