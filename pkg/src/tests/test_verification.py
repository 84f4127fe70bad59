import json
import math

import numpy as np
import pytest

from src.verification import (
    VerificationReport,
    jsonable,
    ratio_statistics,
    relative_l2_error,
    relative_max_error,
)


def test_reports_pass_on_the_tolerance():
    assert VerificationReport.build("edge", 1e-6, 1e-6, 1e-6).passed
    assert not VerificationReport.build("over", 2e-6, 2e-6, 1e-6).passed
    with pytest.raises(ValueError):
        VerificationReport("liar", 1.0, 1.0, 1e-6, True)


def test_reports_serialize():
    report = VerificationReport.build(
        "check",
        np.float64(1e-12),
        math.inf,
        1e-6,
        constant=1j,
        ratios=np.array([1.0, 2.0]),
        flag=np.bool_(True),
    )
    data = json.loads(json.dumps(report.to_dict()))
    assert data["rel_err"] == "inf"
    assert data["details"] == {
        "constant": {"re": 0.0, "im": 1.0},
        "ratios": [1.0, 2.0],
        "flag": True,
    }


def test_jsonable_keeps_plain_values():
    assert jsonable({1: (np.int64(2), None, "x")}) == {"1": [2, None, "x"]}
    assert jsonable(float("nan")) == "nan"


def test_relative_max_error_skips_the_floor():
    reference = np.array([1.0, 0.5, 1e-12])
    test = np.array([1.0, 0.5 + 1e-3, 1.0])
    max_abs, rel = relative_max_error(test, reference)
    assert max_abs == pytest.approx(1e-3)
    assert rel == pytest.approx(1e-3)
    assert relative_max_error(np.zeros(3), np.zeros(3)) == (0.0, 0.0)
    assert relative_max_error(np.ones(3), np.zeros(3)) == (1.0, math.inf)


def test_relative_l2_error():
    max_abs, rel = relative_l2_error(np.array([3.0, 4.0]), np.array([3.0, 0.0]))
    assert max_abs == 4.0
    assert rel == pytest.approx(4 / 3)


def test_ratio_statistics_see_a_constant_factor():
    reference = np.exp(1j * np.linspace(0, 3, 50))
    mean, deviation = ratio_statistics(2j * reference, reference)
    assert mean == pytest.approx(2j)
    assert deviation == pytest.approx(0.0, abs=1e-12)
    _, deviation = ratio_statistics(reference**2, reference)
    assert deviation > 0.1
