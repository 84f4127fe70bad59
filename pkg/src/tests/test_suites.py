from freezegun import freeze_time

from src.runner import default_sweep, print_summary, run_verification
from src.suites.manager import SUITE_MANAGER, Suite, worst_of
from src.tests.utils import FROZEN_TIMESTAMP, GENERAL_PARAMS
from src.utils.parsing import open_config_with_defaults
from src.verification import VerificationReport


class PassingSuite(Suite):
    def run(self):
        return [VerificationReport.build("always", 0.0, 0.0, 1e-6)]


class FailingSuite(Suite):
    per_params = False

    def run(self):
        return [VerificationReport.build("never", 1.0, 0.5, 1e-6)]


def test_suites_are_discovered():
    assert set(SUITE_MANAGER.suites) == {
        "TransformIdentities",
        "ClassicalReductions",
        "InverseTuple",
        "ConvolutionIdentities",
        "SpectralIdentities",
    }
    assert set(SUITE_MANAGER.shared_suites()) == {"ClassicalReductions"}
    assert "ClassicalReductions" not in SUITE_MANAGER.per_params_suites()


def test_worst_of_keeps_the_largest_error():
    reports = [
        VerificationReport.build("case", 1e-9, 1e-9, 1e-6, seed=0),
        VerificationReport.build("case", 1e-3, 1e-3, 1e-6, seed=1),
        VerificationReport.build("case", 1e-7, 1e-7, 1e-6, seed=2),
    ]
    report = worst_of("sweep", reports)
    assert report.name == "sweep"
    assert report.rel_err == 1e-3
    assert not report.passed
    assert report.details["cases"] == 3
    assert report.details["failures"] == 1
    assert report.details["worst_case"] == 1
    assert report.details["seed"] == 1


def test_default_sweep():
    sweep = default_sweep()
    assert len(sweep) == 4
    assert GENERAL_PARAMS in sweep


def test_report_layout(mocker):
    mocker.patch.object(
        SUITE_MANAGER, "per_params_suites", return_value={"PassingSuite": PassingSuite}
    )
    mocker.patch.object(SUITE_MANAGER, "shared_suites", return_value={})
    config = open_config_with_defaults()
    with freeze_time(FROZEN_TIMESTAMP):
        report = run_verification(config, [GENERAL_PARAMS])
    assert report["generated_at"] == "1970-01-01T00:00:00"
    assert report["passed"]
    assert report["tolerances"]["oracle"] == 1e-9
    (run,) = report["runs"]
    assert run["params"] == [1.0, 1.0, 1.0, 2.0, 1.0, 0.0]
    assert [check["name"] for check in run["checks"]] == ["always"]


def test_one_failing_check_fails_the_report(mocker):
    mocker.patch.object(
        SUITE_MANAGER, "per_params_suites", return_value={"PassingSuite": PassingSuite}
    )
    mocker.patch.object(
        SUITE_MANAGER, "shared_suites", return_value={"FailingSuite": FailingSuite}
    )
    report = run_verification(open_config_with_defaults(), [GENERAL_PARAMS])
    assert not report["passed"]
    assert report["runs"][-1]["params"] is None
    console_print = mocker.patch("src.runner.console.print")
    print_summary(report)
    console_print.assert_called_once()
