"""
Runs every discovered verification suite over a parameter sweep and collects
one JSON-ready report.
"""
import math
from datetime import datetime
from typing import List, Optional

from rich.table import Table

from src.logger import console, logger
from src.params import OlctParams, make_params, special_params
from src.suites.manager import SUITE_MANAGER
from src.verification import jsonable


def default_sweep() -> List[OlctParams]:
    return [
        special_params("ft"),
        special_params("frft", math.pi / 3),
        make_params(1, 1, 1, 2, 1, 0),
        make_params(2, 1, 1, 1, 0.5, -0.3),
    ]


def run_suites(suites, config, params=None):
    checks = []
    for name, suite_class in suites.items():
        logger.debug(f"Running {name} for {params}")
        checks.extend(suite_class(config, params).run())
    return checks


def run_verification(config, sweep: Optional[List[OlctParams]] = None):
    """{generated_at, passed, tolerances, runs: [{params, checks}]}.

    Parameter-independent suites form a run of their own with params null.
    """
    sweep = default_sweep() if sweep is None else sweep
    runs = []
    for params in sweep:
        checks = run_suites(SUITE_MANAGER.per_params_suites(), config, params)
        runs.append({"params": params.as_list(), "checks": checks})
    shared = SUITE_MANAGER.shared_suites()
    if shared:
        runs.append({"params": None, "checks": run_suites(shared, config)})

    passed = all(check.passed for run in runs for check in run["checks"])
    return {
        "generated_at": datetime.now().isoformat(),
        "passed": passed,
        "tolerances": jsonable(config.tolerances.toDict()),
        "runs": [
            {
                "params": run["params"],
                "checks": [check.to_dict() for check in run["checks"]],
            }
            for run in runs
        ],
    }


def print_summary(report):
    table = Table(show_lines=False)
    table.add_column("Params", style="cyan", no_wrap=True)
    table.add_column("Check", style="magenta")
    table.add_column("rel_err", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("Result")
    for run in report["runs"]:
        label = "-" if run["params"] is None else ",".join(
            f"{value:g}" for value in run["params"]
        )
        for check in run["checks"]:
            result = "[green]PASS" if check["passed"] else "[red]FAIL"
            table.add_row(
                label,
                check["name"],
                format_number(check["rel_err"]),
                format_number(check["tolerance"]),
                result,
            )
    console.print(table, justify="center")


def format_number(value):
    if isinstance(value, str):
        return value
    return f"{value:.3g}"
