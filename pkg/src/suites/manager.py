"""
Verification suite framework
Adapated from https://github.com/gdiepen/python_processor_example
"""
import inspect
import pkgutil
from typing import List

from src.logger import logger
from src.verification import VerificationReport


class Suite:
    """Base class that each verification suite must inherit from."""

    description = "UNKNOWN"
    # suites that do not depend on the parameter set run once per sweep
    per_params = True

    def __init__(self, config, params=None):
        self.config = config
        self.params = params
        self.tolerances = config.tolerances

    def run(self) -> List[VerificationReport]:
        """Runs every check of the suite and returns their reports"""
        raise NotImplementedError


class SuiteManager:
    """Upon creation, this class will read the suites package for modules
    that contain a class definition that is inheriting from the Suite class
    """

    def __init__(self, suites_dir="src.suites"):
        """Constructor that initiates the reading of all available suites
        when an instance of the SuiteManager object is created
        """
        self.suites_dir = suites_dir
        self.reload_suites()

    @staticmethod
    def get_name_filter(suite_name):
        def filter_function(member):
            return inspect.isclass(member) and member.__module__ == suite_name

        return filter_function

    def reload_suites(self):
        """Reset the list of all suites and initiate the walk over the main
        provided suite package to load all available suites
        """
        self.suites = {}

        logger.debug(f'Loading suites from "{self.suites_dir}"...')
        self.walk_package(self.suites_dir)

    def walk_package(self, package):
        """walk the supplied package to retrieve all suites"""
        imported_package = __import__(package, fromlist=["blah"])
        loaded_suites = []
        for _, suite_name, ispkg in pkgutil.walk_packages(
            imported_package.__path__, imported_package.__name__ + "."
        ):
            if not ispkg and suite_name != __name__:
                suite_module = __import__(suite_name, fromlist=["blah"])
                # https://stackoverflow.com/a/46206754/6242649
                clsmembers = inspect.getmembers(
                    suite_module,
                    SuiteManager.get_name_filter(suite_name),
                )
                for _, c in clsmembers:
                    # Only add classes that are a sub class of Suite, but NOT Suite itself
                    if issubclass(c, Suite) & (c is not Suite):
                        self.suites[c.__name__] = c
                        loaded_suites.append(c.__name__)

        logger.debug(f"Loaded suites: {loaded_suites}")

    def per_params_suites(self):
        return {name: c for name, c in self.suites.items() if c.per_params}

    def shared_suites(self):
        return {name: c for name, c in self.suites.items() if not c.per_params}


def worst_of(name, reports: List[VerificationReport]) -> VerificationReport:
    """One report for a sweep: the case with the largest error, plus counts."""
    worst = max(reports, key=lambda report: report.rel_err)
    return VerificationReport.build(
        name,
        worst.max_abs_err,
        worst.rel_err,
        worst.tolerance,
        cases=len(reports),
        failures=sum(not report.passed for report in reports),
        worst_case=reports.index(worst),
        **worst.details,
    )


# Singleton export
SUITE_MANAGER = SuiteManager()
