import json
import os
from copy import deepcopy

import numpy as np
from freezegun import freeze_time

from main import cli_main
from src.params import make_params, special_params
from src.signal import Grid, SampledSignal

FROZEN_TIMESTAMP = "1970-01-01"

# grid and signal shared by most module tests; the Gaussian is negligible
# at both ends so no EdgeLeakage is raised
TEST_GRID = Grid(-8.0, 0.0625, 256)

GENERAL_PARAMS = make_params(1, 1, 1, 2, 1, 0)
OFFSET_PARAMS = make_params(2, 1, 1, 1, 0.5, -0.3)
NEGATIVE_B_PARAMS = make_params(0.5, -2, 0.5, 0, 0.25, 0.75)


def sweep_params():
    return [
        special_params("ft"),
        special_params("frft", np.pi / 3),
        GENERAL_PARAMS,
        OFFSET_PARAMS,
        NEGATIVE_B_PARAMS,
    ]


def gaussian_signal(grid=TEST_GRID, center=0.0, width=1.0, freq=0.0):
    x = grid.points
    samples = np.exp(-0.5 * ((x - center) / width) ** 2 + 1j * freq * x)
    return SampledSignal(grid, samples)


def run_cli(argv):
    with freeze_time(FROZEN_TIMESTAMP):
        return cli_main([str(arg) for arg in argv])


def write_modified(modify_content, boilerplate, sample_json_path):
    if boilerplate is None:
        return

    content = deepcopy(boilerplate)

    if modify_content is not None:
        returned_value = modify_content(content)
        if returned_value is not None:
            content = returned_value

    with open(sample_json_path, "w") as f:
        json.dump(content, f)


def remove_file(path):
    if os.path.exists(path):
        os.remove(path)


def generate_write_config_and_run(config_path, config_boilerplate):
    """Runs the CLI with a config written from the boilerplate.

    The returned function takes the argv after ``-c <config>`` and an optional
    ``modify_config`` callback, and returns the exit code.
    """
    if config_boilerplate is None:
        raise Exception("No boilerplate found. Provide a config boilerplate.")

    def write_config_and_run(argv, modify_config=None):
        write_modified(modify_config, config_boilerplate, config_path)
        try:
            return run_cli(["-c", config_path, *argv])
        finally:
            remove_file(config_path)

    return write_config_and_run
