import math
import os
import re
from copy import deepcopy
from fractions import Fraction
from pathlib import Path

from deepmerge import Merger
from dotmap import DotMap

from src.constants.common import SEED_ENV_VAR
from src.defaults import CONFIG_DEFAULTS
from src.exceptions import ConfigInvalid, ParseError, ResourceNotFoundError
from src.logger import logger
from src.utils.file import load_json
from src.utils.validations import validate_config_json

OVERRIDE_MERGER = Merger(
    # pass in a list of tuples,with the
    # strategies you are looking to apply
    # to each type.
    [
        # (list, ["prepend"]),
        (dict, ["merge"])
    ],
    # next, choose the fallback strategies,
    # applied to all other types:
    ["override"],
    # finally, choose the strategies in
    # the case where the types conflict:
    ["override"],
)

FLAT_LINE_REGEX = r"^\s*([A-Za-z_][\w.]*)\s*=\s*(.*?)\s*$"
PI_TERM_REGEX = r"^([+-]?[\d.]*)\*?pi(?:/([\d.]+))?$"


def open_config_with_defaults(config_path=None, overrides=None):
    """Defaults, then the user file, then explicit overrides, validated as a whole."""
    user_config = {} if config_path is None else read_config_file(config_path)
    merged = OVERRIDE_MERGER.merge(deepcopy(CONFIG_DEFAULTS.toDict()), user_config)
    if overrides:
        merged = OVERRIDE_MERGER.merge(merged, overrides)
    validate_config_json(merged, config_path or "<defaults>")
    # https://github.com/drgrib/dotmap/issues/74
    return DotMap(merged, _dynamic=False)


def read_config(path):
    return open_config_with_defaults(path)


def read_config_file(config_path):
    path = Path(config_path)
    if not path.exists():
        logger.error(f"Config file not found at: '{path}'")
        raise ResourceNotFoundError(f"Config file not found: '{path}'")
    if path.suffix.lower() == ".json":
        return load_json(path)
    with open(path, "r") as f:
        return parse_flat_config(f.read(), path)


def parse_flat_config(text, path=None):
    config = {}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        match = re.match(FLAT_LINE_REGEX, line)
        if match is None:
            raise ParseError(
                f"Expected 'key = value', got '{raw_line.strip()}'", path, line_number
            )
        dotted_key, raw_value = match.groups()
        *parents, leaf = dotted_key.split(".")
        section = config
        for parent in parents:
            section = section.setdefault(parent, {})
            if not isinstance(section, dict):
                raise ParseError(
                    f"Key '{dotted_key}' nests under a plain value", path, line_number
                )
        try:
            section[leaf] = parse_flat_value(raw_value)
        except ValueError as error:
            raise ParseError(str(error), path, line_number) from None
    return config


def parse_flat_value(raw_value):
    value = raw_value.strip()
    lowered = value.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    if lowered in ("null", "none", ""):
        return None
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        return value[1:-1]
    if "," in value:
        return [parse_number(item) for item in value.split(",") if item.strip()]
    try:
        return parse_number(value)
    except ValueError:
        return value


def parse_number(text):
    number = parse_float_or_fraction(text)
    if isinstance(text, str) and re.fullmatch(r"\s*[+-]?\d+\s*", text):
        return int(text)
    return number


def parse_float_or_fraction(result):
    if type(result) == str:
        text = result.strip().lower().replace(" ", "")
        pi_match = re.match(PI_TERM_REGEX, text)
        if pi_match is not None:
            factor, divisor = pi_match.groups()
            factor = 1.0 if factor in ("", "+") else -1.0 if factor == "-" else factor
            result = float(factor) * math.pi / float(divisor or 1)
        elif "/" in text:
            result = float(Fraction(text))
        else:
            result = float(text)
    else:
        result = float(result)
    return result


def parse_params_text(text):
    values = [item for item in str(text).split(",") if item.strip()]
    if len(values) != 6:
        raise ConfigInvalid(
            f"Expected six comma-separated parameters a,b,c,d,u0,w0, got '{text}'"
        )
    try:
        return [parse_float_or_fraction(value) for value in values]
    except ValueError:
        raise ConfigInvalid(f"Could not parse parameters '{text}'") from None


def parse_number_list(text):
    try:
        return [parse_float_or_fraction(item) for item in str(text).split(",") if item]
    except ValueError:
        raise ConfigInvalid(f"Could not parse number list '{text}'") from None


def resolve_seed(cli_seed, config):
    if cli_seed is not None:
        return int(cli_seed)
    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None and env_seed.strip():
        try:
            return int(env_seed)
        except ValueError:
            raise ConfigInvalid(
                f"{SEED_ENV_VAR} must be an integer, got '{env_seed}'"
            ) from None
    return int(config.seed)
