import re

import jsonschema
from jsonschema import validate
from rich.table import Table

from src.exceptions import ConfigInvalid
from src.logger import console, logger
from src.schemas import SCHEMA_JSONS, SCHEMA_VALIDATORS


def validate_config_json(json_data, config_path):
    logger.debug(f"Validating run config: {config_path}")
    try:
        validate(instance=json_data, schema=SCHEMA_JSONS["config"])
    except jsonschema.exceptions.ValidationError as _err:  # NOQA
        table = Table(show_lines=True)
        table.add_column("Key", style="cyan", no_wrap=True)
        table.add_column("Error", style="magenta")
        errors = sorted(
            SCHEMA_VALIDATORS["config"].iter_errors(json_data),
            key=lambda e: list(map(str, e.path)),
        )
        for error in errors:
            key, validator, msg = parse_validation_error(error)

            if validator == "required":
                requiredProperty = re.findall(r"'(.*?)'", msg)[0]
                table.add_row(
                    f"{key}.{requiredProperty}",
                    f"{msg}. Check for spelling errors in the key",
                )
            elif validator == "additionalProperties":
                table.add_row(key, f"{msg}. Unknown keys are not accepted")
            else:
                table.add_row(key, msg)
        console.print(table, justify="center")
        raise ConfigInvalid(
            f"Provided run config is invalid: '{config_path}'"
        ) from None


def parse_validation_error(error):
    return (
        (".".join(map(str, error.path)) if len(error.path) > 0 else "$root"),
        error.validator,
        error.message,
    )
