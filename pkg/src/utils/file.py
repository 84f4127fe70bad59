import io
import json
import math
import os
from csv import QUOTE_MINIMAL
from pathlib import Path

import numpy as np
import pandas as pd

from src.constants.common import (
    HEADER_KEYS,
    HEADER_PREFIX,
    SIGNAL_COLUMNS,
    SIGNAL_KINDS,
)
from src.exceptions import (
    GridInvalid,
    HeaderMismatch,
    ParseError,
    ResourceNotFoundError,
    UnimodularityViolation,
)
from src.logger import logger
from src.params import OlctParams
from src.signal import Grid, SampledSignal, Spectrum


def load_json(path, **rest):
    try:
        with open(path, "r") as f:
            loaded = json.load(f, **rest)
    except FileNotFoundError:
        logger.error(f"JSON file not found at: '{path}'")
        raise
    except json.decoder.JSONDecodeError as error:
        logger.critical(f"Error when loading json file at: '{path}'\n{error}")
        raise
    return loaded


def dump_json(path, data):
    path = Path(path)
    if path.parent and not path.parent.exists():
        logger.debug(f"Created : {path.parent}")
        os.makedirs(path.parent)
    with open(path, "w") as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def exact_float(value):
    # repr is the shortest decimal that reads back to the same double
    return repr(float(value))


def write_signal(path, signal):
    """Writes a SampledSignal or Spectrum as '#'-headed x,re,im CSV."""
    path = Path(path)
    header = {"kind": "signal"}
    if isinstance(signal, Spectrum):
        header["kind"] = "spectrum"
    header.update(
        {
            "x_start": exact_float(signal.grid.start),
            "dx": exact_float(signal.grid.step),
            "n": str(signal.grid.n),
        }
    )
    if isinstance(signal, Spectrum):
        header["params"] = ",".join(exact_float(v) for v in signal.params.as_tuple())
        if signal.source is not None:
            header["source_x_start"] = exact_float(signal.source.start)
            header["source_dx"] = exact_float(signal.source.step)
            header["n_signal"] = str(signal.source.n)

    samples = signal.samples
    table = pd.DataFrame(
        {
            "x": [exact_float(v) for v in signal.grid.points],
            "re": [exact_float(v) for v in samples.real],
            "im": [exact_float(v) for v in samples.imag],
        },
        columns=SIGNAL_COLUMNS,
    )
    if path.parent and not path.parent.exists():
        logger.debug(f"Created : {path.parent}")
        os.makedirs(path.parent)
    with open(path, "w", newline="") as f:
        for key, value in header.items():
            f.write(f"{HEADER_PREFIX} {key}={value}\n")
        table.to_csv(f, index=False, quoting=QUOTE_MINIMAL)
    logger.debug(f"Wrote {header['kind']} of {signal.grid.n} points to '{path}'")


def read_signal(path):
    """Reads a file written by write_signal; Spectrum for kind=spectrum."""
    path = Path(path)
    if not path.exists():
        logger.error(f"Signal file not found at: '{path}'")
        raise ResourceNotFoundError(f"Signal file not found: '{path}'")
    with open(path, "r") as f:
        lines = f.read().splitlines()

    header, columns_line = parse_header(lines, path)
    if columns_line is None:
        raise ParseError("Missing the x,re,im column line", path, len(lines) + 1)
    columns = [column.strip() for column in lines[columns_line - 1].split(",")]
    if columns != SIGNAL_COLUMNS:
        raise ParseError(
            f"Expected columns {','.join(SIGNAL_COLUMNS)}, "
            f"got '{lines[columns_line - 1]}'",
            path,
            columns_line,
        )

    body = "\n".join(lines[columns_line - 1 :])
    try:
        table = pd.read_csv(
            io.StringIO(body),
            float_precision="round_trip",
            skip_blank_lines=False,
        )
    except pd.errors.ParserError as error:
        raise ParseError(f"Malformed data row: {error}", path) from None

    values = table.apply(pd.to_numeric, errors="coerce")
    bad_rows = ~np.isfinite(values.to_numpy(dtype=float)).all(axis=1)
    if bad_rows.any():
        row = int(np.argmax(bad_rows))
        raise ParseError(
            f"Row is not three finite numbers: '{lines[columns_line + row]}'",
            path,
            columns_line + row + 1,
        )

    n = header["n"]
    if len(values) != n:
        raise HeaderMismatch(
            f"Header declares n={n} but the file has {len(values)} data rows", path
        )
    samples = values["re"].to_numpy(dtype=float) + 1j * values["im"].to_numpy(
        dtype=float
    )

    try:
        grid = Grid(header["x_start"], header["dx"], n)
        if header["kind"] == "signal":
            return SampledSignal(grid, samples)
        if "params" not in header:
            raise HeaderMismatch("A spectrum file needs a params header", path)
        source = None
        if "source_x_start" in header:
            source = Grid(
                header["source_x_start"], header["source_dx"], header["n_signal"]
            )
        params = OlctParams.from_sequence(header["params"])
        return Spectrum(grid, samples, params, source)
    except (GridInvalid, UnimodularityViolation) as error:
        raise ParseError(f"Invalid header: {error}", path) from None


def parse_header(lines, path=None):
    """Header fields of a signal file and the 1-based line of its column row."""
    raw = {}
    columns_line = None
    for line_number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if not stripped.startswith(HEADER_PREFIX):
            columns_line = line_number
            break
        content = stripped[len(HEADER_PREFIX) :].strip()
        if "=" not in content:
            # free-form comment
            continue
        key, value = (part.strip() for part in content.split("=", 1))
        if key not in HEADER_KEYS:
            raise ParseError(f"Unknown header key '{key}'", path, line_number)
        raw[key] = (value, line_number)

    for required in ("kind", "x_start", "dx", "n"):
        if required not in raw:
            raise ParseError(f"Missing header field '{required}'", path)

    header = {}
    for key, (value, line_number) in raw.items():
        try:
            header[key] = parse_header_value(key, value)
        except ValueError as error:
            raise ParseError(
                f"Bad value for '{key}': {error}", path, line_number
            ) from None

    if header["kind"] not in SIGNAL_KINDS:
        raise ParseError(
            f"kind must be one of {SIGNAL_KINDS}, got '{header['kind']}'",
            path,
            raw["kind"][1],
        )
    source_keys = {"source_x_start", "source_dx", "n_signal"} & header.keys()
    if source_keys and len(source_keys) != 3:
        raise ParseError("source_x_start, source_dx and n_signal go together", path)
    return header, columns_line


def parse_header_value(key, value):
    if key == "kind":
        return value
    if key in ("n", "n_signal"):
        return int(value)
    if key == "params":
        numbers = [float(item) for item in value.split(",")]
        if len(numbers) != 6:
            raise ValueError(f"expected six values, got {len(numbers)}")
        return numbers
    number = float(value)
    if not math.isfinite(number):
        raise ValueError(f"'{value}' is not finite")
    return number
