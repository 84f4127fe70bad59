import json

import numpy as np
import pytest

from src.core import olct_fast
from src.exceptions import HeaderMismatch, ParseError, ResourceNotFoundError
from src.signal import SampledSignal, Spectrum
from src.tests.utils import OFFSET_PARAMS, gaussian_signal
from src.utils.file import dump_json, load_json, read_signal, write_signal

HEADER = ["# kind=signal", "# x_start=0", "# dx=0.5", "# n=3", "x,re,im"]


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n")
    return path


def test_signal_round_trip_is_exact(tmp_path):
    f = gaussian_signal(center=0.3, freq=0.7)
    path = tmp_path.joinpath("signal.csv")
    write_signal(path, f)
    restored = read_signal(path)
    assert isinstance(restored, SampledSignal)
    assert restored.grid == f.grid
    assert np.array_equal(restored.samples, f.samples)


def test_spectrum_round_trip_keeps_params_and_source(tmp_path):
    spectrum = olct_fast(OFFSET_PARAMS, gaussian_signal())
    path = tmp_path.joinpath("nested", "spectrum.csv")
    write_signal(path, spectrum)
    restored = read_signal(path)
    assert isinstance(restored, Spectrum)
    assert restored.params == OFFSET_PARAMS
    assert restored.source == spectrum.source
    assert np.array_equal(restored.samples, spectrum.samples)
    assert restored.is_native()


def test_free_form_comments_are_skipped(tmp_path):
    lines = ["# written by hand", *HEADER, "0,1,0", "0.5,2,-1", "1,3,0"]
    signal = read_signal(write_lines(tmp_path.joinpath("s.csv"), lines))
    assert np.array_equal(signal.samples, [1, 2 - 1j, 3])


def test_row_count_must_match_the_header(tmp_path):
    lines = ["# kind=signal", "# x_start=0", "# dx=1", "# n=100", "x,re,im"]
    lines += [f"{i},0,0" for i in range(99)]
    with pytest.raises(HeaderMismatch):
        read_signal(write_lines(tmp_path.joinpath("short.csv"), lines))


def test_spectrum_files_need_params(tmp_path):
    lines = ["# kind=spectrum", *HEADER[1:], "0,1,0", "0.5,1,0", "1,1,0"]
    with pytest.raises(HeaderMismatch):
        read_signal(write_lines(tmp_path.joinpath("spectrum.csv"), lines))


def test_bad_rows_report_their_line(tmp_path):
    lines = [*HEADER, "0,1,0", "0.5,abc,0", "1,1,0"]
    with pytest.raises(ParseError) as error:
        read_signal(write_lines(tmp_path.joinpath("bad.csv"), lines))
    assert error.value.line_number == 7
    assert "line 7" in str(error.value)


@pytest.mark.parametrize(
    "lines, line_number",
    [
        (["# kind=signal", "# color=blue", *HEADER[1:]], 2),
        (["# kind=signal", "# x_start=0", "# dx=0.5", "# n=three", "x,re,im"], 4),
        (["# kind=image", *HEADER[1:]], 1),
        ([*HEADER[:4], "t,re,im"], 5),
        (["# kind=signal", "# x_start=0", "# dx=inf", "# n=3", "x,re,im"], 3),
    ],
)
def test_header_errors_report_their_line(tmp_path, lines, line_number):
    with pytest.raises(ParseError) as error:
        read_signal(write_lines(tmp_path.joinpath("bad.csv"), lines))
    assert error.value.line_number == line_number


def test_header_errors_without_a_line(tmp_path):
    for lines in (HEADER[:4], ["# kind=signal", "# dx=0.5", "# n=3", "x,re,im"]):
        with pytest.raises(ParseError):
            read_signal(write_lines(tmp_path.joinpath("bad.csv"), lines))
    # a negative step is a malformed grid
    lines = ["# kind=signal", "# x_start=0", "# dx=-0.5", "# n=3", "x,re,im"]
    lines += ["0,0,0"] * 3
    with pytest.raises(ParseError):
        read_signal(write_lines(tmp_path.joinpath("bad.csv"), lines))


def test_missing_signal_file(tmp_path):
    with pytest.raises(ResourceNotFoundError):
        read_signal(tmp_path.joinpath("absent.csv"))
    with pytest.raises(FileNotFoundError):
        read_signal(tmp_path.joinpath("absent.csv"))


def test_json_helpers(tmp_path):
    path = tmp_path.joinpath("out", "report.json")
    dump_json(path, {"passed": True, "runs": []})
    assert load_json(path) == {"passed": True, "runs": []}
    path.write_text("{not json")
    with pytest.raises(json.JSONDecodeError):
        load_json(path)
    with pytest.raises(FileNotFoundError):
        load_json(tmp_path.joinpath("absent.json"))
