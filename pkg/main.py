"""

 OLCT toolkit command line

 Transforms, convolutions, filters and identity checks of the offset linear
 canonical transform on sampled signals.

"""

import argparse
import sys

from src.constants.common import (
    CONVOLUTION_VARIANTS,
    DEMO_PIPELINES,
    DERIVATIVE_SCHEMES,
    EXIT_CODES,
    EXTRAPOLATION_METHODS,
    GENERATOR_KINDS,
    INVERSE_METHODS,
)
from src.core import INVERSE_TUPLE_CONSTANTS
from src.entry import COMMANDS
from src.exceptions import OlctError
from src.logger import logger, set_log_level
from src.utils.parsing import open_config_with_defaults, resolve_seed


def add_params_argument(parser, required=False):
    parser.add_argument(
        "-p",
        "--params",
        required=required,
        dest="params",
        help="Comma-separated a,b,c,d,u0,w0 (pi terms such as pi/3 accepted)",
    )


def add_grid_arguments(parser, what="x"):
    parser.add_argument("--x-start", type=float, dest="x_start", help=f"{what} origin")
    parser.add_argument("--dx", type=float, dest="dx", help=f"{what} step")
    parser.add_argument("--n", type=int, dest="n", help="Number of points")


def add_io_arguments(parser, output_required=True):
    parser.add_argument("--in", required=True, dest="input", help="Input CSV file")
    parser.add_argument(
        "--out", required=output_required, dest="output", help="Output file"
    )


def build_parser():
    argparser = argparse.ArgumentParser(prog="olct")
    argparser.add_argument(
        "-c",
        "--config",
        required=False,
        dest="config",
        help="Run config: flat 'key = value' text or JSON",
    )
    argparser.add_argument(
        "-l",
        "--log-level",
        required=False,
        dest="log_level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Overrides logging.level of the config",
    )
    argparser.add_argument(
        "-s",
        "--seed",
        required=False,
        type=int,
        dest="seed",
        help="Overrides the OLCT_SEED environment variable and the config seed",
    )
    subparsers = argparser.add_subparsers(dest="command", required=True)

    generate = subparsers.add_parser("generate", help="Write a test or demo signal")
    generate.add_argument("--kind", required=True, choices=GENERATOR_KINDS)
    generate.add_argument("--out", required=True, dest="output")
    add_params_argument(generate)
    add_grid_arguments(generate)
    for option in ["center", "width", "rate", "freq", "amplitude"]:
        generate.add_argument(f"--{option}", type=float, dest=option)
    generate.add_argument("--center-freq", type=float, dest="center_freq")
    generate.add_argument("--envelope-width", type=float, dest="envelope_width")
    generate.add_argument("--lo", type=float, dest="lo", help="Lower rect/band edge")
    generate.add_argument("--hi", type=float, dest="hi", help="Upper rect/band edge")
    generate.add_argument("--smooth", type=float, dest="smooth")
    generate.add_argument("--level", type=float, dest="level", help="Noise level")

    transform = subparsers.add_parser("transform", help="Forward OLCT of a signal")
    add_params_argument(transform)
    add_io_arguments(transform)
    transform.add_argument("--method", choices=["fast", "direct"], default="fast")
    transform.add_argument("--n-fft", type=int, dest="n_fft")
    transform.add_argument("--u-start", type=float, dest="u_start")
    transform.add_argument("--du", type=float, dest="du")
    transform.add_argument("--m", type=int, dest="m", help="Number of u points")

    inverse = subparsers.add_parser("inverse", help="Inverse OLCT of a spectrum")
    add_io_arguments(inverse)
    add_grid_arguments(inverse, "Output x")
    inverse.add_argument("--method", choices=INVERSE_METHODS, default="adjoint")
    inverse.add_argument(
        "--constant", choices=INVERSE_TUPLE_CONSTANTS, default="none"
    )

    convolve = subparsers.add_parser("convolve", help="OLCT convolution of two signals")
    add_params_argument(convolve)
    add_io_arguments(convolve)
    convolve.add_argument("--with", required=True, dest="other")
    convolve.add_argument("--method", choices=["time", "spectral"], default="time")
    convolve.add_argument(
        "--variant", choices=[v.replace("_", "-") for v in CONVOLUTION_VARIANTS]
    )

    correlate = subparsers.add_parser("correlate", help="OLCT correlation")
    add_params_argument(correlate)
    add_io_arguments(correlate)
    correlate.add_argument("--with", required=True, dest="other")
    correlate.add_argument("--variant", choices=["as-printed", "proof"])

    filter_parser = subparsers.add_parser("filter", help="Multiplicative filter")
    add_params_argument(filter_parser)
    add_io_arguments(filter_parser)
    filter_parser.add_argument("--kind", choices=["low", "band", "high"])
    filter_parser.add_argument("--edges", help="One edge, or two for band")
    filter_parser.add_argument("--rolloff", type=float)
    filter_parser.add_argument(
        "--prototype", help="Filter by convolution with this prototype signal"
    )

    for name, help_text in [
        ("pw-estimate", "Band limit from iterated derivative-chirp norms"),
        ("boas-estimate", "High-pass limit from iterated Boas integral norms"),
    ]:
        estimate = subparsers.add_parser(name, help=help_text)
        add_params_argument(estimate)
        add_io_arguments(estimate, output_required=False)
        estimate.add_argument("--n-max", type=int, dest="n_max")
        estimate.add_argument("--method", choices=EXTRAPOLATION_METHODS)
        estimate.add_argument("--no-project", action="store_true", dest="no_project")
        if name == "pw-estimate":
            estimate.add_argument("--derivative", choices=DERIVATIVE_SCHEMES)

    verify = subparsers.add_parser("verify", help="Run every identity check")
    add_params_argument(verify)
    verify.add_argument("--out", dest="output", help="JSON report path")

    demo = subparsers.add_parser("demo", help="Run a demonstration")
    demo.add_argument("name", choices=["chirp-denoise"])
    demo.add_argument("--pipeline", choices=DEMO_PIPELINES)
    demo.add_argument("--out-dir", dest="out_dir")
    return argparser


def parse_args(argv=None):
    return vars(build_parser().parse_args(argv))


def load_run_config(args):
    config = open_config_with_defaults(args.get("config"))
    config.seed = resolve_seed(args.get("seed"), config)
    set_log_level(args.get("log_level") or config.logging.level)
    return config


def entry_point_for_args(args):
    try:
        config = load_run_config(args)
        return COMMANDS[args["command"]](args, config)
    except (OlctError, OSError, ValueError) as error:
        # json.JSONDecodeError is a ValueError
        logger.critical(f"{type(error).__name__}: {error}")
        return EXIT_CODES.USAGE_ERROR


def cli_main(argv=None):
    try:
        args = parse_args(argv)
    except SystemExit as error:
        # argparse exits 2 on usage errors and 0 on --help
        return error.code if isinstance(error.code, int) else EXIT_CODES.USAGE_ERROR
    return entry_point_for_args(args)


if __name__ == "__main__":
    sys.exit(cli_main())
