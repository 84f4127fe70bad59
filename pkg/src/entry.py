"""
Subcommand handlers of the command line. Each takes the parsed argument dict
and the validated run config and returns an exit code.
"""
from pathlib import Path

from src.constants.common import EXIT_CODES, REPORT_FILENAME
from src.convolution import as_signal, convolve_spectral, convolve_time, correlate
from src.core import olct_b_zero, olct_direct, olct_fast, olct_inverse
from src.exceptions import ConfigInvalid
from src.filters import (
    FilterSpec,
    apply_filter,
    demo_chirp_denoise,
    design_mask,
    filter_grid,
    mask_from_prototype,
)
from src.generators import GeneratorSpec, generate
from src.logger import logger
from src.params import OlctParams
from src.runner import default_sweep, print_summary, run_verification
from src.signal import Grid, SampledSignal, Spectrum
from src.spectral import boas_highpass_estimate, pw_bandwidth_estimate
from src.utils.file import dump_json, read_signal, write_signal
from src.utils.parsing import parse_number_list, parse_params_text

# CLI spellings of the config enums
FILTER_KIND_NAMES = {"low": "low_pass", "band": "band_pass", "high": "high_pass"}
CORRELATION_VARIANT_NAMES = {"as-printed": "as_printed", "proof": "proof_consistent"}

GENERATOR_OPTIONS = [
    "center",
    "width",
    "rate",
    "center_freq",
    "envelope_width",
    "freq",
    "amplitude",
    "lo",
    "hi",
    "smooth",
    "level",
]


def resolve_params(args, config, required=True):
    if args.get("params"):
        return OlctParams.from_sequence(parse_params_text(args["params"]))
    if config.params is not None:
        return OlctParams.from_sequence(config.params)
    if required:
        raise ConfigInvalid("--params a,b,c,d,u0,w0 is required for this command")
    return None


def resolve_grid(args, config):
    """--x-start/--dx/--n where given, the config grid otherwise."""
    values = config.grid.toDict()
    for key in ("x_start", "dx", "n"):
        if args.get(key) is not None:
            values[key] = args[key]
    return Grid(values["x_start"], values["dx"], values["n"])


def read_input_signal(path) -> SampledSignal:
    signal = read_signal(path)
    # spectra enter the signal-level operations as samples on their u grid
    return as_signal(signal) if isinstance(signal, Spectrum) else signal


def read_x_signal(path) -> SampledSignal:
    signal = read_signal(path)
    if isinstance(signal, Spectrum):
        raise ConfigInvalid(f"'{path}' holds a spectrum, expected a signal")
    return signal


def command_generate(args, config):
    values = {
        option: args[option]
        for option in GENERATOR_OPTIONS
        if args.get(option) is not None
    }
    params = resolve_params(args, config, required=args["kind"].startswith("olct_"))
    spec = GeneratorSpec(
        args["kind"],
        resolve_grid(args, config),
        params=params,
        seed=config.seed,
        **values,
    )
    signal = generate(spec)
    write_signal(args["output"], signal)
    logger.info(f"Wrote {spec.kind} ({signal.n} samples) to '{args['output']}'")
    return EXIT_CODES.OK


def command_transform(args, config):
    params = resolve_params(args, config)
    signal = read_x_signal(args["input"])
    if not params.is_main_branch:
        # b = 0 is a chirp-multiplied dilation, not an integral transform
        result = olct_b_zero(params, signal)
        spectrum = Spectrum(result.grid, result.samples, params)
    elif args["method"] == "direct":
        u_grid = None
        if args.get("u_start") is not None:
            if args.get("du") is None or args.get("m") is None:
                raise ConfigInvalid("--u-start needs --du and --m")
            u_grid = Grid(args["u_start"], args["du"], args["m"])
        spectrum = olct_direct(params, signal, u_grid)
    else:
        spectrum = olct_fast(params, signal, n_fft=args.get("n_fft"))
    write_signal(args["output"], spectrum)
    logger.info(
        f"Transformed '{args['input']}' with params {params}: "
        f"{spectrum.n} points, du = {spectrum.du:g}, norm = {spectrum.norm():.12g}"
    )
    return EXIT_CODES.OK


def command_inverse(args, config):
    spectrum = read_signal(args["input"])
    if not isinstance(spectrum, Spectrum):
        raise ConfigInvalid(f"'{args['input']}' holds a signal, not a spectrum")
    x_grid = None
    if args.get("x_start") is not None:
        x_grid = resolve_grid(args, config)
    signal = olct_inverse(spectrum, args["method"], x_grid, args["constant"])
    write_signal(args["output"], signal)
    logger.info(f"Inverted '{args['input']}' ({args['method']}) to '{args['output']}'")
    return EXIT_CODES.OK


def command_convolve(args, config):
    params = resolve_params(args, config)
    f, g = read_input_signal(args["input"]), read_input_signal(args["other"])
    if args["method"] == "spectral":
        result = convolve_spectral(params, f, g)
    else:
        variant = (args.get("variant") or config.convolution.variant).replace("-", "_")
        result = convolve_time(params, f, g, variant)
    write_signal(args["output"], result)
    logger.info(f"Convolved ({args['method']}) into '{args['output']}'")
    return EXIT_CODES.OK


def command_correlate(args, config):
    params = resolve_params(args, config)
    p, q = read_input_signal(args["input"]), read_input_signal(args["other"])
    variant = config.correlation.variant
    if args.get("variant"):
        variant = CORRELATION_VARIANT_NAMES[args["variant"]]
    result = correlate(params, p, q, variant)
    write_signal(args["output"], result)
    logger.info(f"Correlated ({variant}) into '{args['output']}'")
    return EXIT_CODES.OK


def command_filter(args, config):
    params = resolve_params(args, config)
    signal = read_x_signal(args["input"])
    if args.get("prototype"):
        mask = mask_from_prototype(params, read_x_signal(args["prototype"]))
    else:
        kind = config.filter.kind
        if args.get("kind"):
            kind = FILTER_KIND_NAMES[args["kind"]]
        edges = config.filter.edges
        if args.get("edges"):
            edges = parse_number_list(args["edges"])
        rolloff = args.get("rolloff")
        if rolloff is None:
            rolloff = config.filter.rolloff
        spec = FilterSpec(kind, edges, rolloff)
        mask = design_mask(spec, filter_grid(params, signal))
    result = apply_filter(params, signal, mask)
    write_signal(args["output"], result)
    logger.info(f"Filtered '{args['input']}' into '{args['output']}'")
    return EXIT_CODES.OK


def _estimate_options(args, config):
    spectral = config.spectral
    return {
        "n_max": args.get("n_max") or spectral.n_max,
        "method": args.get("method") or spectral.method,
        "project": spectral.project and not args.get("no_project", False),
    }


def _write_sequence(args, sequence):
    if args.get("output"):
        dump_json(args["output"], sequence.to_dict())
    logger.info(
        f"{sequence.operator} limit estimate {sequence.estimate:.6g} "
        f"(direct {sequence.gamma_direct:.6g}, {len(sequence.orders)} terms)"
    )
    return EXIT_CODES.OK


def command_pw_estimate(args, config):
    params = resolve_params(args, config)
    options = _estimate_options(args, config)
    scheme = args.get("derivative") or config.spectral.derivative
    sequence = pw_bandwidth_estimate(
        params, read_x_signal(args["input"]), scheme=scheme, **options
    )
    return _write_sequence(args, sequence)


def command_boas_estimate(args, config):
    params = resolve_params(args, config)
    options = _estimate_options(args, config)
    sequence = boas_highpass_estimate(
        params, read_x_signal(args["input"]), **options
    )
    return _write_sequence(args, sequence)


def command_verify(args, config):
    params = resolve_params(args, config, required=False)
    sweep = default_sweep() if params is None else [params]
    report = run_verification(config, sweep)
    print_summary(report)
    output = args.get("output") or config.outputs.report
    if output is None:
        output = Path(config.outputs.out_dir, REPORT_FILENAME)
    dump_json(output, report)
    if report["passed"]:
        logger.info(f"All checks passed, report written to '{output}'")
        return EXIT_CODES.OK
    logger.error(f"Some checks failed, see '{output}'")
    return EXIT_CODES.VERIFICATION_FAILED


def command_demo(args, config):
    if args.get("pipeline"):
        config.demo.pipeline = args["pipeline"]
    result = demo_chirp_denoise(config)
    out_dir = Path(args.get("out_dir") or config.outputs.out_dir)
    for name, signal in (
        ("clean", result.clean),
        ("received", result.received),
        ("output", result.output),
        ("reference", result.reference),
        ("clean_spectrum", result.clean_spectrum),
        ("received_spectrum", result.received_spectrum),
        ("output_spectrum", result.output_spectrum),
    ):
        write_signal(out_dir.joinpath(f"{name}.csv"), signal)
    summary = {
        **result.report.to_dict(),
        "params": result.params.as_list(),
        "band": list(result.band),
        "pipeline": result.pipeline,
        "seed": config.seed,
    }
    dump_json(out_dir.joinpath("snr_report.json"), summary)
    logger.info(
        f"SNR {result.report.snr_in_db:.2f} dB -> {result.report.snr_out_db:.2f} dB "
        f"(gain {result.report.gain_db:.2f} dB), outputs in '{out_dir}'"
    )
    return EXIT_CODES.OK


COMMANDS = {
    "generate": command_generate,
    "transform": command_transform,
    "inverse": command_inverse,
    "convolve": command_convolve,
    "correlate": command_correlate,
    "filter": command_filter,
    "pw-estimate": command_pw_estimate,
    "boas-estimate": command_boas_estimate,
    "verify": command_verify,
    "demo": command_demo,
}
