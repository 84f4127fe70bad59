"""
Fixed names and codes shared by the CLI, the file formats and the suites.
"""
from dotmap import DotMap

# Filenames
REPORT_FILENAME = "report.json"

EXIT_CODES = DotMap(
    {
        "OK": 0,
        "VERIFICATION_FAILED": 1,
        "USAGE_ERROR": 2,
    },
    _dynamic=False,
)

SEED_ENV_VAR = "OLCT_SEED"

# Signal files
SIGNAL_KINDS = ["signal", "spectrum"]
SIGNAL_COLUMNS = ["x", "re", "im"]
HEADER_PREFIX = "#"
HEADER_KEYS = [
    "kind",
    "x_start",
    "dx",
    "n",
    "params",
    "source_x_start",
    "source_dx",
    "n_signal",
]

SPECIAL_KINDS = ["ft", "frft", "lct", "fresnel", "offset_ft"]

CONVOLUTION_VARIANTS = ["as_printed", "consistent"]
CORRELATION_VARIANTS = ["as_printed", "proof_consistent"]
CORRELATION_CHIRPS = ["statement", "proof"]
BOAS_MULTIPLIERS = ["printed", "consistent"]
# T(u) forms; only "product" turns the convolution theorem into a pure product
CHIRP_T_FORMS = ["product", "as_printed"]

INVERSE_METHODS = ["adjoint", "direct", "tuple"]
DERIVATIVE_SCHEMES = ["spectral", "fd4"]
EXTRAPOLATION_METHODS = ["last_value", "richardson", "power_law"]

FILTER_KINDS = ["low_pass", "band_pass", "high_pass"]
DEMO_PIPELINES = ["mask", "convolution"]

GENERATOR_KINDS = [
    "gaussian",
    "lfm_chirp",
    "rect",
    "tone",
    "olct_bandlimited",
    "olct_highpass",
    "olct_gaussian_band",
    "noise",
]
