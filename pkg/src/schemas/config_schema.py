from src.constants.common import (
    CONVOLUTION_VARIANTS,
    CORRELATION_VARIANTS,
    DEMO_PIPELINES,
    DERIVATIVE_SCHEMES,
    EXTRAPOLATION_METHODS,
    FILTER_KINDS,
)
from src.schemas.constants import (
    GRID_SCHEMA,
    PARAMS_SCHEMA,
    positive_integer,
    positive_number,
    tolerance,
)

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "olct-toolkit/src/schemas/config-schema.json",
    "title": "Run Config Schema",
    "description": "OLCT toolkit run configuration",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "params": {"anyOf": [PARAMS_SCHEMA, {"type": "null"}]},
        "seed": {"type": "integer", "minimum": 0},
        "grid": GRID_SCHEMA,
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "parseval": tolerance,
                "riemann_lebesgue": tolerance,
                "oracle": tolerance,
                "round_trip": tolerance,
                "reduction": tolerance,
                "convolution": tolerance,
                "correlation": tolerance,
                "inverse_tuple": tolerance,
                "delta": {
                    "type": "array",
                    "items": tolerance,
                    "minItems": 1,
                },
                "boas": tolerance,
                "delta_boas_inverse": tolerance,
                "pw_estimate": tolerance,
                "boas_estimate": tolerance,
            },
        },
        "convolution": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "variant": {"type": "string", "enum": CONVOLUTION_VARIANTS},
            },
        },
        "correlation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "variant": {"type": "string", "enum": CORRELATION_VARIANTS},
            },
        },
        "spectral": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "n_max": {"type": "integer", "minimum": 4, "maximum": 64},
                "method": {"type": "string", "enum": EXTRAPOLATION_METHODS},
                "derivative": {"type": "string", "enum": DERIVATIVE_SCHEMES},
                "boas_exclusion": positive_number,
                "project": {"type": "boolean"},
            },
        },
        "filter": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "kind": {"type": "string", "enum": FILTER_KINDS},
                "edges": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 1,
                    "maxItems": 2,
                },
                "rolloff": {"type": ["number", "null"], "minimum": 0},
            },
        },
        "demo": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "params": PARAMS_SCHEMA,
                "grid": GRID_SCHEMA,
                "envelope_width": {"type": "number", "exclusiveMinimum": 0},
                "center_freq": {"type": "number"},
                "tone_freq": {"type": "number"},
                "tone_amplitude": positive_number,
                "noise_db": {"type": ["number", "null"]},
                "pipeline": {"type": "string", "enum": DEMO_PIPELINES},
                "occupancy_threshold": {
                    "type": "number",
                    "exclusiveMinimum": 0,
                    "exclusiveMaximum": 1,
                },
            },
        },
        "verify": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "edge_fraction": {
                    "type": "number",
                    "exclusiveMinimum": 0,
                    "maximum": 0.5,
                },
                "l1_pairs": positive_integer,
                "delta_orders": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 1, "maximum": 8},
                },
                "boas_orders": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 1, "maximum": 8},
                },
            },
        },
        "outputs": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "report": {"type": ["string", "null"]},
                "out_dir": {"type": "string"},
            },
        },
        "logging": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "level": {
                    "type": "string",
                    "enum": ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                },
            },
        },
    },
}
