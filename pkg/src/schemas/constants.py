positive_number = {"type": "number", "minimum": 0}
positive_integer = {"type": "integer", "minimum": 0}
tolerance = {"type": "number", "exclusiveMinimum": 0, "maximum": 1}

PARAMS_SCHEMA = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 6,
    "maxItems": 6,
}

GRID_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["x_start", "dx", "n"],
    "properties": {
        "x_start": {"type": "number"},
        "dx": {"type": "number", "exclusiveMinimum": 0},
        "n": {"type": "integer", "minimum": 2},
    },
}
