"""JSON schemas for the CLI configuration files.

Complex numbers are [re, im] pairs throughout; unknown keys are rejected.
"""

_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

_COMPLEX_VECTOR = {"type": "array", "items": _COMPLEX, "minItems": 1}

_POLY = {"type": "array", "items": _COMPLEX, "minItems": 1}

_SEED = {"type": "integer", "minimum": 0}

CERTIFY_BALLS = {
    "type": "object",
    "additionalProperties": False,
    "required": ["balls"],
    "properties": {
        "balls": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["centre", "radius"],
                "properties": {
                    "centre": _COMPLEX_VECTOR,
                    "radius": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
        "samples_per_ball": {"type": "integer", "minimum": 100},
        "resolution": {"type": "integer", "minimum": 32},
        "seed": _SEED,
    },
}

HULL_MEMBERSHIP = {
    "type": "object",
    "additionalProperties": False,
    "required": ["samples_csv", "probes_csv"],
    "properties": {
        "samples_csv": {"type": "string"},
        "probes_csv": {"type": "string"},
        "degree": {"type": "integer", "minimum": 1},
        "restarts": {"type": "integer", "minimum": 1},
        "iterations": {"type": "integer", "minimum": 1},
        "seed": _SEED,
    },
}

VARIETY_REPORT = {
    "type": "object",
    "additionalProperties": False,
    "required": ["p", "q"],
    "properties": {
        "p": _POLY,
        "q": _POLY,
        "ball": {
            "type": "object",
            "additionalProperties": False,
            "required": ["centre", "radius"],
            "properties": {
                "centre": {
                    "type": "array",
                    "items": _COMPLEX,
                    "minItems": 2,
                    "maxItems": 2,
                },
                "radius": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "sample_count": {"type": "integer", "minimum": 10},
        "degrees": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "seed": _SEED,
    },
}

APPROX_TEST = {
    "type": "object",
    "additionalProperties": False,
    "required": ["m", "n", "degrees"],
    "properties": {
        "m": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "degrees": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "train_count": {"type": "integer", "minimum": 50},
        "seed": _SEED,
    },
}

SAMPLE_VARIETY = {
    "type": "object",
    "additionalProperties": False,
    "required": ["p", "q"],
    "properties": {
        "p": _POLY,
        "q": _POLY,
        "disk": {
            "type": "object",
            "additionalProperties": False,
            "required": ["centre", "radius"],
            "properties": {
                "centre": _COMPLEX,
                "radius": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "count": {"type": "integer", "minimum": 1},
        "seed": _SEED,
    },
}

BY_SUBCOMMAND = {
    "certify-balls": CERTIFY_BALLS,
    "hull-membership": HULL_MEMBERSHIP,
    "variety-report": VARIETY_REPORT,
    "approx-test": APPROX_TEST,
    "sample-variety": SAMPLE_VARIETY,
}
