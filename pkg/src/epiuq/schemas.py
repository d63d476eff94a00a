"""JSON schemas for the config file and for every JSON output of the CLI."""

_interval = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "uniform": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 2,
                    "maxItems": 2,
                }
            },
            "required": ["uniform"],
            "additionalProperties": False,
        },
        {
            "properties": {"point": {"type": "number"}},
            "required": ["point"],
            "additionalProperties": False,
        },
    ],
}

_number_or_null = {"type": ["number", "null"]}

CONFIG = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "epiuq run config",
    "type": "object",
    "properties": {
        "schema_version": {"const": 1},
        "seed": {"type": "integer", "minimum": 0},
        "M": {"type": "number", "minimum": 1},
        "structure": {
            "type": "object",
            "properties": {
                "kind": {"enum": ["sir", "seir", "seminr", "SIR", "SEIR", "SEMINR"]},
                "m": {"type": "number", "exclusiveMinimum": 0},
                "n": {"type": "number", "exclusiveMinimum": 0},
            },
            "required": ["kind"],
            "additionalProperties": False,
        },
        "distributions": {
            "type": "object",
            "properties": {
                "lambda": _interval,
                "infectious_period": _interval,
                "latent_period": _interval,
            },
            "required": ["lambda", "infectious_period"],
            "additionalProperties": False,
        },
        "window": {
            "type": ["array", "null"],
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
        "mce": {
            "type": "object",
            "properties": {
                "grid": {"type": "array", "items": {"type": "number", "minimum": 2}, "minItems": 1},
                "B": {"type": "integer", "minimum": 2},
                "statistic": {"type": ["string", "number"]},
            },
            "additionalProperties": False,
        },
        "compare": {
            "type": "object",
            "properties": {"bins": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        },
    },
    "required": ["schema_version"],
    "additionalProperties": False,
}

MC_SUMMARY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "epiuq mc summary",
    "type": "object",
    "properties": {
        "q025": {"type": "number"},
        "q50": {"type": "number"},
        "q975": {"type": "number"},
        "n_accepted": {"type": "integer", "minimum": 0},
        "n_total": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
    },
    "required": ["q025", "q50", "q975", "n_accepted", "n_total", "seed"],
    "additionalProperties": False,
}

MCE_TABLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "epiuq mce table",
    "type": "object",
    "properties": {
        "seed": {"type": "integer"},
        "statistic": {"type": ["string", "number"]},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "M": {"type": "integer"},
                    "B": {"type": "integer"},
                    "mce": {"type": "number", "minimum": 0},
                    "n_failed": {"type": "integer", "minimum": 0},
                },
                "required": ["M", "B", "mce", "n_failed"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["seed", "statistic", "rows"],
    "additionalProperties": False,
}

TRAJECTORY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "epiuq trajectory",
    "type": "object",
    "properties": {
        "columns": {"type": "array", "items": {"type": "string"}},
        "rows": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "truncated": {"type": "boolean"},
        "seed": {"type": ["integer", "null"]},
    },
    "required": ["columns", "rows"],
    "additionalProperties": False,
}

_band = {
    "type": "object",
    "properties": {
        "q025": {"type": "array", "items": {"type": "number"}},
        "q50": {"type": "array", "items": {"type": "number"}},
        "q975": {"type": "array", "items": {"type": "number"}},
        "mean": {"type": "array", "items": {"type": "number"}},
    },
    "required": ["q025", "q50", "q975", "mean"],
}

ENSEMBLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "epiuq ensemble summary",
    "type": "object",
    "properties": {
        "seed": {"type": "integer"},
        "n_runs": {"type": "integer", "minimum": 1},
        "n_truncated": {"type": "integer", "minimum": 0},
        "extinction_threshold": {"type": "integer"},
        "extinction_fraction": {"type": "number", "minimum": 0, "maximum": 1},
        "mean_major_final_size": _number_or_null,
        "final_size_quantiles": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
        "final_sizes": {"type": "array", "items": {"type": "integer"}},
        "grid": {"type": "array", "items": {"type": "number"}},
        "bands": {
            "type": "object",
            "properties": {k: _band for k in "SEIR"},
            "required": list("SEIR"),
        },
    },
    "required": [
        "seed", "n_runs", "extinction_fraction", "final_size_quantiles",
        "final_sizes", "grid", "bands",
    ],
    "additionalProperties": False,
}

_quantiles = {
    "type": "object",
    "properties": {k: {"type": "number"} for k in ("q025", "q50", "q975")}
    | {"n_accepted": {"type": "integer"}, "n_total": {"type": "integer"}},
    "required": ["q025", "q50", "q975", "n_accepted", "n_total"],
}

COMPARE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "epiuq structure comparison",
    "type": "object",
    "properties": {
        "M": {"type": "integer"},
        "seed": {"type": "integer"},
        "window": {"type": ["array", "null"]},
        "m": {"type": "number"},
        "n": {"type": "number"},
        "structures": {
            "type": "object",
            "properties": {k: _quantiles for k in ("sir", "seir", "seminr")},
            "required": ["sir", "seir", "seminr"],
        },
        "histogram": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "structure": {"enum": ["sir", "seir", "seminr"]},
                    "bin_lo": {"type": "number"},
                    "bin_hi": {"type": "number"},
                    "count": {"type": "integer", "minimum": 0},
                },
                "required": ["structure", "bin_lo", "bin_hi", "count"],
            },
        },
    },
    "required": ["M", "seed", "window", "structures"],
}

ALL = {
    "config": CONFIG,
    "mc": MC_SUMMARY,
    "mce": MCE_TABLE,
    "trajectory": TRAJECTORY,
    "ensemble": ENSEMBLE,
    "compare": COMPARE,
}
