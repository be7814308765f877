"""Run configurations: the built-in scenarios and a JSON schema for custom ones.

A config is a plain dict.  Lengths are in meters, times in seconds.
``grid.dx_m = null`` selects critical sampling ``n*dx**2 = lambda*z``, where
the one-step Fresnel output pitch equals the input pitch.
"""

from __future__ import annotations

import copy
import json
import math
from pathlib import Path
from typing import Union

import jsonschema
import numpy as np

from .errors import InvalidSpec, SchemaError
from .field import SampledField, render_source, source_from_json

__all__ = [
    "SCHEMA",
    "BUILTIN",
    "load_scenario",
    "validate",
    "grid_pitch",
    "build_field",
]

_POS = {"type": "number", "exclusiveMinimum": 0}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["name", "wavelength_m", "source", "grid"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "wavelength_m": _POS,
        "source": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": ["rect_slit", "gaussian", "gaussian_pair", "custom"]}},
        },
        "illumination": {
            "oneOf": [
                {"type": "object", "required": ["type"], "additionalProperties": False,
                 "properties": {"type": {"const": "plane"}}},
                {"type": "object", "required": ["type", "waist_m"], "additionalProperties": False,
                 "properties": {"type": {"const": "gaussian"}, "waist_m": _POS}},
            ]
        },
        "R_A_m": {"type": ["number", "null"]},
        "z_m": _POS,
        "grid": {
            "type": "object",
            "required": ["n"],
            "additionalProperties": False,
            "properties": {
                "n": {"type": "integer", "minimum": 2},
                "dx_m": {"oneOf": [_POS, {"type": "null"}]},
            },
        },
        "window_m": _POS,
        "scan": {
            "type": "object",
            "required": ["detector_width_m", "dwell_s", "step_m", "span_m"],
            "additionalProperties": False,
            "properties": {
                "detector_width_m": _POS,
                "dwell_s": _POS,
                "step_m": _POS,
                "span_m": _POS,
                "total_counts": _POS,
                "defaulted": {"type": "array", "items": {"type": "string"}},
            },
        },
        "alphas_frac": {"type": "array", "minItems": 1,
                        "items": {"type": "number", "exclusiveMinimum": 0, "maximum": 2}},
    },
}

BUILTIN = {
    "paper-slit": {
        "name": "paper-slit",
        "wavelength_m": 632e-9,
        "source": {"type": "rect_slit", "width_m": 1.905e-3},
        "illumination": {"type": "plane"},
        "R_A_m": None,
        "z_m": 0.9684,
        "grid": {"n": 8192, "dx_m": None},
        "window_m": 5e-3,
        "scan": {
            "detector_width_m": 50e-6,
            "dwell_s": 10e-3,
            "step_m": 50e-6,
            "span_m": 5e-3,
            "total_counts": 1e5,
            # not published with the measurement; chosen here
            "defaulted": ["step_m", "span_m", "total_counts"],
        },
    },
    "young": {
        "name": "young",
        "wavelength_m": 632e-9,
        "source": {"type": "gaussian_pair", "waist_m": 0.6e-3, "separation_m": 4e-3,
                   "relative_phase_rad": 0.0},
        "illumination": {"type": "plane"},
        "R_A_m": 1.0,
        "grid": {"n": 2048, "dx_m": 20e-3 / 2048},
        "alphas_frac": [0.8, 0.85, 0.9, 0.95, 1.0],
    },
}


def _pointer(path) -> str:
    return "/" + "/".join(str(p).replace("~", "~0").replace("/", "~1") for p in path) if path else ""


def validate(cfg: dict) -> dict:
    """Validate against :data:`SCHEMA`; raise SchemaError at the first offending pointer."""
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(SCHEMA).iter_errors(cfg))
    if err is not None:
        raise SchemaError(f"{_pointer(err.absolute_path) or '/'}: {err.message}",
                          _pointer(err.absolute_path))
    if "alphas_frac" in cfg and "R_A_m" in cfg and not (cfg["R_A_m"] or 0) > 0:
        raise SchemaError("an order sweep needs a positive R_A_m", "/R_A_m")
    return cfg


def load_scenario(spec: Union[str, Path, dict]) -> dict:
    """Config from a built-in name, a JSON file path, or a dict (deep-copied)."""
    if isinstance(spec, dict):
        cfg = copy.deepcopy(spec)
    elif str(spec) in BUILTIN:
        cfg = copy.deepcopy(BUILTIN[str(spec)])
    else:
        path = Path(spec)
        if not path.is_file():
            raise InvalidSpec(f"unknown scenario {str(spec)!r}: not a built-in name or a file")
        try:
            cfg = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"malformed JSON: {exc}", "") from exc
    return validate(cfg)


def grid_pitch(cfg: dict) -> float:
    dx = cfg["grid"].get("dx_m")
    if dx is not None:
        return dx
    if "z_m" not in cfg:
        raise SchemaError("critical sampling (dx_m null) needs z_m", "/grid/dx_m")
    return math.sqrt(cfg["wavelength_m"] * cfg["z_m"] / cfg["grid"]["n"])


def build_field(cfg: dict) -> SampledField:
    """Source times illumination on the scenario grid, referred to ``R_A_m`` when set."""
    n = cfg["grid"]["n"]
    f = render_source(source_from_json(cfg["source"]), n, grid_pitch(cfg),
                      wavelength=cfg["wavelength_m"])
    ill = cfg.get("illumination", {"type": "plane"})
    if ill["type"] == "gaussian":
        f = f.replace(samples=f.samples * np.exp(-(f.x / ill["waist_m"]) ** 2))
    ra = cfg.get("R_A_m")
    return f.replace(curvature=ra) if ra else f
