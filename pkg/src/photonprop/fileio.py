"""CSV and JSON emission of fields, reduced signals and scans.

Numbers are written in full-precision scientific notation (``%.17e``),
independent of locale; every CSV has a single header row.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .counting import DetectorScan
from .errors import InvalidSpec
from .field import SampledField
from .frft import ReducedSignal

__all__ = [
    "FIELD_COLUMNS",
    "SCAN_COLUMNS",
    "SIGNAL_COLUMNS",
    "write_table",
    "read_table",
    "write_field",
    "read_field",
    "write_signal",
    "read_signal",
    "write_scan",
    "write_json",
    "to_jsonable",
]

FIELD_COLUMNS = ("x_m", "re", "im", "intensity")
SIGNAL_COLUMNS = ("coord", "re", "im", "intensity")
SCAN_COLUMNS = ("position_m", "expected", "counts")
_FMT = "%.17e"


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays; non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    return obj


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(json.dumps(to_jsonable(obj), indent=2, allow_nan=False) + "\n")
    return path


def _with_ext(path: Path, ext: str) -> Path:
    # not with_suffix: names such as "sweep_alpha_0.8000" contain dots
    if path.suffix in (".csv", ".json"):
        path = path.with_suffix("")
    return path.with_name(path.name + ext)


def write_table(path, columns, data: dict, fmt: str = "csv") -> Path:
    """Write equal-length columns as CSV (one header row) or as a JSON object of lists.

    The extension is set from ``fmt``.
    """
    path = Path(path)
    cols = [np.asarray(data[c]) for c in columns]
    if fmt == "json":
        return write_json(_with_ext(path, ".json"), dict(zip(columns, cols)))
    if fmt != "csv":
        raise InvalidSpec(f"unknown format {fmt!r}")
    path = _with_ext(path, ".csv")
    fmts = ["%d" if np.issubdtype(c.dtype, np.integer) else _FMT for c in cols]
    np.savetxt(path, np.column_stack(cols), fmt=fmts, delimiter=",",
               header=",".join(columns), comments="")
    return path


def read_table(path) -> dict:
    path = Path(path)
    if path.suffix == ".json":
        return {k: np.asarray(v) for k, v in json.loads(path.read_text()).items()}
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    arr = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return {h: arr[:, i] for i, h in enumerate(header)}


def _sidecar(path: Path) -> Path:
    return path.with_name(path.stem + ".meta.json")


def write_field(path, field: SampledField, fmt: str = "csv", extra=None) -> Path:
    """Samples as ``x_m, re, im, intensity`` plus a ``.meta.json`` sidecar."""
    u = field.samples
    out = write_table(path, FIELD_COLUMNS,
                      {"x_m": field.x, "re": u.real, "im": u.imag, "intensity": field.intensity}, fmt)
    meta = field.metadata()
    if extra:
        meta.update(extra)
    write_json(_sidecar(out), meta)
    return out


def read_field(path) -> SampledField:
    path = Path(path)
    t = read_table(path)
    meta = json.loads(_sidecar(path).read_text())
    return SampledField(t["re"] + 1j * t["im"], meta["dx"], meta["x0"], meta["lambda_m"],
                        meta.get("curvature"))


def write_signal(path, signal: ReducedSignal, fmt: str = "csv", extra=None) -> Path:
    u = signal.samples
    out = write_table(path, SIGNAL_COLUMNS,
                      {"coord": signal.coords, "re": u.real, "im": u.imag,
                       "intensity": np.abs(u) ** 2}, fmt)
    meta = {"n": signal.n, "d": signal.d, "start": signal.start}
    if extra:
        meta.update(extra)
    write_json(_sidecar(out), meta)
    return out


def read_signal(path) -> ReducedSignal:
    path = Path(path)
    t = read_table(path)
    side = _sidecar(path)
    if side.is_file():
        meta = json.loads(side.read_text())
        return ReducedSignal(t["re"] + 1j * t["im"], meta["d"], meta["start"])
    c = t["coord"]
    return ReducedSignal(t["re"] + 1j * t["im"], float(c[1] - c[0]), float(c[0]))


def write_scan(path, scan: DetectorScan, fmt: str = "csv", extra=None) -> Path:
    out = write_table(path, SCAN_COLUMNS,
                      {"position_m": scan.positions, "expected": scan.expected,
                       "counts": scan.counts}, fmt)
    meta = scan.metadata()
    if extra:
        meta.update(extra)
    write_json(_sidecar(out), meta)
    return out
