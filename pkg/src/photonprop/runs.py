"""Scenario-level runs shared by the command line and the test suite."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .counting import (DetectorScan, chi_square_fit, ks_distance, rate_for_total,
                       scan_positions, simulate_scan)
from .czt import scaled_dft
from .errors import InvalidSpec, SchemaError
from .field import SampledField, energy
from .frft import ReducedSignal
from .geometry import PropagationGeometry, geometry_from_alpha
from .propagators import PROPAGATORS, fresnel_via_frft, rayleigh_sommerfeld_oracle
from .scenarios import build_field

__all__ = [
    "parse_alphas",
    "propagate_scenario",
    "SweepStep",
    "young_sweep",
    "fringe_period",
    "central_visibility",
    "ScanRun",
    "slit_scan",
    "intensity_minima",
]


def parse_alphas(text: str) -> list:
    """``"0.8,0.85,...,1.0"`` -> [0.8, 0.85, 0.9, 0.95, 1.0].

    An ellipsis continues the step set by the two preceding values up to
    the value after it.
    """
    parts = [p.strip() for p in text.split(",") if p.strip()]
    out = []
    i = 0
    while i < len(parts):
        p = parts[i]
        if re.fullmatch(r"\.\.\.|…", p):
            if len(out) < 2 or i + 1 >= len(parts):
                raise InvalidSpec("an ellipsis needs two values before it and one after")
            base, step = out[-1], out[-1] - out[-2]
            stop = float(parts[i + 1])
            m = round((stop - base) / step) if step else -1
            if m < 1 or not math.isclose(base + m * step, stop, abs_tol=1e-9):
                raise InvalidSpec(f"cannot reach {stop} from {base} in steps of {step}")
            out.extend(round(base + j * step, 12) for j in range(1, m))
            i += 1
            continue
        try:
            out.append(float(p))
        except ValueError as exc:
            raise InvalidSpec(f"bad order {p!r}") from exc
        i += 1
    if not out:
        raise InvalidSpec("no orders given")
    return out


def _window_grid(field: SampledField, window: Optional[float]):
    if window is None:
        return None
    idx = np.nonzero(np.abs(field.x) <= window * (1 + 1e-12))[0]
    return int(idx.size), field.dx, float(field.x[idx[0]])


def propagate_scenario(cfg: dict, method: str, field: Optional[SampledField] = None) -> SampledField:
    """Propagate the scenario source over ``z_m`` and return the plane field.

    The Rayleigh-Sommerfeld oracle is evaluated on the input grid points
    inside ``window_m`` (when set) to keep its pitch guard satisfiable.
    """
    if method not in PROPAGATORS:
        raise InvalidSpec(f"unknown method {method!r}; choose from {sorted(PROPAGATORS)}")
    if "z_m" not in cfg:
        raise SchemaError("propagation needs z_m", "/z_m")
    f = build_field(cfg) if field is None else field
    z = cfg["z_m"]
    if method == "rs":
        out = rayleigh_sommerfeld_oracle(f, z, out_grid=_window_grid(f, cfg.get("window_m")))
    elif method == "frft":
        out = fresnel_via_frft(f, z)
    else:
        out = PROPAGATORS[method](f, z)
    return out.on_plane()


# ---------------------------------------------------------------- sweep


@dataclass(frozen=True)
class SweepStep:
    alpha_frac: float
    geometry: PropagationGeometry
    field: SampledField
    reduced: ReducedSignal
    energy: float


def young_sweep(cfg: dict, alphas_frac: Optional[Sequence[float]] = None) -> list:
    """Propagate the scenario source to each order ``frac * pi/2`` at fixed ``R_A``.

    Returns one :class:`SweepStep` per order with the output in physical
    units and in the reduced coordinate ``sigma``.
    """
    ra = cfg.get("R_A_m")
    if not ra or ra <= 0:
        raise SchemaError("an order sweep needs a positive R_A_m", "/R_A_m")
    alphas_frac = cfg.get("alphas_frac", [1.0]) if alphas_frac is None else alphas_frac
    f = build_field(cfg)
    steps = []
    for frac in alphas_frac:
        g = geometry_from_alpha(frac * math.pi / 2, ra, cfg["wavelength_m"])
        out = fresnel_via_frft(f, g.z, R_A=ra)
        s = g.output_scale
        red = ReducedSignal(out.samples, out.dx / s, out.x0 / s)
        steps.append(SweepStep(float(frac), g, out, red, energy(out)))
    return steps


def fringe_period(coords, intensity, search=(None, None)) -> float:
    """Period of the dominant fringe frequency of ``intensity``.

    Coarse FFT peak (excluding the zero-frequency lobe), refined on a
    64-times finer chirp-z grid and finished with a log-parabolic fit,
    which is exact for a Gaussian-enveloped cosine.
    """
    c = np.asarray(coords, float)
    y = np.asarray(intensity, float)
    n, d = c.size, c[1] - c[0]
    spec = np.abs(np.fft.rfft(y))
    f = np.fft.rfftfreq(n, d)
    lo = search[0] if search[0] is not None else 0.0
    hi = search[1] if search[1] is not None else f[-1]
    # skip the envelope lobe around zero frequency
    k0 = int(np.argmax(spec < 0.5 * spec[0]))
    sel = np.nonzero((np.arange(f.size) > k0) & (f >= lo) & (f <= hi))[0]
    k = sel[np.argmax(spec[sel])]
    df = f[1] - f[0]
    m = 129
    du = df / 64
    u0 = f[k] - (m // 2) * du
    fine = np.abs(scaled_dft(y.astype(complex), c[0], d, u0, du, m))
    j = int(np.argmax(fine[1:-1])) + 1
    a, b, cc = np.log(fine[j - 1:j + 2])
    off = 0.5 * (a - cc) / (a - 2 * b + cc)
    return 1.0 / (u0 + (j + off) * du)


def central_visibility(intensity) -> float:
    """``(I_max - I_min)/(I_max + I_min)`` from the brightest fringe and its neighbouring minima."""
    y = np.asarray(intensity, float)
    p = int(np.argmax(y))
    left = p
    while left > 0 and y[left - 1] <= y[left]:
        left -= 1
    right = p
    while right < y.size - 1 and y[right + 1] <= y[right]:
        right += 1
    i_min = max(y[left], y[right])
    return float((y[p] - i_min) / (y[p] + i_min))


def intensity_minima(x, intensity, rel_floor=1e-6):
    """Positions of interior local minima lying below ``rel_floor`` of the peak."""
    y = np.asarray(intensity, float)
    inner = (y[1:-1] < y[:-2]) & (y[1:-1] <= y[2:])
    idx = np.nonzero(inner)[0] + 1
    idx = idx[y[idx] <= rel_floor * y.max()]
    return np.asarray(x)[idx]


# ----------------------------------------------------------------- scan


@dataclass(frozen=True)
class ScanRun:
    field: SampledField
    scan: DetectorScan
    model: np.ndarray
    ks: float
    chi2: object


def slit_scan(cfg: dict, seed: int, total: Optional[float] = None) -> ScanRun:
    """Detector scan over the propagated scenario field with ``total`` expected counts."""
    if "scan" not in cfg:
        raise SchemaError("scenario has no scan block", "/scan")
    sc = cfg["scan"]
    total = sc.get("total_counts", 1e5) if total is None else total
    field = propagate_scenario(cfg, "fresnel")
    pos = scan_positions(sc["span_m"], sc["step_m"])
    rate = rate_for_total(field, pos, sc["detector_width_m"], sc["dwell_s"], total)
    scan = simulate_scan(field, pos, sc["detector_width_m"], sc["dwell_s"], rate, seed)
    model = scan.expected
    return ScanRun(field, scan, model, ks_distance(scan.counts, model), chi_square_fit(scan, model))

