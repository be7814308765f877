"""Photon-counting scans of a diffracted field.

Each detector position integrates the intensity over a 1D window and the
count in one dwell is Poisson distributed with mean
``rate_scale * dwell * window_integral``.  Every position draws from its
own Philox stream keyed by ``(seed, position_index)``, so results do not
depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateModel, OutOfWindow
from .field import SampledField

__all__ = [
    "RNG_NAME",
    "DetectorScan",
    "ChiSquare",
    "integrate_detector",
    "window_integrals",
    "scan_positions",
    "rate_for_total",
    "simulate_scan",
    "ks_distance",
    "chi_square_fit",
]

RNG_NAME = "numpy.random.Philox(SeedSequence([seed, position_index]))"


@dataclass(frozen=True)
class DetectorScan:
    positions: np.ndarray
    detector_width: float
    dwell_time: float
    rate_scale: float
    counts: np.ndarray
    seed: int
    expected: Optional[np.ndarray] = None
    rng: str = RNG_NAME

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def metadata(self) -> dict:
        return {
            "seed": self.seed,
            "rng": self.rng,
            "rate_scale": self.rate_scale,
            "dwell_s": self.dwell_time,
            "detector_width_m": self.detector_width,
            "n_positions": int(self.positions.size),
            "total_counts": self.total,
        }


def integrate_detector(intensity: SampledField, center: float, width: float) -> float:
    """Trapezoidal integral of ``|u|^2`` over ``[center - width/2, center + width/2]``.

    Window edges between samples are handled by linear interpolation.
    """
    x = intensity.x
    y = intensity.intensity
    lo, hi = center - width / 2, center + width / 2
    tol = 1e-9 * intensity.dx
    if lo < x[0] - tol or hi > x[-1] + tol:
        raise OutOfWindow(f"detector window [{lo:g}, {hi:g}] leaves grid [{x[0]:g}, {x[-1]:g}]")
    lo, hi = max(lo, x[0]), min(hi, x[-1])
    inner = (x > lo) & (x < hi)
    xs = np.concatenate(([lo], x[inner], [hi]))
    ys = np.concatenate(([np.interp(lo, x, y)], y[inner], [np.interp(hi, x, y)]))
    return float(np.sum(0.5 * (ys[1:] + ys[:-1]) * np.diff(xs)))


def window_integrals(intensity: SampledField, positions, width) -> np.ndarray:
    return np.array([integrate_detector(intensity, c, width) for c in positions])


def scan_positions(span: float, step: float) -> np.ndarray:
    """Centres from ``-span`` to ``+span`` inclusive, ``step`` apart."""
    m = int(round(span / step))
    return step * np.arange(-m, m + 1)


def rate_for_total(intensity: SampledField, positions, width, dwell, total) -> float:
    """Rate scale giving ``total`` expected counts over the whole scan."""
    s = window_integrals(intensity, positions, width).sum()
    if s <= 0:
        raise DegenerateModel("field has no intensity inside the scan windows")
    return total / (dwell * s)


def simulate_scan(field_at_z: SampledField, positions, detector_width: float,
                  dwell: float, rate_scale: float, seed: int) -> DetectorScan:
    positions = np.asarray(positions, float)
    expected = rate_scale * dwell * window_integrals(field_at_z, positions, detector_width)
    counts = np.empty(positions.size, dtype=np.int64)
    for i, lam in enumerate(expected):
        gen = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, i])))
        counts[i] = gen.poisson(lam)
    return DetectorScan(positions, detector_width, dwell, rate_scale, counts, seed, expected)


def ks_distance(counts, model) -> float:
    """Largest gap between the cumulative normalised counts and model over scan order."""
    c = np.asarray(counts, float)
    m = np.asarray(model, float)
    return float(np.max(np.abs(np.cumsum(c) / c.sum() - np.cumsum(m) / m.sum())))


@dataclass(frozen=True)
class ChiSquare:
    statistic: float
    dof: int
    n_bins: int

    @property
    def reduced(self) -> float:
        return self.statistic / self.dof if self.dof > 0 else 0.0


def _merge(expected, observed, min_expected):
    e_out, o_out = [], []
    e_acc = o_acc = 0.0
    for e, o in zip(expected, observed):
        e_acc += e
        o_acc += o
        if e_acc >= min_expected:
            e_out.append(e_acc)
            o_out.append(o_acc)
            e_acc = o_acc = 0.0
    if e_acc > 0 or o_acc > 0:
        if e_out:
            e_out[-1] += e_acc
            o_out[-1] += o_acc
        else:
            e_out.append(e_acc)
            o_out.append(o_acc)
    return np.array(e_out), np.array(o_out)


def chi_square_fit(scan: DetectorScan, model, min_expected: float = 5.0) -> ChiSquare:
    """Pearson chi-square of the counts against ``model`` scaled to the scan total.

    Adjacent bins are merged left to right until each expects at least
    ``min_expected`` counts.  One degree of freedom goes to the scaling.
    """
    observed = np.asarray(scan.counts, float)
    model = np.asarray(model, float)
    total = observed.sum()
    if total == 0 and not np.any(model > 0):
        return ChiSquare(0.0, 0, 0)
    if not np.any(model > 0):
        raise DegenerateModel("model is zero everywhere but counts were recorded")
    if total == 0:
        raise DegenerateModel("no counts recorded; nothing to fit")
    expected = model * (total / model.sum())
    e, o = _merge(expected, observed, min_expected)
    if e.size < 2 or not np.all(e >= min_expected):
        raise DegenerateModel(
            f"fewer than two bins reach {min_expected:g} expected counts after merging")
    stat = float(np.sum((o - e) ** 2 / e))
    return ChiSquare(stat, int(e.size - 1), int(e.size))
