"""Static figures for the command-line reports.

Uses the non-interactive Agg backend and a small publication style; every
function writes one PNG and returns its path.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

golden = (math.sqrt(5) - 1) / 2
fig_width = 5.0

STYLE = {
    "figure.figsize": (fig_width, fig_width * golden),
    "figure.dpi": 100,
    "savefig.dpi": 200,
    "savefig.bbox": "tight",
    "font.family": "serif",
    "font.size": 9,
    "mathtext.fontset": "stix",
    "axes.labelsize": 9,
    "axes.linewidth": 0.6,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.fontsize": 8,
    "legend.frameon": False,
    "lines.linewidth": 1.0,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "xtick.major.width": 0.6,
    "ytick.major.width": 0.6,
}


def _save(fig, path):
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_intensity(path, curves, xlabel="x (mm)", x_scale=1e3, title=None, window=None):
    """``curves`` maps a label to ``(x, intensity)``; each is normalised to its peak."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for label, (x, y) in curves.items():
            x = np.asarray(x)
            y = np.asarray(y)
            sel = np.ones(x.size, bool) if window is None else np.abs(x) <= window
            peak = y[sel].max() if sel.any() and y[sel].max() > 0 else 1.0
            ax.plot(x[sel] * x_scale, y[sel] / peak, label=label)
        ax.set_xlabel(xlabel)
        ax.set_ylabel("normalised intensity")
        if len(curves) > 1:
            ax.legend()
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_scan(path, positions, counts, expected, x_scale=1e3):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        x = np.asarray(positions) * x_scale
        ax.plot(x, expected, color="0.3", label="expected")
        ax.plot(x, counts, ".", ms=3, color="C3", label="counts")
        ax.set_xlabel("detector position (mm)")
        ax.set_ylabel("counts per dwell")
        ax.legend()
        return _save(fig, path)


def plot_sweep(path, traces, x_scale=1e3, offset=1.1):
    """Waterfall of normalised intensities; ``traces`` maps alpha/(pi/2) to ``(x, I)``."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(fig_width, fig_width))
        for i, (frac, (x, y)) in enumerate(sorted(traces.items())):
            y = np.asarray(y)
            ax.plot(np.asarray(x) * x_scale, y / y.max() + i * offset, color="C0")
            ax.text(1.0, i * offset + 0.2, rf"$\alpha={frac:g}\,\pi/2$",
                    transform=ax.get_yaxis_transform(), ha="right", fontsize=8)
        ax.set_xlabel("x (mm)")
        ax.set_yticks([])
        return _save(fig, path)


def plot_kernel_phase(path, x, phase, spherical, parabolic, x_scale=1e3):
    """Residual phase after removing the mean offset against each wavefront model."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        x = np.asarray(x) * x_scale
        for label, model in (("spherical", spherical), ("parabolic", parabolic)):
            res = np.asarray(phase) - model
            ax.plot(x, res - res.mean(), label=f"vs {label}")
        ax.set_xlabel("x (mm)")
        ax.set_ylabel("phase residual (rad)")
        ax.legend()
        return _save(fig, path)


def plot_signal(path, coords, before, after, label_after="transformed"):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.plot(coords, np.abs(before) ** 2, label="input")
        ax.plot(coords, np.abs(after) ** 2, label=label_after)
        ax.set_xlabel(r"reduced coordinate $\rho$, $\sigma$")
        ax.set_ylabel(r"$|\phi|^2$")
        ax.legend()
        return _save(fig, path)
