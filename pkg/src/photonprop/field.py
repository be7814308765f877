"""Sampled one-dimensional complex fields and aperture/source descriptions.

A :class:`SampledField` holds the transverse amplitude on a uniform grid
``x_j = x0 + j*dx``.  Its ``curvature`` is the radius of the reference
sphere the amplitudes are referred to (``None`` for a flat reference).
With an ``exp(+ikr)`` convention the field on the tangent plane is::

    U_plane(x) = samples(x) * exp(-i*pi*x**2 / (wavelength*R))

so a positive ``R`` (centre downstream) describes a converging wave.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Union

import numpy as np

from .errors import GridTooNarrow, InvalidSpec, OutOfRange

__all__ = [
    "SampledField",
    "RectSlit",
    "Gaussian",
    "GaussianPair",
    "CustomSource",
    "SourceSpec",
    "symmetric_x0",
    "grid_coordinates",
    "render_source",
    "energy",
    "resample",
    "source_from_json",
    "source_to_json",
]


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def grid_coordinates(n: int, dx: float, x0: float) -> np.ndarray:
    return x0 + dx * np.arange(n)


def symmetric_x0(n: int, dx: float) -> float:
    """First coordinate of an ``n``-point grid symmetric about zero."""
    return -0.5 * (n - 1) * dx


@dataclass(frozen=True)
class SampledField:
    samples: np.ndarray
    dx: float
    x0: float
    wavelength: float
    curvature: Optional[float] = None

    def __post_init__(self):
        s = _frozen(self.samples)
        if s.ndim != 1 or s.size < 2:
            raise InvalidSpec("a field needs at least two samples")
        if not self.dx > 0:
            raise InvalidSpec(f"grid pitch must be positive, got {self.dx!r}")
        if not self.wavelength > 0:
            raise InvalidSpec(f"wavelength must be positive, got {self.wavelength!r}")
        if self.curvature is not None and (self.curvature == 0 or not np.isfinite(self.curvature)):
            raise InvalidSpec("curvature must be a finite nonzero radius or None (flat)")
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "dx", float(self.dx))
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "wavelength", float(self.wavelength))

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def x(self) -> np.ndarray:
        return grid_coordinates(self.n, self.dx, self.x0)

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.samples) ** 2

    @property
    def k(self) -> float:
        return 2 * np.pi / self.wavelength

    def replace(self, **changes) -> "SampledField":
        kw = dict(samples=self.samples, dx=self.dx, x0=self.x0,
                  wavelength=self.wavelength, curvature=self.curvature)
        kw.update(changes)
        return SampledField(**kw)

    def referred_to(self, radius: Optional[float]) -> "SampledField":
        """Re-express the same physical field on a reference sphere of ``radius``."""
        if radius == self.curvature:
            return self
        inv = (0.0 if radius is None else 1.0 / radius) - \
              (0.0 if self.curvature is None else 1.0 / self.curvature)
        chirp = np.exp(1j * np.pi * inv * self.x ** 2 / self.wavelength)
        return self.replace(samples=self.samples * chirp, curvature=radius)

    def on_plane(self) -> "SampledField":
        return self.referred_to(None)

    def metadata(self) -> dict:
        return {
            "n": self.n,
            "dx": self.dx,
            "x0": self.x0,
            "lambda_m": self.wavelength,
            "curvature": self.curvature,
        }


def energy(field: SampledField) -> float:
    """Discrete energy ``sum |u_j|^2 dx``."""
    return float(np.sum(np.abs(field.samples) ** 2) * field.dx)


# ---------------------------------------------------------------- sources


def _positive(name, value):
    if not (isinstance(value, (int, float)) and np.isfinite(value) and value > 0):
        raise InvalidSpec(f"{name} must be a positive length, got {value!r}")


@dataclass(frozen=True)
class RectSlit:
    width: float
    amplitude: complex = 1.0

    def __post_init__(self):
        _positive("width", self.width)

    @property
    def support_radius(self) -> float:
        return self.width / 2

    def evaluate(self, x, dx):
        # closed support; tolerance keeps samples sitting on the edge inside
        inside = np.abs(x) <= self.width / 2 + 1e-9 * dx
        return np.where(inside, self.amplitude, 0.0).astype(complex)


@dataclass(frozen=True)
class Gaussian:
    """Gaussian amplitude; ``waist`` is the 1/e^2 intensity radius."""

    waist: float
    amplitude: complex = 1.0

    def __post_init__(self):
        _positive("waist", self.waist)

    @property
    def support_radius(self) -> float:
        return 2 * self.waist

    def evaluate(self, x, dx):
        return self.amplitude * np.exp(-(x / self.waist) ** 2).astype(complex)


@dataclass(frozen=True)
class GaussianPair:
    waist: float
    separation: float
    relative_phase: float = 0.0
    amplitude: complex = 1.0

    def __post_init__(self):
        _positive("waist", self.waist)
        if not (np.isfinite(self.separation) and self.separation >= 0):
            raise InvalidSpec(f"separation must be >= 0, got {self.separation!r}")

    @property
    def support_radius(self) -> float:
        return self.separation / 2 + 2 * self.waist

    def evaluate(self, x, dx):
        h = self.separation / 2
        right = np.exp(-((x - h) / self.waist) ** 2)
        left = np.exp(-((x + h) / self.waist) ** 2)
        return self.amplitude * (right + np.exp(1j * self.relative_phase) * left)


@dataclass(frozen=True)
class CustomSource:
    samples: np.ndarray = dc_field(default_factory=lambda: np.zeros(0))
    amplitude: complex = 1.0

    support_radius = 0.0

    def evaluate(self, x, dx):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != x.shape:
            raise InvalidSpec(f"custom source has {s.size} samples, grid has {x.size}")
        return self.amplitude * s


SourceSpec = Union[RectSlit, Gaussian, GaussianPair, CustomSource]


def render_source(spec: SourceSpec, n: int, dx: float, x0: Optional[float] = None,
                  wavelength: float = 632e-9) -> SampledField:
    """Evaluate ``spec`` on the grid ``x0 + j*dx``.

    ``x0`` defaults to the grid symmetric about zero.  Raises
    :class:`GridTooNarrow` when the declared support does not fit.
    """
    if n < 2 or not dx > 0:
        raise InvalidSpec("grid needs n >= 2 and dx > 0")
    if x0 is None:
        x0 = symmetric_x0(n, dx)
    x = grid_coordinates(n, dx, x0)
    r = spec.support_radius
    if r > 0 and (x[0] > -r + 1e-9 * dx or x[-1] < r - 1e-9 * dx):
        raise GridTooNarrow(
            f"support [-{r:g}, {r:g}] m exceeds grid [{x[0]:g}, {x[-1]:g}] m")
    return SampledField(spec.evaluate(x, dx), dx, x0, wavelength)


def resample(field: SampledField, n: int, dx: float, x0: float,
             method: str = "linear") -> SampledField:
    """Interpolate ``field`` onto a new grid lying inside the old one.

    ``method`` is ``"linear"`` (default) or ``"sinc"`` (Whittaker-Shannon
    sum, O(n*n')).
    """
    if n == field.n and dx == field.dx and x0 == field.x0:
        return field
    xs = field.x
    xt = grid_coordinates(n, dx, x0)
    tol = 1e-9 * field.dx
    if xt[0] < xs[0] - tol or xt[-1] > xs[-1] + tol:
        raise OutOfRange(
            f"target grid [{xt[0]:g}, {xt[-1]:g}] leaves source grid [{xs[0]:g}, {xs[-1]:g}]")
    u = field.samples
    if method == "linear":
        out = np.interp(xt, xs, u.real) + 1j * np.interp(xt, xs, u.imag)
    elif method == "sinc":
        t = (xt[:, None] - xs[None, :]) / field.dx
        out = np.sinc(t) @ u
    else:
        raise InvalidSpec(f"unknown resampling method {method!r}")
    return field.replace(samples=out, dx=dx, x0=x0)


# ------------------------------------------------------------------- json


def _amp_to_json(a):
    a = complex(a)
    return a.real if a.imag == 0 else [a.real, a.imag]


def _amp_from_json(v):
    if v is None:
        return 1.0
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return float(v)


def source_to_json(spec: SourceSpec) -> dict:
    if isinstance(spec, RectSlit):
        d = {"type": "rect_slit", "width_m": spec.width}
    elif isinstance(spec, Gaussian):
        d = {"type": "gaussian", "waist_m": spec.waist}
    elif isinstance(spec, GaussianPair):
        d = {"type": "gaussian_pair", "waist_m": spec.waist,
             "separation_m": spec.separation, "relative_phase_rad": spec.relative_phase}
    elif isinstance(spec, CustomSource):
        s = np.asarray(spec.samples, dtype=complex)
        d = {"type": "custom", "samples_re": s.real.tolist(), "samples_im": s.imag.tolist()}
    else:
        raise InvalidSpec(f"not a source spec: {spec!r}")
    if complex(spec.amplitude) != 1:
        d["amplitude"] = _amp_to_json(spec.amplitude)
    return d


def source_from_json(d: dict) -> SourceSpec:
    try:
        kind = d["type"]
        amp = _amp_from_json(d.get("amplitude"))
        if kind == "rect_slit":
            return RectSlit(float(d["width_m"]), amp)
        if kind == "gaussian":
            return Gaussian(float(d["waist_m"]), amp)
        if kind == "gaussian_pair":
            return GaussianPair(float(d["waist_m"]), float(d["separation_m"]),
                                float(d.get("relative_phase_rad", 0.0)), amp)
        if kind == "custom":
            s = np.asarray(d["samples_re"], float) + 1j * np.asarray(d.get("samples_im", 0.0), float)
            return CustomSource(s, amp)
    except (KeyError, TypeError) as exc:
        raise InvalidSpec(f"malformed source description: {exc}") from exc
    raise InvalidSpec(f"unknown source type {kind!r}")
