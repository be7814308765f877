"""Physical-space propagation of sampled fields.

All propagators drop the global ``exp(ikz)``.  Fields carry the
``exp(+ikr)`` convention used by the Rayleigh-Sommerfeld oracle, whose
paraxial expansion gives::

    U(x, z) = (1/(i*lambda*z))**0.5 * integral U0(x') exp(i*pi*(x - x')**2/(lambda*z)) dx'
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .czt import scaled_dft
from .errors import AliasedInput, GridMismatch, KrTooSmall, NonpositiveDistance
from .field import SampledField, grid_coordinates, resample
from .frft import frft_composed
from .geometry import geometry_from_z, reduce_field, unreduce_field

__all__ = [
    "fresnel_direct",
    "fraunhofer",
    "fresnel_via_frft",
    "rayleigh_sommerfeld_oracle",
    "fresnel_number",
    "local_maxima",
    "compare_fields",
    "PROPAGATORS",
]


def fresnel_number(half_width, wavelength, z):
    return half_width ** 2 / (wavelength * z)


def _support_extent(field, rel=1e-12):
    a = np.abs(field.samples)
    nz = np.nonzero(a > rel * a.max())[0] if a.max() > 0 else np.array([0])
    x = field.x
    return x[nz[0]], x[nz[-1]]


def _one_step(field, z, input_chirp):
    if not z > 0:
        raise NonpositiveDistance(f"z must be positive, got {z!r}")
    f = field.on_plane()
    lz = f.wavelength * z
    n, dx = f.n, f.dx
    lo, hi = _support_extent(f)
    if input_chirp and max(abs(lo), abs(hi)) > lz / (2 * dx) * (1 + 1e-12):
        raise AliasedInput(
            f"input chirp undersampled: support reaches {max(abs(lo), abs(hi)):.4g} m, "
            f"limit lambda*z/(2dx) = {lz / (2 * dx):.4g} m")
    dxo = lz / (n * dx)
    centre = f.x0 + 0.5 * (n - 1) * dx
    x0o = centre - 0.5 * (n - 1) * dxo
    x_in = f.x
    g = f.samples
    if input_chirp:
        g = g * np.exp(1j * np.pi * x_in ** 2 / lz)
    core = scaled_dft(g, f.x0, dx, x0o / lz, dxo / lz)
    x_out = grid_coordinates(n, dxo, x0o)
    pref = np.sqrt(1 / (1j * lz)) * dx
    out = pref * np.exp(1j * np.pi * x_out ** 2 / lz) * core
    return SampledField(out, dxo, x0o, f.wavelength)


def fresnel_direct(field: SampledField, z: float) -> SampledField:
    """One-step Fresnel integral: chirp, scaled FFT, chirp.

    The output grid has pitch ``lambda*z/(n*dx)`` and is centred on the
    input grid centre.  The discrete transform conserves energy exactly.
    Curved inputs are first expressed on the plane.
    """
    return _one_step(field, z, input_chirp=True)


def fraunhofer(field: SampledField, z: float) -> SampledField:
    """Far-field limit: as :func:`fresnel_direct` without the input chirp."""
    return _one_step(field, z, input_chirp=False)


def fresnel_via_frft(field: SampledField, z: float, R_A: Optional[float] = None) -> SampledField:
    """Propagate by mapping onto a fractional Fourier transform.

    The field is referred to a sphere of radius ``R_A`` (default: its own
    curvature when that is on the photon branch, otherwise ``z``, the
    Fourier-plane choice).  Every admissible ``R_A`` gives the same
    result; the returned field is referred to ``R_B = -R_A`` and lives on
    the input grid.  Its plane representation equals :func:`fresnel_direct`
    wherever the two grids coincide.
    """
    if not z > 0:
        raise NonpositiveDistance(f"z must be positive, got {z!r}")
    if R_A is None:
        c = field.curvature
        R_A = c if (c is not None and 0 < z / c < 2) else z
    g = geometry_from_z(z, R_A, field.wavelength)
    v = frft_composed(reduce_field(field, g), g.alpha)
    # exp(-i alpha/2) turns the FrFT prefactor into the Fresnel one
    v = v.with_samples(v.samples * np.exp(-0.5j * g.alpha))
    return unreduce_field(v, g, "output")


def rayleigh_sommerfeld_oracle(field: SampledField, z: float,
                               out_grid: Optional[tuple] = None,
                               oversample: float = 4.0,
                               chunk: int = 256) -> SampledField:
    """Direct-sum line-source Rayleigh-Sommerfeld propagation, O(n_out * n_in).

    ``U(x) = (1/(i*lambda))**0.5 * sum_j w_j U(x_j) (z/r) exp(ik(r - z)) / sqrt(r) dx``

    with trapezoid weights ``w_j``.  ``out_grid`` is ``(n, dx, x0)``;
    defaults to the input grid.  The input pitch must resolve the kernel
    phase ``oversample`` times better than Nyquist over the pairs that
    carry signal; ``k*r`` must stay above 100 for the asymptotic kernel.
    """
    if not z > 0:
        raise NonpositiveDistance(f"z must be positive, got {z!r}")
    f = field.on_plane()
    k = f.k
    if k * z < 100:
        raise KrTooSmall(f"k*z = {k * z:.3g} < 100: asymptotic line-source kernel invalid")
    n_out, dxo, x0o = out_grid if out_grid is not None else (f.n, f.dx, f.x0)
    x_out = grid_coordinates(n_out, dxo, x0o)
    mask = f.samples != 0
    if not mask.any():
        return SampledField(np.zeros(n_out, complex), dxo, x0o, f.wavelength)
    xs = f.x[mask]
    w = np.full(f.n, f.dx)
    w[0] = w[-1] = 0.5 * f.dx
    us = (f.samples * w)[mask]
    dmax = max(abs(x_out[0] - xs[-1]), abs(x_out[-1] - xs[0]), abs(x_out[0] - xs[0]), abs(x_out[-1] - xs[-1]))
    sin_max = dmax / math.hypot(z, dmax)
    if sin_max > 0 and f.dx > f.wavelength / (2 * oversample * sin_max) * (1 + 1e-12):
        raise AliasedInput(
            f"dx = {f.dx:.4g} m exceeds lambda/(2*{oversample:g}*sin) = "
            f"{f.wavelength / (2 * oversample * sin_max):.4g} m")
    out = np.empty(n_out, dtype=complex)
    for i in range(0, n_out, chunk):
        d = x_out[i:i + chunk, None] - xs[None, :]
        d2 = d * d
        r = np.sqrt(z * z + d2)
        rz = d2 / (r + z)  # r - z without cancellation
        ker = (z / r) * np.exp(1j * np.mod(k * rz, 2 * np.pi)) / np.sqrt(r)
        out[i:i + chunk] = ker @ us
    out *= np.sqrt(1 / (1j * f.wavelength))
    return SampledField(out, dxo, x0o, f.wavelength)


PROPAGATORS = {
    "fresnel": fresnel_direct,
    "frft": fresnel_via_frft,
    "rs": rayleigh_sommerfeld_oracle,
    "fraunhofer": fraunhofer,
}


# ------------------------------------------------------------ comparison


def local_maxima(values, rel_threshold=1e-3):
    """Indices of strict interior local maxima above ``rel_threshold * max``."""
    v = np.asarray(values, float)
    if v.size < 3:
        return np.array([], dtype=int)
    inner = (v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:])
    idx = np.nonzero(inner)[0] + 1
    return idx[v[idx] >= rel_threshold * v.max()]


def _same_grid(a, b):
    return a.n == b.n and math.isclose(a.dx, b.dx, rel_tol=1e-9) and \
        abs(a.x0 - b.x0) <= 1e-9 * a.dx


def compare_fields(a: SampledField, b: SampledField, window: Optional[float] = None,
                   maxima_threshold: float = 1e-3) -> dict:
    """Intensity metrics of ``a`` against the reference ``b`` on ``b``'s grid.

    ``a`` is linearly resampled when the grids differ; ``window`` limits the
    comparison to ``|x| <= window``.  Global phases do not matter.
    """
    if not _same_grid(a, b):
        xa, xb = a.x, b.x
        lo, hi = max(xa[0], xb[0]), min(xa[-1], xb[-1])
        if lo >= hi:
            raise GridMismatch("field windows do not overlap")
        keep = (xb >= lo - 1e-9 * b.dx) & (xb <= hi + 1e-9 * b.dx)
        idx = np.nonzero(keep)[0]
        b = b.replace(samples=b.samples[idx], x0=xb[idx[0]])
        a = resample(a, b.n, b.dx, b.x0)
    x = b.x
    sel = np.ones(b.n, bool) if window is None else np.abs(x) <= window * (1 + 1e-12)
    ia, ib = a.intensity[sel], b.intensity[sel]
    xs = x[sel]
    nb = np.linalg.norm(ib)
    rel = np.linalg.norm(ia - ib) / nb if nb > 0 else float(np.linalg.norm(ia) > 0)
    ma, mb = local_maxima(ia, maxima_threshold), local_maxima(ib, maxima_threshold)
    offsets = []
    for m in mb:
        if ma.size:
            j = ma[np.argmin(np.abs(ma - m))]
            offsets.append(float(xs[j] - xs[m]))
    return {
        "rel_L2_intensity": float(rel),
        "max_abs_intensity_diff": float(np.max(np.abs(ia - ib))) if ia.size else 0.0,
        "extrema_position_offsets": offsets,
        "max_extremum_offset_samples": float(max((abs(o) for o in offsets), default=0.0) / b.dx),
        "n_maxima": [int(ma.size), int(mb.size)],
        "grid_pitch_m": b.dx,
    }
