import math

import numpy as np
import pytest

from photonprop.errors import AliasedInput, GridMismatch, KrTooSmall, NonpositiveDistance
from photonprop.field import Gaussian, GaussianPair, RectSlit, SampledField, energy, render_source
from photonprop.geometry import geometry_from_alpha
from photonprop.propagators import (compare_fields, fraunhofer, fresnel_direct, fresnel_number,
                                    fresnel_via_frft, local_maxima, rayleigh_sommerfeld_oracle)
from photonprop.runs import intensity_minima

LAM = 632e-9


def critical(spec, n, z, lam=LAM):
    return render_source(spec, n, math.sqrt(lam * z / n), wavelength=lam)


@pytest.fixture(scope="module")
def slit():
    z = 0.9684
    f = critical(RectSlit(1.905e-3), 8192, z)
    return f, z, fresnel_direct(f, z)


def test_paper_slit_is_near_field(slit):
    f, z, out = slit
    assert fresnel_number(1.905e-3 / 2, LAM, z) == pytest.approx(1.48, abs=5e-3)
    i = out.intensity
    centre = np.abs(out.x) <= 1.905e-3 / 2
    # ripples across the geometric shadow of the slit, unlike a single sinc lobe
    assert local_maxima(i[centre]).size >= 2


def test_output_grid_and_energy(slit):
    f, z, out = slit
    assert out.dx == pytest.approx(LAM * z / (f.n * f.dx), rel=1e-14)
    assert energy(out) == pytest.approx(energy(f), rel=1e-6)
    via = fresnel_via_frft(f, z)
    assert energy(via) == pytest.approx(energy(f), rel=1e-6)


def test_frft_route_matches_direct_on_slit(slit):
    f, z, out = slit
    m = compare_fields(fresnel_via_frft(f, z), out, window=5e-3)
    assert m["rel_L2_intensity"] <= 1e-3
    assert m["max_extremum_offset_samples"] <= 1


@pytest.mark.parametrize("factor", [1.0, 1.5, 4.0])
def test_flat_input_any_reference_sphere(slit, factor):
    f, z, out = slit
    m = compare_fields(fresnel_via_frft(f, z, R_A=factor * z), out, window=5e-3)
    assert m["rel_L2_intensity"] <= 1e-10


def test_gaussian_beam_width():
    w, z = 2e-4, 0.5
    f = critical(Gaussian(w), 4096, z)
    out = fresnel_direct(f, z)
    i = out.intensity
    width = 2 * math.sqrt(np.sum(out.x ** 2 * i) / np.sum(i))
    expect = w * math.sqrt(1 + (LAM * z / (math.pi * w * w)) ** 2)
    assert width == pytest.approx(expect, rel=1e-3)


def test_fraunhofer_zeros_with_direct():
    w, z = 100e-6, 1.0
    f = render_source(RectSlit(w), 6320, 10e-6)
    assert fresnel_number(w / 2, LAM, z) <= 0.01
    for out in (fresnel_direct(f, z), fraunhofer(f, z)):
        zeros = np.sort([x for x in intensity_minima(out.x, out.intensity, 1e-3) if x > 0])[:3]
        np.testing.assert_allclose(zeros, LAM * z / w * np.arange(1, 4), atol=out.dx)


def test_fourier_plane_equals_fraunhofer():
    z = 1.0
    f = critical(RectSlit(1e-3), 2048, z)
    focus = fresnel_via_frft(f.replace(curvature=z), z)
    far = fraunhofer(f, z)
    m = compare_fields(focus, far)
    assert m["rel_L2_intensity"] <= 1e-4


def test_young_intermediate_order_matches_direct():
    g = geometry_from_alpha(0.8 * math.pi / 2, 1.0, LAM)
    f = critical(GaussianPair(0.6e-3, 4e-3), 2048, g.z).replace(curvature=1.0)
    a = fresnel_via_frft(f, g.z)
    b = fresnel_direct(f, g.z)
    assert compare_fields(a, b)["rel_L2_intensity"] <= 1e-10
    again = fresnel_via_frft(f, g.z)
    assert again.samples.tobytes() == a.samples.tobytes()
    assert local_maxima(a.intensity, 1e-2).size >= 2


def test_shift_covariance():
    z, n, m = 0.5, 2048, 25
    dx = math.sqrt(LAM * z / n)
    base = render_source(Gaussian(1e-4), n, dx)
    shifted = base.replace(samples=np.roll(base.samples, m))
    a, b = fresnel_direct(base, z).intensity, fresnel_direct(shifted, z).intensity
    assert (np.argmax(b) - np.argmax(a)) * dx == pytest.approx(m * dx, abs=dx)
    np.testing.assert_allclose(np.roll(a, m)[100:-100], b[100:-100], atol=1e-10 * a.max())


def test_aliased_input_chirp():
    f = render_source(RectSlit(2e-3), 1024, 2e-6)
    with pytest.raises(AliasedInput):
        fresnel_direct(f, 1e-3)
    with pytest.raises(NonpositiveDistance):
        fresnel_direct(f, 0.0)


# --------------------------------------------------------------- oracle


def test_rs_point_aperture_monotone():
    u = np.zeros(65, complex)
    u[32] = 1.0
    f = SampledField(u, 1e-6, -32e-6, LAM)
    out = rayleigh_sommerfeld_oracle(f, 0.01, out_grid=(401, 0.5e-6, 0.0))
    assert np.all(np.diff(out.intensity) < 0)
    r = np.hypot(0.01, out.x)
    np.testing.assert_allclose(out.intensity / out.intensity[0], (0.01 / r) ** 2 * 0.01 / r, rtol=1e-12)


def test_rs_symmetric_output():
    f = render_source(RectSlit(200e-6), 401, 1e-6)
    out = rayleigh_sommerfeld_oracle(f, 0.05, out_grid=(801, 2e-6, -800e-6))
    a = np.abs(out.samples)
    assert np.max(np.abs(a - a[::-1])) <= 1e-12 * a.max()


def test_rs_guards():
    f = render_source(RectSlit(10e-6), 64, 1e-6)
    with pytest.raises(KrTooSmall):
        rayleigh_sommerfeld_oracle(f, 1e-6)
    coarse = render_source(RectSlit(1e-3), 256, 8e-6)
    with pytest.raises(AliasedInput):
        rayleigh_sommerfeld_oracle(coarse, 0.01, out_grid=(256, 1e-4, -12.8e-3))


def test_rs_fraunhofer_zeros():
    w, z = 100e-6, 1.0
    f = render_source(RectSlit(w), 64, 2.5e-6)
    out = rayleigh_sommerfeld_oracle(f, z, out_grid=(4001, 10e-6, -20e-3))
    zeros = np.sort([x for x in intensity_minima(out.x, out.intensity, 1e-3) if x > 0])[:3]
    np.testing.assert_allclose(zeros, LAM * z / w * np.arange(1, 4), atol=out.dx)


# ----------------------------------------------------------- comparison


def test_compare_identical_and_phase():
    f = render_source(GaussianPair(1e-4, 5e-4), 512, 2e-6)
    m = compare_fields(f, f)
    assert m["rel_L2_intensity"] == 0 and m["max_abs_intensity_diff"] == 0
    assert all(o == 0 for o in m["extrema_position_offsets"])
    rot = f.replace(samples=f.samples * np.exp(0.7j))
    assert compare_fields(rot, f)["rel_L2_intensity"] <= 1e-15


def test_compare_disjoint_windows():
    a = SampledField(np.ones(10), 1.0, 0.0, LAM)
    b = SampledField(np.ones(10), 1.0, 100.0, LAM)
    with pytest.raises(GridMismatch):
        compare_fields(a, b)
