import math

import numpy as np
import pytest

from photonprop.counting import (ChiSquare, chi_square_fit, integrate_detector, ks_distance,
                                 rate_for_total, scan_positions, simulate_scan, window_integrals)
from photonprop.errors import DegenerateModel, OutOfWindow
from photonprop.field import Gaussian, SampledField, render_source


def flat(n=1001, dx=1e-6):
    return SampledField(np.ones(n), dx, -(n // 2) * dx, 632e-9)


def test_uniform_window():
    assert integrate_detector(flat(), 0.0, 50e-6) == pytest.approx(50e-6, rel=1e-12)
    # edges between samples
    assert integrate_detector(flat(), 0.3e-6, 7.7e-6) == pytest.approx(7.7e-6, rel=1e-12)


def test_one_pitch_window():
    f = render_source(Gaussian(1e-4), 2001, 1e-6)
    j = 1200
    val = integrate_detector(f, f.x[j], f.dx)
    assert val == pytest.approx(f.dx * f.intensity[j], rel=1e-4)


def test_sinc_zero_window():
    x = np.linspace(-5, 5, 20001)
    u = np.sinc(x)
    f = SampledField(u, x[1] - x[0], x[0], 632e-9)
    assert integrate_detector(f, 1.0, 0.02) <= 1e-3 * integrate_detector(f, 0.0, 0.02)


def test_out_of_window():
    with pytest.raises(OutOfWindow):
        integrate_detector(flat(), 499e-6, 10e-6)
    with pytest.raises(OutOfWindow):
        simulate_scan(flat(), [0.0, 600e-6], 10e-6, 1e-2, 1.0, 0)


def test_zero_rate_gives_zero_counts():
    s = simulate_scan(flat(), scan_positions(400e-6, 50e-6), 10e-6, 1e-2, 0.0, 5)
    assert s.counts.sum() == 0 and s.counts.size == 17


def test_poisson_mean():
    m, reps = 100.0, 10_000
    w, dwell = 10e-6, 1e-2
    rate = m / (dwell * w)
    s = simulate_scan(flat(), np.zeros(reps), w, dwell, rate, 2024)
    assert np.mean(s.expected) == pytest.approx(m, rel=1e-9)
    assert abs(s.counts.mean() - m) <= 3 * math.sqrt(m / reps)
    assert np.all(s.counts >= 0)


def test_bitwise_reproducible():
    f = render_source(Gaussian(1e-4), 1001, 1e-6)
    pos = scan_positions(300e-6, 10e-6)
    a = simulate_scan(f, pos, 10e-6, 1e-2, 1e8, 42)
    b = simulate_scan(f, pos, 10e-6, 1e-2, 1e8, 42)
    c = simulate_scan(f, pos, 10e-6, 1e-2, 1e8, 43)
    assert a.counts.tobytes() == b.counts.tobytes()
    assert a.counts.tobytes() != c.counts.tobytes()
    assert a.metadata()["seed"] == 42 and "Philox" in a.metadata()["rng"]


def test_detector_width_halving():
    x = (np.arange(4001) - 2000) * 1e-6
    f = SampledField(np.exp(-(x / 2e-3) ** 2), 1e-6, x[0], 632e-9)
    pos = [-100e-6, 0.0, 150e-6]
    full = window_integrals(f, pos, 20e-6)
    half = window_integrals(f, pos, 10e-6)
    np.testing.assert_allclose(half / full, 0.5, rtol=1e-2)


def test_rate_for_total():
    f = render_source(Gaussian(1e-4), 2001, 1e-6)
    pos = scan_positions(500e-6, 25e-6)
    rate = rate_for_total(f, pos, 20e-6, 1e-2, 1e4)
    assert simulate_scan(f, pos, 20e-6, 1e-2, rate, 0).expected.sum() == pytest.approx(1e4, rel=1e-12)


def test_law_of_large_numbers():
    f = render_source(Gaussian(1e-4), 2001, 1e-6)
    pos = scan_positions(400e-6, 20e-6)
    p = window_integrals(f, pos, 20e-6)
    p = p / p.sum()
    errs = []
    for total in (1e3, 1e4, 1e5):
        rate = rate_for_total(f, pos, 20e-6, 1e-2, total)
        e = [np.max(np.abs(simulate_scan(f, pos, 20e-6, 1e-2, rate, s).counts / total - p))
             for s in range(20)]
        errs.append(np.mean(e))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] * math.sqrt(1e5) == pytest.approx(errs[0] * math.sqrt(1e3), rel=0.5)


# ------------------------------------------------------------ statistics


def _scan_51(seed, rate=1e10):
    f = render_source(Gaussian(2e-4), 2001, 1e-6)
    pos = np.linspace(-250e-6, 250e-6, 51)
    return simulate_scan(f, pos, 10e-6, 1e-2, rate, seed)


@pytest.mark.parametrize("seed", range(5))
def test_chi_square_self_consistent(seed):
    s = _scan_51(seed)
    chi = chi_square_fit(s, s.expected)
    assert chi.dof == 50
    assert 0.5 <= chi.reduced <= 1.6


def test_chi_square_rejects_wrong_model():
    x = np.linspace(-1e-3, 1e-3, 4001)
    f = SampledField(np.cos(2 * math.pi * x / 2e-4), x[1] - x[0], x[0], 632e-9)
    s = simulate_scan(f, scan_positions(8e-4, 2e-5), 1e-5, 1e-2, 1e9, 1)
    assert chi_square_fit(s, np.ones(s.counts.size)).reduced > 10


def test_chi_square_degenerate_cases():
    s = simulate_scan(flat(), [0.0, 1e-5], 1e-6, 1e-2, 0.0, 0)
    assert chi_square_fit(s, np.zeros(2)) == ChiSquare(0.0, 0, 0)
    with pytest.raises(DegenerateModel):
        chi_square_fit(_scan_51(0, rate=1e5), np.ones(51))  # too few counts for two bins
    with pytest.raises(DegenerateModel):
        chi_square_fit(_scan_51(0), np.zeros(51))


def test_merging_reaches_threshold():
    s = _scan_51(3, rate=3e8)
    chi = chi_square_fit(s, s.expected)
    assert 2 <= chi.n_bins < 51


def test_ks_distance():
    assert ks_distance([1, 2, 3], [2, 4, 6]) == 0.0
    assert ks_distance([1, 0], [0, 1]) == pytest.approx(1.0)
