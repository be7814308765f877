import math

import numpy as np
import pytest

from photonprop.errors import InvalidSpec, SchemaError
from photonprop.runs import (central_visibility, fringe_period, intensity_minima, parse_alphas,
                             propagate_scenario, young_sweep)
from photonprop.scenarios import load_scenario


def test_parse_alphas():
    assert parse_alphas("0.8,0.85,...,1.0") == [0.8, 0.85, 0.9, 0.95, 1.0]
    assert parse_alphas("1.0") == [1.0]
    for bad in ("", "0.8,...,1.0", "0.8,0.9,...,0.95", "a,b"):
        with pytest.raises(InvalidSpec):
            parse_alphas(bad)


def test_fringe_period_of_enveloped_cosine():
    x = np.linspace(-10, 10, 4001)
    y = np.exp(-x * x / 8) * (1 + np.cos(2 * math.pi * x / 0.731))
    assert fringe_period(x, y) == pytest.approx(0.731, rel=1e-6)
    assert central_visibility(y) > 0.99


def test_intensity_minima():
    x = np.linspace(-3, 3, 601)
    assert np.allclose(intensity_minima(x, np.sin(math.pi * x) ** 2, 1e-6), [-2, -1, 0, 1, 2])


def test_sweep_requires_reference_sphere():
    cfg = load_scenario("young")
    cfg.pop("R_A_m")
    with pytest.raises(SchemaError):
        young_sweep(cfg)
    with pytest.raises(SchemaError):
        propagate_scenario(load_scenario("young"), "fresnel")


def test_sweep_energies_constant():
    steps = young_sweep(load_scenario("young"), [0.8, 1.0])
    assert steps[0].energy == pytest.approx(steps[1].energy, rel=1e-12)
    assert steps[1].geometry.z == pytest.approx(1.0, rel=1e-12)
