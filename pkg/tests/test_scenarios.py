import json

import pytest

from photonprop.errors import InvalidSpec, SchemaError
from photonprop.scenarios import BUILTIN, build_field, grid_pitch, load_scenario


def test_paper_slit_constants():
    c = load_scenario("paper-slit")
    assert c["wavelength_m"] == 632e-9
    assert c["source"] == {"type": "rect_slit", "width_m": 1.905e-3}
    assert c["z_m"] == 0.9684
    assert c["scan"]["detector_width_m"] == 50e-6
    assert c["scan"]["dwell_s"] == 10e-3
    assert set(c["scan"]["defaulted"]) == {"step_m", "span_m", "total_counts"}


def test_young_constants():
    c = load_scenario("young")
    assert c["source"]["waist_m"] == 0.6e-3
    assert c["source"]["separation_m"] == 4e-3
    assert c["alphas_frac"] == [0.8, 0.85, 0.9, 0.95, 1.0]


def test_builtins_are_copies():
    c = load_scenario("young")
    c["source"]["waist_m"] = 1.0
    assert BUILTIN["young"]["source"]["waist_m"] == 0.6e-3


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_round_trip_through_file(tmp_path, name):
    cfg = load_scenario(name)
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    assert load_scenario(p) == cfg


def test_schema_errors_carry_pointer(tmp_path):
    cfg = load_scenario("paper-slit")
    cfg["scan"]["dwell_s"] = -1
    with pytest.raises(SchemaError) as e:
        load_scenario(cfg)
    assert e.value.pointer == "/scan/dwell_s" and e.value.exit_code == 2
    cfg = load_scenario("paper-slit")
    cfg["grid"]["n"] = "big"
    with pytest.raises(SchemaError) as e:
        load_scenario(cfg)
    assert e.value.pointer == "/grid/n"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        load_scenario(bad)
    with pytest.raises(InvalidSpec):
        load_scenario("no-such-scenario")


def test_critical_pitch_and_illumination():
    cfg = load_scenario("paper-slit")
    assert grid_pitch(cfg) ** 2 * cfg["grid"]["n"] == pytest.approx(632e-9 * 0.9684, rel=1e-14)
    plane = build_field(cfg)
    cfg["illumination"] = {"type": "gaussian", "waist_m": 1e-3}
    tapered = build_field(cfg)
    assert tapered.intensity.sum() < plane.intensity.sum()
    assert plane.curvature is None
    assert build_field(load_scenario("young")).curvature == 1.0
