"""Scenario files: shipped campaign configs and loader validation."""

from pathlib import Path

import pytest

from perchsim.scenarios import (
    ScenarioError,
    load_scenario,
    moving_scenario,
    static_scenario,
)

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.mark.parametrize("name,deg", [
    ("static_47.ini", 47.0),
    ("static_70.ini", 70.0),
    ("static_90.ini", 90.0),
])
def test_shipped_static_files_match_constructors(name, deg):
    assert load_scenario(str(SCENARIO_DIR / name)) == static_scenario(deg)


def test_shipped_moving_file_matches_constructor():
    loaded = load_scenario(str(SCENARIO_DIR / "moving_90_forward.ini"))
    assert loaded == moving_scenario(90.0, "forward")


def test_minimal_file_gets_neutral_defaults(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nphi_s_deg = 47\n")
    sc = load_scenario(str(f))
    assert sc.constraints.v_max == 4.0
    assert sc.k_p_phi == 120.0
    assert sc.k_d_phi == 22.0
    assert sc.stall_thrust == 0.4
    assert sc.timeout == 8.0
    assert sc.surface_y0 == 2.2
    assert sc.gains.k_p == (6.0, 6.0, 6.0)
    assert sc.noise_sigma == 0.001


def test_ramp_defaults_differ(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nphi_s_deg = 90\n[surface]\nkind = ramp\nv_target = 1.0\n")
    sc = load_scenario(str(f))
    assert sc.timeout == 10.0
    assert sc.surface_y0 == 2.5
    assert sc.motion.kind == "ramp"
    assert sc.motion.v_target == 1.0


def test_seed_override_beats_file(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nphi_s_deg = 47\nseed = 3\n")
    assert load_scenario(str(f)).seed == 3
    assert load_scenario(str(f), seed=11).seed == 11


def test_unknown_key_named_in_error(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nphi_s_deg = 47\nbogus_key = 1\n")
    with pytest.raises(ScenarioError, match="bogus_key"):
        load_scenario(str(f))


def test_unknown_section_rejected(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nphi_s_deg = 47\n[turbo]\nboost = 1\n")
    with pytest.raises(ScenarioError, match=r"\[turbo\]"):
        load_scenario(str(f))


def test_missing_inclination_rejected(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nseed = 1\n")
    with pytest.raises(ScenarioError, match="phi_s_deg"):
        load_scenario(str(f))


def test_unparsable_value_named(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nphi_s_deg = steep\n")
    with pytest.raises(ScenarioError, match="phi_s_deg"):
        load_scenario(str(f))


def test_bad_gain_triple(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nphi_s_deg = 47\n[gains]\nk_p = 1, 2\n")
    with pytest.raises(ScenarioError, match="three comma-separated"):
        load_scenario(str(f))


def test_config_invariants_surface_as_scenario_errors(tmp_path):
    f = tmp_path / "s.ini"
    f.write_text("[scenario]\nphi_s_deg = 47\n[envelope]\nvt_min = 2.0\n")
    with pytest.raises(ScenarioError):
        load_scenario(str(f))


def test_missing_file_rejected(tmp_path):
    with pytest.raises(ScenarioError, match="cannot read"):
        load_scenario(str(tmp_path / "absent.ini"))
