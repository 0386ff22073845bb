import os
import pathlib

import pytest

import ntnharq as nh

ROOT = pathlib.Path(os.environ.get("NTNHARQ_ROOT", pathlib.Path(__file__).resolve().parents[2]))
PROFILES = ROOT / "profiles"
TABLE = str(ROOT / "data" / "bler_pusch_tdla.csv")


def test_geometry_and_link():
    geo = nh.OrbitGeometry(600.0)
    assert nh.round_trip_time_ms(geo) == pytest.approx(20.06, abs=0.01)
    # zenith slant range is the altitude
    assert nh.slant_range_km(600.0, 90.0) == pytest.approx(600.0)
    with pytest.raises(ValueError):
        nh.slant_range_km(-1.0, 30.0)
    # 32.45 + 20 log10(2) + 20 log10(1e6)
    assert nh.fspl_db(2.0, 1e6) == pytest.approx(158.4706, abs=1e-3)


def test_harq_helpers():
    assert nh.required_harq_count(42.0, 1.0, 1) == 42
    assert nh.fixed_position(nh.Direction.DL, 10, 3) == 14
    p = nh.CycleParams()
    p.n_tbphc = 3
    p.rep_pdsch = [2]
    assert len(nh.delay_plan(p, nh.Direction.DL)) == 3


def test_schedule_roundtrip():
    p = nh.CycleParams()
    p.n_tbphc = 2
    p.rep_pusch = [4]
    t = nh.build_proposed_cycle(p, nh.Direction.UL)
    assert nh.validate(t, p) == []
    assert len(t) == nh.cycle_length_closed_form(p, nh.Direction.UL, nh.ScheduleMode.ProposedVariable)
    assert t.count("TxPUSCH") == 8
    back = nh.import_csv(nh.export_csv(t))
    assert back.activities() == t.activities()


def test_power():
    assert nh.delay_power_w() == pytest.approx(41.67e-9, rel=1e-3)


def test_monte_carlo_without_errors():
    p = nh.CycleParams()
    p.n_tbphc = 2
    r = nh.monte_carlo_goodput(p, nh.Direction.UL, n_cycles=100)
    assert r["attempts"] == r["successes"] == 200
    assert r["retransmission_rate"] == 0.0


def test_profile_run():
    r = nh.run_profile(str(PROFILES / "leo600_ltem.cfg"))
    assert r["snr_db"] == pytest.approx(-0.2)
    assert r["n_rep"] == 12
    assert r["required_harq"] <= 8
    legacy = nh.run_profile(str(PROFILES / "leo600_ltem.cfg"), set={"mode": "legacy"})
    assert legacy["gain_pct"] == 0.0
    assert r["throughput_bps"] > legacy["throughput_bps"]
    with pytest.raises(nh.ConfigError):
        nh.run_profile(str(PROFILES / "leo600_ltem.cfg"), set={"nope": "1"})
    with pytest.raises(nh.Infeasible):
        nh.run_profile(str(PROFILES / "leo1200_ltem.cfg"), set={"link.loss_shadow_db": "12"})


def test_sweep_csv():
    csv = nh.sweep_csv(str(PROFILES / "leo600_ltem.cfg"), ["mode=legacy,proposed"], TABLE)
    lines = csv.strip().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("scenario_id,altitude_km")
