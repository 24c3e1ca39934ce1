import math

import pytest

import cpmse


def test_geometry_roundtrip():
    w = cpmse.WedgeConfig(theta=0.75, R=0.1, d=1.0, phi=0.0)
    assert cpmse.d_perp(w) == pytest.approx(1.0)
    sf = cpmse.sharp_frame(w)
    assert sf.d_perp == pytest.approx(1.0)
    p = cpmse.surface_point(w, 0.0)
    assert list(p["normal"]) == pytest.approx([1.0, 0.0, 0.0])


def test_invalid_config_raises_value_error():
    with pytest.raises(ValueError):
        cpmse.validate(cpmse.WedgeConfig(theta=0.75, R=0.0, d=1.0))
    with pytest.raises(cpmse.ConfigError):
        cpmse.compute_potential(cpmse.WedgeConfig(d=-1.0), cpmse.vacuum_over(3.0))


def test_references():
    assert cpmse.pec_wedge_upsilon(0.0, 0.0) == pytest.approx(3 / (8 * math.pi), rel=1e-12)
    assert cpmse.UPSILON_PEC_PLATE == pytest.approx(3 / (8 * math.pi))
    plate = cpmse.plate_upsilon(10.0)
    assert plate.converged
    assert plate.upsilon == pytest.approx(0.078269, abs=1e-5)
    assert cpmse.plate_upsilon(1.0).upsilon == 0.0


def test_shanks_geometric():
    q = 0.4
    s = cpmse.shanks(1.0, 1.0 + q, 1.0 + q + q * q)
    assert s.value == pytest.approx(1.0 / (1.0 - q), rel=1e-13)
    rep = cpmse.accelerate([1.0, 1.0 + q, 1.0 + q + q * q], 3.0)
    assert rep.policy == "plain"


def test_plate_potential_matches_exact():
    opts = cpmse.MseOptions()
    res = cpmse.compute_potential(cpmse.WedgeConfig(), cpmse.vacuum_over(3.0), opts)
    assert len(res.delta_U) == 3
    assert res.tolerance_met
    assert res.upsilon == pytest.approx(cpmse.plate_upsilon(3.0).upsilon, rel=0.02)
    # Re-running with the same seed is bit-identical.
    again = cpmse.compute_potential(cpmse.WedgeConfig(), cpmse.vacuum_over(3.0), opts)
    assert again.delta_U == res.delta_U
