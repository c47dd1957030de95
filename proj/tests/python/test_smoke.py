import math

import numpy as np
import pytest

import krillsim as ks


def test_gear_sizing_and_chain():
    assert ks.primitive_radius(0.032, 4) == pytest.approx(2 / 375, rel=1e-15)
    chain = ks.GearChain.equal(4, ks.primitive_radius(0.032, 4))
    assert ks.composite_ratio(chain) == -1.0
    out = ks.chain_forward(0.3, 0.1, chain)
    assert ks.chain_inverse(out, 0.1, chain) == pytest.approx(0.3, abs=1e-12)
    with pytest.raises(ks.DomainError):
        ks.primitive_radius(0.032, 1)


def test_trajectory_closes():
    cfg = ks.MetachronalConfig()
    geom = ks.AppendageGeometry()
    traj = ks.tip_trajectory(geom, ks.alpha_profile(1, cfg), ks.beta_profile(1, cfg), 100)
    assert traj.shape == (100, 3)
    assert np.linalg.norm(traj[0, 1:] - traj[-1, 1:]) < 1e-9
    assert np.max(np.hypot(traj[:, 1], traj[:, 2])) <= 0.0815


def test_reynolds_preset():
    krill = ks.SwimmerParams.krill()
    assert ks.reynolds(krill, ks.ReConvention.Dimensional) == pytest.approx(600, abs=1e-9)
    assert ks.scaled_frequency(krill, 10, ks.ReConvention.AsWritten) == pytest.approx(0.57)


def test_schedule_rows():
    cfg = ks.MetachronalConfig()
    table = ks.build_schedule(cfg, ks.default_chains(5), 1 / cfg.frequency)
    assert table.shape == (176, 11)
    assert np.all((table[:, 1:] >= 0) & (table[:, 1:] <= 180))


def test_marker_round_trip():
    rows = np.array([ks.markers_for_pose(0.01 * i, 40 + i, 120 + 0.5 * i) for i in range(20)])
    alpha, beta = ks.angles_from_markers(rows)
    assert np.allclose(alpha.angle, [40 + i for i in range(20)], atol=1e-9)
    m = ks.compare_traces(beta, ks.AngleTrace(list(beta.t), list(beta.angle)))
    assert m.percent_error == 0.0


def test_compare_traces_percent():
    t = [i / 200 for i in range(201)]
    meas = [22.2 * math.sin(2 * math.pi * x) for x in t]
    m = ks.compare_traces(ks.AngleTrace(t, meas), ks.AngleTrace(t, [v + 3.5 for v in meas]))
    assert m.percent_error == pytest.approx(3.5 / 44.4 * 100, rel=1e-9)
