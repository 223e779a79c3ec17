import json

import numpy as np
import pytest

from spectraform import (
    ScenarioError,
    bundled_scenario_path,
    parse_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
)


def _minimal_doc(**overrides):
    doc = {
        "agents": 2,
        "edges": [[1, 2]],
        "desired_bearings": [[0.0, 0.0, 1.0]],
        "initial_positions": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]],
        "initial_attitudes": [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
    }
    doc.update(overrides)
    return doc


def test_bundled_scenarios_parse():
    for name in ("two_agents", "seven_agents"):
        sc = parse_scenario(bundled_scenario_path(name))
        assert sc.initial_positions.shape == (sc.n_agents, 3)
        assert sc.initial_axis_angles.shape == (sc.n_agents, 3)
        assert sc.desired_bearings.shape == (len(sc.edges), 3)
        np.testing.assert_allclose(
            np.linalg.norm(sc.desired_bearings, axis=1), 1.0, atol=1e-12
        )
        sc.sim_config()  # must build cleanly


def test_seven_agents_layout():
    sc = parse_scenario(bundled_scenario_path("seven_agents"))
    assert sc.n_agents == 7
    assert sc.edges == [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6)]
    assert sc.target_positions is not None


def test_round_trip_identity():
    for name in ("two_agents", "seven_agents"):
        sc = parse_scenario(bundled_scenario_path(name))
        again = scenario_from_dict(json.loads(json.dumps(scenario_to_dict(sc))))
        assert again.n_agents == sc.n_agents
        assert again.edges == sc.edges
        np.testing.assert_array_equal(again.desired_bearings, sc.desired_bearings)
        np.testing.assert_array_equal(again.initial_positions, sc.initial_positions)
        np.testing.assert_array_equal(again.initial_axis_angles, sc.initial_axis_angles)
        for key in ("eps", "w_lin", "w_ang", "k_pos", "tol_potential",
                    "max_steps", "integrator", "seed", "description"):
            assert getattr(again, key) == getattr(sc, key)


def test_save_and_reload(tmp_path):
    sc = parse_scenario(bundled_scenario_path("two_agents"))
    out = tmp_path / "copy.json"
    save_scenario(sc, out)
    again = parse_scenario(out)
    np.testing.assert_array_equal(again.initial_positions, sc.initial_positions)
    np.testing.assert_array_equal(again.desired_bearings, sc.desired_bearings)


def test_random_initialization_is_seeded():
    doc = _minimal_doc(
        initial_positions={"random": {"seed": 5, "box": [[-1, 1], [-1, 1], [0, 1]]}},
        initial_attitudes={"random": {"seed": 9}},
    )
    a = scenario_from_dict(doc)
    b = scenario_from_dict(doc)
    np.testing.assert_array_equal(a.initial_positions, b.initial_positions)
    np.testing.assert_array_equal(a.initial_axis_angles, b.initial_axis_angles)
    assert a.initial_positions[:, 2].min() >= 0.0
    assert a.initial_positions[:, 2].max() <= 1.0
    # The plain string form falls back to the top-level seed.
    c = scenario_from_dict(_minimal_doc(initial_positions="random", seed=3))
    d = scenario_from_dict(_minimal_doc(initial_positions="random", seed=3))
    np.testing.assert_array_equal(c.initial_positions, d.initial_positions)


def test_bearing_count_mismatch_names_counts():
    doc = _minimal_doc(desired_bearings=[[0, 0, 1.0], [1.0, 0, 0]])
    with pytest.raises(ScenarioError, match="count 2 does not match edge count 1"):
        scenario_from_dict(doc)


def test_rejects_bad_indices_and_self_loops():
    with pytest.raises(ScenarioError, match="out of range"):
        scenario_from_dict(_minimal_doc(edges=[[1, 3]]))
    with pytest.raises(ScenarioError, match="self-loop"):
        scenario_from_dict(_minimal_doc(edges=[[2, 2]]))
    with pytest.raises(ScenarioError, match="1-based"):
        scenario_from_dict(_minimal_doc(edges=[[0, 1]]))


def test_rejects_bad_integrator_and_shapes():
    with pytest.raises(ScenarioError, match="integrator"):
        scenario_from_dict(_minimal_doc(integrator="rk4"))
    with pytest.raises(ScenarioError, match="initial_positions"):
        scenario_from_dict(_minimal_doc(initial_positions=[[0, 0, 0]]))
    with pytest.raises(ScenarioError, match="missing required key"):
        scenario_from_dict({"agents": 2})


def test_parse_error_reports_line(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "agents": 2,\n  oops\n}\n')
    with pytest.raises(ScenarioError, match="line 3"):
        parse_scenario(bad)


def test_off_unit_bearings_warn_and_normalize():
    doc = _minimal_doc(desired_bearings=[[0.0, 0.0, 1.01]])
    with pytest.warns(UserWarning, match="off unit norm"):
        sc = scenario_from_dict(doc)
    np.testing.assert_allclose(np.linalg.norm(sc.desired_bearings[0]), 1.0, atol=1e-15)


def test_two_agents_target_realizes_bearings():
    # The documented target shape, with identity attitudes, must realize the
    # stored desired bearings exactly.
    from spectraform import AgentState, NetworkState, potential

    for name in ("two_agents", "seven_agents"):
        sc = parse_scenario(bundled_scenario_path(name))
        assert sc.target_positions is not None
        state = NetworkState([AgentState(p, np.eye(3)) for p in sc.target_positions])
        assert potential(sc.graph(), state) <= 1e-24
