"""Smoke tests for the python bindings."""

import json
import math

import pytest

import relay_rgg as rr


def test_sampling_is_deterministic_and_in_square():
    a = rr.sample_points(500, seed=42)
    b = rr.sample_points(500, seed=42)
    c = rr.sample_points(500, seed=43)
    assert a == b
    assert a != c
    assert all(-0.5 <= x <= 0.5 and -0.5 <= y <= 0.5 for x, y in a)


def test_backbone_builtins():
    seg = rr.DetGraph.segment(0.32)
    assert seg.e0 == 1
    assert seg.l_tot == pytest.approx(0.32)
    star = rr.DetGraph.star(5, 0.3)
    assert star.v0 == 6
    assert star.e0 == 5
    par = rr.DetGraph.parallel(10)
    assert par.e0 == 10
    assert par.l0 == pytest.approx(0.18)


def test_two_point_target():
    assert rr.two_point_target(0.3, 0.1) == 4
    assert rr.two_point_target(0.25, 0.1) == 3


def test_forced_relay_chain():
    gamma = rr.DetGraph.segment(0.36)
    points = [(-0.09, 0.0), (0.0, 0.0), (0.09, 0.0)]
    gloc = rr.build_gloc(points, 0.1, gamma)
    assert rr.relay_distance(gloc, 1, 2) == 4
    events = rr.distance_events(gloc, 1, 2, eps=1.0)
    assert events["d_uv"] == 4
    assert events["f_uv"]


def test_relay_rgg_construction_and_sandwich():
    gamma = rr.DetGraph.segment(0.4)
    # One point per disk of the K=4 circle chain at r_n = 0.1.
    radius = 0.2 * 0.1 / 17.0
    points = [(-0.2 + 0.08 * i, radius) for i in range(1, 5)]
    gloc = rr.build_gloc(points, 0.1, gamma)
    res = rr.build_relay_rgg(gloc)
    assert res["ok"]
    assert res["achieved"] == 5
    assert res["lower"] == pytest.approx(4.0)
    assert res["sandwich_two_point"]
    assert res["per_edge_targets"] == [5]


def test_failure_reports_site():
    gamma = rr.DetGraph.segment(0.4)
    gloc = rr.build_gloc([], 0.1, gamma)
    res = rr.build_relay_rgg(gloc)
    assert not res["ok"]
    assert res["fail_edge"] == 1
    assert res["fail_site"] == 1
    assert math.isinf(res["achieved"])


def test_weights_and_bounds():
    w1 = rr.exp_weight(3, "relay", 1, "relay", 2)
    w2 = rr.exp_weight(3, "relay", 2, "relay", 1)
    assert w1 == w2 > 0.0
    assert rr.chernoff_upper(100.0, 0.5) == pytest.approx(math.exp(-6.25))
    assert rr.exact_two_sided_tail([0.5, 0.5], 0.5) == pytest.approx(0.5)
    tails = rr.tail_bound_calculators(100.0, 0.1, a=1.0)
    assert tails["weight_band_fail"] == pytest.approx(1e-4)


def test_greedy_vs_oracle_on_forced_instance():
    gamma = rr.DetGraph.segment(0.2)
    # One point per interior square of the 4a grid at r_n = 0.1.
    points = [(-0.1 + 0.04 * c, 0.04) for c in range(0, 6)]
    gloc = rr.build_gloc(points, 0.1, gamma)
    res = rr.build_max_weight_relay_rgg(gloc, weight_seed=5, L_n=16)
    assert res["ok"]
    oracle = rr.oracle_max_weight_path(gloc, 5, 1, 2, 16)
    assert oracle["found"]
    assert res["total_weight"] <= oracle["total"] + 1e-9


def test_run_experiment_deterministic(tmp_path):
    config = {
        "n": "1500",
        "rn": "0.25",
        "gamma_builtin": "segment 0.3",
        "trials": "8",
        "seed": "5",
        "eps": "1",
        "out": str(tmp_path),
    }
    first = rr.run_experiment("distance", config)
    again = rr.run_experiment("distance", config)
    assert first["csv"] == again["csv"]
    summary = json.loads(first["summary_json"])
    assert summary["summary"]["count"] == 8
    assert summary["summary"]["f_uv"]["freq"] == 1.0

    csv_path, json_path = rr.run_and_write("distance", config)
    assert csv_path.endswith("distance-5.csv")
    with open(csv_path, "rb") as f:
        assert f.read().decode() == first["csv"]
    with open(json_path) as f:
        assert json.load(f)["experiment"] == "distance"


def test_config_errors_surface():
    with pytest.raises(rr.ConfigError):
        rr.run_experiment("distance", {"n": "10"})  # no r rule, no gamma
    with pytest.raises(rr.ConfigError):
        rr.DetGraph.from_file("no/such/file.gamma")
