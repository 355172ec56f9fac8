"""End-to-end smoke tests for the Python bindings.

Numerical guarantees are covered by the C++ unit and acceptance suites; these
tests check that the bindings round-trip the same JSON formats, dispatch to
the same deterministic streams, and raise ConfigError where the library
throws.
"""

import json
import math

import numpy as np
import pytest

import barronnet as bn

SQUARE = {"lower": [-1.0, -1.0], "upper": [1.0, 1.0]}

COSINE_SPEC = json.dumps(
    {
        "domain": SQUARE,
        "base_point": [0.0, 0.0],
        "constant": 1.0,
        "atoms": [
            {"freq": [3.0, 2.0], "modulus": 0.5, "phase": 0.0},
            {"freq": [-3.0, -2.0], "modulus": 0.5, "phase": 0.0},
        ],
    }
)

FLAT_OMEGA = json.dumps(
    {
        "dim": 2,
        "patches": [
            {
                "rect": SQUARE,
                "axis": 2,
                "sign": 1,
                "B": 1.0,
                "boundary": {
                    "domain": {"lower": [-1.0], "upper": [1.0]},
                    "base_point": [0.0],
                    "constant": 0.0,
                    "atoms": [],
                },
            }
        ],
    }
)

UNIFORM = json.dumps({"kind": "uniform_box", "box": SQUARE})


def test_spec_eval_matches_cosine():
    x = np.array([[0.1, -0.2], [0.0, 0.0], [0.5, 0.5]])
    want = np.cos(3 * x[:, 0] + 2 * x[:, 1])
    got = bn.eval_spec(COSINE_SPEC, x)
    assert np.allclose(got, want, atol=1e-12)
    assert bn.spec_constant(COSINE_SPEC) == pytest.approx(5.0)


def test_shallow_synthesis_and_audit():
    net, report = bn.synthesize_shallow(COSINE_SPEC, N=8, K=2, seed=0)
    assert net.architecture == [2, 64, 1]
    assert report["max_abs_weight"] <= report["weight_bound"]
    assert math.isfinite(report["sup_error"])
    out = net.evaluate(np.zeros((5, 2)))
    assert out.shape == (5, 1)
    # Same seed, same bytes.
    net2, _ = bn.synthesize_shallow(COSINE_SPEC, N=8, K=2, seed=0)
    assert net.to_json() == net2.to_json()


def test_classifier_synthesis_indicator_and_estimates():
    net, report = bn.synthesize_classifier(FLAT_OMEGA, N=16, K=2, seed=1)
    assert net.architecture == [2, 22, 10, 1, 1]
    assert report["verified"]
    # N = 16 gives localization width 0.25; stay clear of the edge collar.
    pts = np.array([[0.0, -0.5], [0.0, 0.5]])
    vals = net(pts)
    assert vals[0, 0] == pytest.approx(1.0, abs=1e-9)
    assert vals[1, 0] == pytest.approx(0.0, abs=1e-9)
    assert list(bn.indicator(FLAT_OMEGA, pts)) == [1, 0]

    est = bn.disagreement_probability(UNIFORM, FLAT_OMEGA, net, n=20000, seed=0)
    assert 0.0 <= est["value"] <= 0.2 and est["half_width"] > 0.0
    l1 = bn.lp_error(UNIFORM, FLAT_OMEGA, net, p=1.0, n=20000, seed=0)
    assert abs(l1["value"] - est["value"]) <= 3 * (l1["half_width"] + est["half_width"])


def test_sampling_and_tube_certificate():
    pts = bn.sample(UNIFORM, 1000, seed=7)
    assert pts.shape == (1000, 2)
    assert np.all(np.abs(pts) <= 1.0)
    assert np.array_equal(pts, bn.sample(UNIFORM, 1000, seed=7))
    assert bn.tube_params(UNIFORM) == (1.0, 1.0)
    est = bn.tube_mass_estimate(UNIFORM, lambda rest: 0.0, axis=2, eps=0.1, n=20000, seed=3)
    assert est["value"] == pytest.approx(0.1, abs=3 * est["half_width"] + 1e-9)


def test_erm_round_trip():
    assert bn.choose_width(1.0, 1.0, 1, 2, 100, 1.0) == 7
    X, y = bn.generate_dataset(FLAT_OMEGA, UNIFORM, m=64, seed=5)
    assert X.shape == (64, 2) and set(np.unique(y)) <= {-1, 1}
    net, report = bn.approximate_erm(X, y, [2, 14, 10, 1, 1], restarts=2, steps=100, seed=5)
    assert 0.0 <= report["empirical01"] <= 0.5
    pm1 = bn.to_pm1(net)
    assert np.allclose(pm1(X), 2 * net(X) - 1, atol=1e-12)
    risk = bn.risk_estimate(pm1, FLAT_OMEGA, UNIFORM, n=20000, seed=5)
    assert 0.0 <= risk["value"] <= 1.0


def test_quantize_grid():
    net, _ = bn.synthesize_shallow(COSINE_SPEC, N=8, K=1, seed=2)
    q = net.quantize(1, 0.25)
    blob = json.loads(q.to_json())
    for layer in blob["layers"]:
        flat = [w for row in layer["weights"] for w in row] + layer["bias"]
        assert all(abs(w) <= 4.0 and (w * 4.0) == round(w * 4.0) for w in flat)


def test_demos_and_errors():
    assert bn.shattering_demo(3, 2)["labelings_realized"] == 8
    rows = bn.fourier_gap_demo([1, 2], 0.25)
    for row in rows:
        assert row["exact_value"] == pytest.approx(8 * math.pi * row["n"] ** 2 / 0.25)
        assert row["second_derivative_l1"] == pytest.approx(row["exact_value"], rel=1e-6)
    with pytest.raises(bn.ConfigError):
        bn.synthesize_shallow(COSINE_SPEC, N=0)
    with pytest.raises(bn.ConfigError):
        bn.synthesize_classifier(FLAT_OMEGA, N=7)
    with pytest.raises(bn.ConfigError):
        bn.sample(json.dumps({"kind": "mystery"}), 10)


def test_network_json_round_trip():
    net, _ = bn.synthesize_shallow(COSINE_SPEC, N=8, K=1, seed=9)
    clone = bn.Network.from_json(net.to_json())
    x = np.random.default_rng(0).uniform(-1, 1, size=(50, 2))
    assert np.array_equal(net(x), clone(x))
