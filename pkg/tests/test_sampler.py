from __future__ import annotations

import math

import numpy as np
import pytest

from irrcorr.core import OscillatorParams, build_drift, is_stable, steady_state
from irrcorr.correlations import discord_closed_form, mutual_information
from irrcorr.entropy import stationary_entropy
from irrcorr.sampler import (
    SampleSpec,
    bound_configurations,
    bound_curves,
    bound_violations,
    draw_parameters,
    evaluate_point,
    mutual_info_lower_asymptote,
    sample_steady_states,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        SampleSpec(G_range=(1.0, 1.0))
    with pytest.raises(ValueError):
        SampleSpec(count=0)
    with pytest.raises(ValueError):
        SampleSpec(N_a_range=(-1.0, 1.0))


def test_draws_are_deterministic_and_in_range():
    spec = SampleSpec(count=500, seed=7)
    a, b = draw_parameters(spec), draw_parameters(spec)
    np.testing.assert_array_equal(a, b)
    assert a.shape == (500, 4)
    assert a[:, 0].min() >= 0 and a[:, 0].max() <= 3
    assert a[:, 1].max() <= 2 and a[:, 2].max() <= 10
    assert not np.array_equal(a, draw_parameters(SampleSpec(count=500, seed=8)))


def test_sampling_keeps_unstable_draws():
    spec = SampleSpec(count=300, seed=3)
    pts = sample_steady_states(spec)
    assert len(pts) == 300
    unstable = [p for p in pts if not p.stable]
    assert unstable and all(math.isnan(p.pi_s) for p in unstable)
    for p in pts:
        assert p.stable == is_stable(build_drift(p.params), 1e-6)
        if p.entangled:
            assert p.log_neg > 0
            assert p.mutual_info >= p.discord


def test_worker_count_does_not_change_output():
    spec = SampleSpec(count=60, seed=11)
    # repr, since NaN fields of unstable points never compare equal
    assert repr(sample_steady_states(spec, workers=1)) == repr(sample_steady_states(spec, workers=2))


def test_point_matches_direct_evaluation():
    p = OscillatorParams(0.9, 0.7, 0.5, 1.0, 2.0, 0.5)
    pt = evaluate_point(p)
    s = steady_state(p)
    assert pt.pi_s == pytest.approx(stationary_entropy(p).pi_s, rel=1e-12)
    assert pt.mutual_info == mutual_information(s)
    assert pt.discord == discord_closed_form(s)


def test_colder_baths_give_more_entanglement():
    hot = sample_steady_states(SampleSpec(count=2000, seed=5))
    cold = sample_steady_states(SampleSpec(N_a_range=(0, 1), N_b_range=(0, 1), count=2000, seed=5))
    assert sum(p.entangled for p in cold) > sum(p.entangled for p in hot)


def test_weak_coupling_tangents():
    pts = sample_steady_states(SampleSpec(G_range=(0.0, 0.05), count=400, seed=2))
    for p in pts:
        if p.stable and p.params.G > 1e-3:
            kt = p.params.kappa_tot
            assert p.mutual_info == pytest.approx(p.pi_s / (2 * kt), rel=0.05)
    rng = np.random.default_rng(0)
    for _ in range(50):
        p = OscillatorParams(rng.uniform(0, 3), rng.uniform(1e-3, 0.05), 0.5, 1.0)
        pt = evaluate_point(p)
        assert pt.discord == pytest.approx(pt.pi_s / (4 * p.kappa_tot), rel=0.05)


def test_bound_curve_endpoints_and_truncation():
    curves = bound_curves("mutual_info", 0.5, 1.0, G_max=2.0, n_points=41)
    for c in curves.values():
        assert c.G[0] == 0 and c.pi_s[0] == 0 and c.value[0] == 0
        assert np.all(np.diff(c.pi_s) >= 0) and np.all(np.diff(c.value) >= 0)
    # resonant configuration loses stability at G = sqrt((ka^2+1)(kb^2+1))
    assert curves["upper"].truncated
    assert curves["upper"].stability_edge == pytest.approx(math.sqrt(1.25 * 2), rel=1e-6)
    assert not curves["lower"].truncated
    d = bound_curves("discord", 0.5, 1.0, G_max=2.0, n_points=11)
    assert set(d) == {"upper"}
    with pytest.raises(ValueError):
        bound_curves("entropy", 0.5, 1.0, 2.0, 11)


def test_lower_asymptote():
    value = mutual_info_lower_asymptote(0.5, 1.0)
    assert value == pytest.approx(0.5 * math.log(20.625), abs=1e-12)
    cfg = bound_configurations("mutual_info", 0.5, 1.0, 10.0)["lower"]
    assert cfg.is_stable(1e3)
    assert cfg.evaluate(1e3)[1] == pytest.approx(value, abs=1e-3)


def test_violation_check_detects_planted_point():
    cfg = bound_configurations("mutual_info", 0.5, 1.0, 10.0)["upper"]
    pi, mi = cfg.evaluate(0.8)
    base = evaluate_point(cfg.params(0.8))
    from dataclasses import replace

    above = replace(base, mutual_info=mi + 1e-3)
    on = base
    v, uncovered = bound_violations([above, on], "mutual_info", 0.5, 1.0, 10.0)
    assert uncovered == 0
    assert len(v) == 1 and v[0].point is above and v[0].excess == pytest.approx(1e-3, rel=1e-6)
