"""Cybernetic loop against the harmonic-oscillator closed form."""

import math

import pytest

from emt_lab import DomainError, NumericError
from emt_lab.feedback import FeedbackParams, loop_diagnostics, simulate_loop

TWO_PI = 2.0 * math.pi


def conservative_params(dt=1e-3, horizon=None, **kw):
    if horizon is None:
        horizon = int(round(TWO_PI / dt))
    return FeedbackParams(
        gamma0=1.0, theta_meta=0.0, phi_gain=1.0, noise_sd=0.0,
        e_target=1.0, dt=dt, horizon=horizon, o0=0.0, a0=0.0, **kw,
    )


def test_harmonic_closed_form():
    traj = simulate_loop(conservative_params())
    # O(t) = 1 - cos t, A(t) = sin t
    for s in traj[:: len(traj) // 20]:
        assert s.o_val == pytest.approx(1.0 - math.cos(s.t), abs=1e-6)
        assert s.a_sig == pytest.approx(math.sin(s.t), abs=1e-6)
    idx_pi = int(round(math.pi / 1e-3))
    assert abs(traj[idx_pi].o_val - 2.0) < 1e-6


def test_energy_conservation():
    traj = simulate_loop(conservative_params())
    diag = loop_diagnostics(traj)
    assert diag["energy_drift"] < 1e-6


def test_decoupled_when_gamma_zero():
    params = FeedbackParams(gamma0=0.0, phi_gain=2.0, o0=1.0, a0=3.0,
                            dt=0.01, horizon=100)
    traj = simulate_loop(params)
    final = traj[-1]
    assert final.a_sig == pytest.approx(3.0)
    assert final.o_val == pytest.approx(1.0 + 2.0 * 3.0 * final.t, rel=1e-12)


def test_zero_error_fixed_point():
    params = FeedbackParams(e_target=0.5, o0=0.5, a0=0.0, dt=0.01, horizon=200)
    traj = simulate_loop(params)
    diag = loop_diagnostics(traj)
    assert diag["max_abs_eps"] == 0.0
    assert diag["settled"]
    assert all(s.o_val == 0.5 for s in traj)


def test_gamma_never_negative():
    params = FeedbackParams(gamma0=0.1, theta_meta=-5.0, dt=0.01, horizon=2000)
    traj = simulate_loop(params)
    assert all(s.gamma >= 0.0 for s in traj)


def test_gamma_telescope_exact():
    theta = 0.3
    params = FeedbackParams(gamma0=1.0, theta_meta=theta, dt=0.05, horizon=50)
    traj = simulate_loop(params)
    for prev, cur in zip(traj, traj[1:]):
        expected = max(0.0, prev.gamma + theta * (cur.eps_err**2 - prev.eps_err**2))
        assert cur.gamma == pytest.approx(expected, abs=1e-15)


def test_divergent_tuning_flagged_unstable():
    params = FeedbackParams(gamma0=1.0, theta_meta=8.0, dt=0.01, horizon=2000)
    traj = simulate_loop(params)
    diag = loop_diagnostics(traj, settle_threshold=0.01)
    assert not diag["settled"]


def test_noise_determinism_and_sqrt_dt_scaling():
    params = FeedbackParams(noise_sd=0.5, dt=0.01, horizon=500, seed=9)
    t1 = simulate_loop(params)
    t2 = simulate_loop(params)
    assert all(
        a.o_val == b.o_val and a.a_sig == b.a_sig for a, b in zip(t1, t2)
    )
    other = simulate_loop(FeedbackParams(noise_sd=0.5, dt=0.01, horizon=500, seed=10))
    assert any(a.o_val != b.o_val for a, b in zip(t1, other))


def test_divergence_raises_with_step_index():
    params = FeedbackParams(gamma0=1e150, phi_gain=1e150, dt=10.0, horizon=50)
    with pytest.raises(NumericError):
        simulate_loop(params)


def test_param_validation():
    with pytest.raises(DomainError):
        FeedbackParams(dt=0.0)
    with pytest.raises(DomainError):
        FeedbackParams(gamma0=-1.0)
    with pytest.raises(DomainError):
        loop_diagnostics([])
