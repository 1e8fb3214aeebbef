"""Epistemic mode-transition dynamics and problem-pool behavior."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from emt_lab import DomainError, InputError, make_generator
from emt_lab.epistemic import (
    EpistemicParams,
    Problem,
    ProblemPool,
    discovery_probability,
    hamiltonian_value,
    initial_state,
    inversion_crossing,
    marginal_ideation_cost,
    research_output,
    step_knowledge,
    step_problem_pool,
)


def test_discovery_probability_values():
    assert discovery_probability(0.0) == 1.0
    assert discovery_probability(1.0) == 0.5
    with pytest.raises(DomainError):
        discovery_probability(-0.1)


@given(st.floats(min_value=0, max_value=1e6))
def test_discovery_probability_in_unit_interval(theta):
    assert 0 < discovery_probability(theta) <= 1


def test_marginal_cost_decreasing_in_capability():
    costs = [marginal_ideation_cost(1.0, 1.0, a) for a in (0.0, 1.0, 10.0, 100.0)]
    assert costs[0] == 1.0
    assert all(b < a for a, b in zip(costs, costs[1:]))


def test_uncertainty_boundary_inclusive():
    params = EpistemicParams(p_bar=10.0, eps_resid=0.01)
    at_bar = initial_state(params, p0=10.0)
    assert at_bar.theta == params.eps_resid
    below = initial_state(params, p0=10.0 - 1e-9)
    assert below.theta == params.theta0 / (1.0 + below.p)


def test_knowledge_step_euler_linear_case():
    # phi=0 is not allowed by a_cap**0=1 only when a_cap>0; use a_cap=1
    params = EpistemicParams(alpha_prod=2.0, phi_elast=1.0, lp=3.0)
    state = initial_state(params, a_cap=1.0, p0=0.0)
    nxt = step_knowledge(state, params, dt=0.5)
    assert nxt.p == pytest.approx(0.0 + 2.0 * 1.0 * 3.0 * 0.5)
    assert nxt.t == pytest.approx(0.5)


def test_mode_transition_trajectory():
    params = EpistemicParams(p_bar=5.0, eps_resid=0.01, alpha_prod=1.0, lp=1.0)
    state = initial_state(params, a_cap=1.0)
    pis = [state.pi]
    crossed = False
    for _ in range(100):
        state = step_knowledge(state, params, dt=0.2)
        pis.append(state.pi)
        if state.p >= params.p_bar:
            crossed = True
            assert state.theta == params.eps_resid
    assert crossed
    assert all(b >= a for a, b in zip(pis, pis[1:]))


def test_inversion_flag():
    params = EpistemicParams(c0=1.0, alpha_cost=1.0, theta_star=0.1)
    low = initial_state(params, a_cap=0.0)
    assert not low.inverted
    high = initial_state(params, a_cap=100.0)  # cost ~ 0.0099 < 0.1
    assert high.inverted


def test_research_output_clamping_and_rate():
    pool = ProblemPool(
        problems=[Problem(0, complexity=1.0), Problem(1, complexity=0.0)],
        lambda_align=0.5,
    )
    out = research_output(pool, a_cap=0.5)
    # second problem's raw ratio 0.5/eps_floor >> 1 gets clamped
    assert out.clamped == 1
    assert out.solve_probs[1] == 1.0
    assert out.solve_probs[0] == pytest.approx(0.5 / (1.0 + pool.eps_floor))
    assert out.r == pytest.approx(0.5 * sum(out.solve_probs))


def test_pool_step_resolves_everything_at_probability_one():
    pool = ProblemPool(
        problems=[Problem(i, complexity=0.5) for i in range(20)],
        eta_rate=0.0,
        lambda_align=1.0,
    )
    out = research_output(pool, a_cap=10.0)  # all probs clamp to 1
    new_pool, surplus = step_problem_pool(pool, out, dt=1.0, rng=make_generator(0))
    assert len(new_pool.open_problems) == 0
    assert surplus  # R = 20 > eta = 0


def test_pool_step_arrival_rate_matches_poisson_mean():
    rng = make_generator(123)
    pool = ProblemPool(problems=[], eta_rate=3.0, lambda_align=1.0)
    out = research_output(pool, a_cap=1.0)
    totals = []
    for _ in range(2000):
        new_pool, _ = step_problem_pool(pool, out, dt=1.0, rng=rng)
        totals.append(len(new_pool.problems))
    mean = np.mean(totals)
    # Poisson(3): 3 sigma of the sample mean
    assert abs(mean - 3.0) < 3 * math.sqrt(3.0 / 2000)


def test_pool_step_rejects_stale_output():
    pool = ProblemPool(problems=[Problem(0, 1.0), Problem(1, 1.0)])
    out = research_output(pool, a_cap=1.0)
    smaller = ProblemPool(problems=[Problem(0, 1.0)])
    with pytest.raises(InputError):
        step_problem_pool(smaller, out, dt=0.1, rng=make_generator(0))


def test_hamiltonian_value():
    assert hamiltonian_value(1.0, 2.0, 3.0, 4.0, 0.5, 2.0, 1.5) == pytest.approx(
        1.0 + 2.0 * (4.0 - 0.5 * 2.0) + 3.0 * 1.5
    )
    with pytest.raises(DomainError):
        hamiltonian_value(float("nan"), 0, 0, 0, 0, 0, 0)


def test_inversion_crossing():
    series = [(0.0, 1.0), (1.0, 0.5), (2.0, 0.05), (3.0, 0.01)]
    assert inversion_crossing(series, theta_star=0.1) == 2.0
    assert inversion_crossing(series, theta_star=0.001) is None
    with pytest.raises(InputError):
        inversion_crossing([(1.0, 1.0), (1.0, 0.5)], 0.1)
    with pytest.raises(InputError):
        inversion_crossing([], 0.1)


def test_params_validation():
    with pytest.raises(DomainError):
        EpistemicParams(theta0=-1.0)
    with pytest.raises(DomainError):
        EpistemicParams(eps_resid=2.0, theta0=1.0)
    with pytest.raises(DomainError):
        EpistemicParams(c0=0.0)
