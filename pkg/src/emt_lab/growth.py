"""Endogenous-growth engines: variety expansion, quality ladders, creative
destruction, and the unified process/product innovation system.

Continua of varieties and quality lines are discretized to a finite number of
lines; integrals become mean-times-mass quadratures. ODEs are integrated with
explicit Euler and guarded by closed-form oracles in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class RomerParams:
    """Variety-expansion engine parameters."""

    alpha: float = 0.5       # capital / intermediate share, in (0, 1)
    delta_r: float = 1.0     # research productivity
    phi_r: float = 1.0       # returns to the existing idea stock, in [0, 1]
    l_a: float = 1.0         # research labor

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise DomainError("alpha must lie in (0, 1)")
        if self.delta_r <= 0:
            raise DomainError("delta_r must be > 0")
        if not 0 <= self.phi_r <= 1:
            raise DomainError("phi_r must lie in [0, 1]")
        if self.l_a < 0:
            raise DomainError("l_a must be >= 0")


@dataclass
class QualityLadderState:
    """Discretized continuum of product lines with qualities and quantities."""

    qualities: np.ndarray
    quantities: np.ndarray | None = None

    def __post_init__(self):
        self.qualities = np.asarray(self.qualities, dtype=float)
        if self.qualities.size == 0:
            raise DomainError("qualities must be non-empty")
        if np.any(self.qualities < 1.0):
            raise DomainError("all qualities must be >= 1 (ladder starts at 1)")
        if self.quantities is None:
            self.quantities = np.ones_like(self.qualities)
        else:
            self.quantities = np.asarray(self.quantities, dtype=float)
            if np.any(self.quantities < 0):
                raise DomainError("quantities must be >= 0")


@dataclass(frozen=True)
class SchumpeterParams:
    """Creative-destruction engine parameters."""

    lambda_step: float = math.e   # quality step per innovation, > 1
    psi: float = 0.5              # R&D entry cost
    r_rate: float = 0.05          # interest rate
    pi_flow: float = 1.0          # monopoly flow profit
    delta_obs: float = 0.0        # obsolescence burden
    mu: float = 0.1               # innovation arrival intensity

    def __post_init__(self):
        if self.lambda_step <= 1:
            raise DomainError("lambda_step must be > 1")
        if self.psi <= 0 or self.r_rate <= 0 or self.pi_flow <= 0:
            raise DomainError("psi, r_rate and pi_flow must be > 0")
        if self.delta_obs < 0 or self.mu < 0:
            raise DomainError("delta_obs and mu must be >= 0")


@dataclass(frozen=True)
class UnifiedParams:
    """Joint process/product innovation system parameters."""

    phi_y: float = 0.3       # output elasticity of process innovation
    gamma_y: float = 0.2     # output elasticity of product quality
    beta_y: float = 0.3      # capital share, in (0, 1)
    delta_a: float = 1.0     # process innovation productivity
    delta_q: float = 1.0     # product innovation productivity
    alpha_a: float = 0.0     # process feedback coefficient
    alpha_q: float = 0.0     # product feedback coefficient
    l_a: float = 1.0         # labor on process innovation
    l_q: float = 1.0         # labor on product innovation
    lambda1: float = 1.0     # composite weight on process rate
    lambda2: float = 1.0     # composite weight on product rate

    def __post_init__(self):
        if not 0 < self.beta_y < 1:
            raise DomainError("beta_y must lie in (0, 1)")
        if self.phi_y <= 0 or self.gamma_y <= 0:
            raise DomainError("phi_y and gamma_y must be > 0")
        if self.delta_a <= 0 or self.delta_q <= 0:
            raise DomainError("delta_a and delta_q must be > 0")
        if min(self.alpha_a, self.alpha_q, self.l_a, self.l_q,
               self.lambda1, self.lambda2) < 0:
            raise DomainError("feedbacks, labor and weights must be >= 0")


def cobb_douglas(a: float, k: float, l: float, alpha: float) -> float:
    """Aggregate output a * k^alpha * l^(1-alpha)."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if a < 0 or k < 0 or l < 0:
        raise DomainError("inputs must be >= 0")
    return a * k**alpha * l ** (1.0 - alpha)


def romer_variety_output(
    l_final: float,
    intermediates: Sequence[float],
    alpha: float,
    mass: float | None = None,
) -> float:
    """Final output over a discretized continuum of intermediate varieties.

    l_final^(1-alpha) * sum_i x_i^alpha * di with di = mass / n. By default
    each variety carries unit mass (mass = n), the textbook finite-variety
    case; pass mass=1.0 for a unit continuum.
    """
    xs = np.asarray(intermediates, dtype=float)
    if xs.size == 0:
        raise DomainError("intermediates must be non-empty")
    if np.any(xs < 0):
        raise DomainError("intermediate quantities must be >= 0")
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if mass is None:
        mass = float(xs.size)
    di = mass / xs.size
    return l_final ** (1.0 - alpha) * float(np.sum(xs**alpha)) * di


def romer_ideas_step(a: float, params: RomerParams, dt: float) -> float:
    """One Euler step of the idea accumulation law a' = a + d*a^phi*L_A*dt."""
    if a < 0:
        raise DomainError("idea stock must be >= 0")
    if dt <= 0:
        raise DomainError(f"dt must be > 0, got {dt}")
    return a + params.delta_r * a**params.phi_r * params.l_a * dt


def quality_index(state: QualityLadderState) -> float:
    """Aggregate quality: mean quality over the discretized unit continuum."""
    return float(np.mean(state.qualities))


def ladder_step(
    state: QualityLadderState,
    mu: float,
    lambda_step: float,
    dt: float,
    rng: np.random.Generator,
) -> QualityLadderState:
    """One stochastic ladder step: each line upgrades q -> lambda*q with
    probability min(1, mu*dt), independently across lines."""
    if mu < 0:
        raise DomainError("mu must be >= 0")
    if lambda_step <= 1:
        raise DomainError("lambda_step must be > 1")
    if dt <= 0:
        raise DomainError(f"dt must be > 0, got {dt}")
    p = min(1.0, mu * dt)
    upgrades = rng.random(state.qualities.size) < p
    new_q = np.where(upgrades, lambda_step * state.qualities, state.qualities)
    return QualityLadderState(qualities=new_q, quantities=state.quantities.copy())


def incumbent_value(pi_flow: float, r_rate: float, mu: float) -> float:
    """Steady-state value of an incumbent monopoly: pi / (r + mu)."""
    if r_rate + mu <= 0:
        raise DomainError(f"r + mu must be > 0, got {r_rate + mu}")
    return pi_flow / (r_rate + mu)


def free_entry_mu(pi_flow: float, psi: float, r_rate: float) -> float:
    """Arrival intensity pinned down by free entry: mu * V(mu) = psi.

    Closed form mu = psi*r / (pi - psi); requires 0 < psi < pi.
    """
    if psi <= 0:
        raise DomainError("entry cost psi must be > 0")
    if r_rate <= 0:
        raise DomainError("interest rate must be > 0")
    if psi >= pi_flow:
        raise DomainError(
            f"no equilibrium: entry cost {psi} >= flow profit {pi_flow}"
        )
    return psi * r_rate / (pi_flow - psi)


def schumpeter_growth(lambda_step: float, mu: float, delta_obs: float = 0.0) -> float:
    """Aggregate growth rate ln(lambda)*mu minus the obsolescence burden."""
    if lambda_step <= 1:
        raise DomainError("lambda_step must be > 1")
    if mu < 0 or delta_obs < 0:
        raise DomainError("mu and delta_obs must be >= 0")
    return math.log(lambda_step) * mu - delta_obs


def science_production(
    l_s: float, a_cap: float, beta1: float, beta2: float, theta_sub: float
) -> float:
    """Dual-input knowledge output beta1*L_s^theta + beta2*A^(1-theta)."""
    if not 0 <= theta_sub <= 1:
        raise DomainError(f"theta_sub must lie in [0, 1], got {theta_sub}")
    if min(l_s, a_cap, beta1, beta2) < 0:
        raise DomainError("inputs must be >= 0")
    return beta1 * l_s**theta_sub + beta2 * a_cap ** (1.0 - theta_sub)


def composite_innovation(
    lambda1: float, lambda2: float, da_dt: float, dq_dt: float
) -> float:
    """Composite innovation rate lambda1*dA/dt + lambda2*dq/dt."""
    if lambda1 < 0 or lambda2 < 0:
        raise DomainError("weights must be >= 0")
    return lambda1 * da_dt + lambda2 * dq_dt


@dataclass(frozen=True)
class UnifiedState:
    """State of the unified innovation system."""

    a: float = 1.0
    q: float = 1.0
    k: float = 1.0
    l: float = 1.0


def unified_step(
    state: UnifiedState, params: UnifiedParams, c_now: float, dt: float
) -> tuple[UnifiedState, float]:
    """One Euler step of the joint process/product system; returns
    (new state, output).

    Both innovation rates scale with 1/c_now, the inverse ideation cost;
    a vanishing cost is rejected explicitly rather than silently producing
    an infinite rate.
    """
    if c_now <= 0:
        raise DomainError(f"ideation cost must be > 0, got {c_now} (singular)")
    if dt <= 0:
        raise DomainError(f"dt must be > 0, got {dt}")
    a_new = state.a + params.delta_a * params.l_a * (1.0 + params.alpha_a * state.a) / c_now * dt
    q_new = state.q + params.delta_q * params.l_q * (1.0 + params.alpha_q * state.q) / c_now * dt
    y = (
        a_new**params.phi_y
        * q_new**params.gamma_y
        * state.k**params.beta_y
        * state.l ** (1.0 - params.beta_y)
    )
    return UnifiedState(a=a_new, q=q_new, k=state.k, l=state.l), y
