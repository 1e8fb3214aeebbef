"""Finite-state Bellman solver for the research MDP, surplus metrics, and
path-dependence sensitivity.

The expectation over innovation shocks is taken over an explicit finite
support, so Bellman backups are exact and the solver is deterministic.
Policy evaluation is a direct linear solve, intended for state spaces up to
about a thousand states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, InputError, NumericError


@dataclass
class MdpSpec:
    """Finite MDP with a finite shock support.

    rewards     (n_states, n_actions) table r(s, a)
    shock_probs length-n_shocks probabilities summing to 1
    transition  (n_states, n_actions, n_shocks) next-state indices
    beta        discount factor in (0, 1)
    """

    rewards: np.ndarray
    shock_probs: np.ndarray
    transition: np.ndarray
    beta: float

    def __post_init__(self):
        self.rewards = np.atleast_2d(np.asarray(self.rewards, dtype=float))
        self.shock_probs = np.asarray(self.shock_probs, dtype=float)
        self.transition = np.asarray(self.transition, dtype=int)
        n_s, n_a = self.rewards.shape
        if n_s < 1 or n_a < 1:
            raise InputError("need at least one state and one action")
        if not np.all(np.isfinite(self.rewards)):
            raise InputError("rewards must be finite")
        if abs(self.shock_probs.sum() - 1.0) > 1e-12 or np.any(self.shock_probs < 0):
            raise InputError(
                f"shock probabilities must be >= 0 and sum to 1, "
                f"got sum {self.shock_probs.sum()}"
            )
        if self.transition.shape != (n_s, n_a, self.shock_probs.size):
            raise InputError(
                f"transition shape {self.transition.shape} does not match "
                f"({n_s}, {n_a}, {self.shock_probs.size})"
            )
        if np.any(self.transition < 0) or np.any(self.transition >= n_s):
            raise InputError("transitions must land in valid states")
        if not 0 < self.beta < 1:
            raise DomainError(f"beta must lie in (0, 1), got {self.beta}")

    @property
    def n_states(self) -> int:
        return self.rewards.shape[0]

    @property
    def n_actions(self) -> int:
        return self.rewards.shape[1]

    def expected_next_values(self, v: np.ndarray) -> np.ndarray:
        """E_shock[V(s')] for every (s, a), shape (n_states, n_actions)."""
        return np.einsum("k,sak->sa", self.shock_probs, v[self.transition])

    def policy_transition_matrix(self, policy: np.ndarray) -> np.ndarray:
        """Row-stochastic P_pi[s, s'] for a fixed per-state action."""
        n_s = self.n_states
        p = np.zeros((n_s, n_s))
        for s in range(n_s):
            for k, prob in enumerate(self.shock_probs):
                p[s, self.transition[s, policy[s], k]] += prob
        return p


@dataclass(frozen=True)
class Solution:
    """Converged value function, greedy policy, and solver telemetry."""

    values: np.ndarray
    policy: np.ndarray
    iterations: int
    residual: float


def value_iteration(spec: MdpSpec, tol: float = 1e-12, max_iter: int = 100_000) -> Solution:
    """Standard value iteration; greedy ties broken by lowest action index."""
    if tol <= 0:
        raise DomainError(f"tol must be > 0, got {tol}")
    v = np.zeros(spec.n_states)
    residual = np.inf
    # Stopping at this threshold bounds both the Bellman residual of the
    # returned iterate and its sup-norm distance to V* by tol.
    threshold = tol * min(1.0, (1.0 - spec.beta) / spec.beta)
    for it in range(1, max_iter + 1):
        q = spec.rewards + spec.beta * spec.expected_next_values(v)
        v_new = q.max(axis=1)
        residual = float(np.max(np.abs(v_new - v)))
        v = v_new
        if residual <= threshold:
            break
    else:
        raise ConvergenceError(
            f"value iteration did not converge in {max_iter} iterations",
            residual=residual,
        )
    q = spec.rewards + spec.beta * spec.expected_next_values(v)
    policy = q.argmax(axis=1)  # argmax returns the lowest index on ties
    return Solution(values=v, policy=policy, iterations=it, residual=residual)


def evaluate_policy(spec: MdpSpec, policy: np.ndarray) -> np.ndarray:
    """Exact V_pi from the linear system (I - beta*P_pi) V = r_pi."""
    policy = np.asarray(policy, dtype=int)
    if policy.shape != (spec.n_states,):
        raise InputError(f"policy must have shape ({spec.n_states},)")
    if np.any(policy < 0) or np.any(policy >= spec.n_actions):
        raise InputError("policy contains invalid action indices")
    p_pi = spec.policy_transition_matrix(policy)
    r_pi = spec.rewards[np.arange(spec.n_states), policy]
    mat = np.eye(spec.n_states) - spec.beta * p_pi
    try:
        return np.linalg.solve(mat, r_pi)
    except np.linalg.LinAlgError as exc:  # cannot occur for beta < 1
        raise NumericError(f"singular policy-evaluation system: {exc}") from exc


def ideation_surplus(marginal_reward: float, c_ideation: float, eps_guard: float = 1e-9) -> float:
    """Innovation surplus per unit ideation cost, guarded against blow-up."""
    if eps_guard <= 0:
        raise DomainError(f"eps_guard must be > 0, got {eps_guard}")
    if c_ideation <= eps_guard:
        raise NumericError(
            f"ideation cost {c_ideation} at or below guard {eps_guard}: "
            "surplus unbounded"
        )
    return marginal_reward / c_ideation


def realtime_surplus(spec: MdpSpec, legacy_policy: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Per-state surplus of optimal play over a fixed legacy policy."""
    sol = value_iteration(spec, tol=tol)
    v_legacy = evaluate_policy(spec, legacy_policy)
    return sol.values - v_legacy


def path_sensitivity(
    spec: MdpSpec,
    h: float = 1e-3,
    perturb=None,
    tol: float = 1e-12,
) -> np.ndarray:
    """Central-difference sensitivity of V* to a scalar policy parameter.

    `perturb(spec, p)` must return a new MdpSpec; the default channel adds a
    uniform offset p to every reward, whose exact derivative is 1/(1-beta)
    in every state.
    """
    if h <= 0:
        raise DomainError(f"h must be > 0, got {h}")
    if perturb is None:
        def perturb(base: MdpSpec, p: float) -> MdpSpec:
            return MdpSpec(
                rewards=base.rewards + p,
                shock_probs=base.shock_probs,
                transition=base.transition,
                beta=base.beta,
            )
    v_plus = value_iteration(perturb(spec, h), tol=tol).values
    v_minus = value_iteration(perturb(spec, -h), tol=tol).values
    return (v_plus - v_minus) / (2.0 * h)


def enumerate_policies_value(spec: MdpSpec) -> tuple[np.ndarray, np.ndarray]:
    """Exhaustive oracle: best value over all stationary deterministic
    policies, evaluated exactly. Returns (values, policy). Exponential in
    the state count; intended for test-scale instances only."""
    from itertools import product

    # The optimal stationary policy dominates every other policy pointwise,
    # so V* is the elementwise max over all policy values and is attained
    # in every state by whichever policy maximizes, say, state 0.
    best_v = np.full(spec.n_states, -np.inf)
    best_pi = None
    best_sum = -np.inf
    for actions in product(range(spec.n_actions), repeat=spec.n_states):
        pi = np.array(actions, dtype=int)
        v = evaluate_policy(spec, pi)
        best_v = np.maximum(best_v, v)
        total = float(v.sum())
        if total > best_sum:
            best_sum, best_pi = total, pi
    return best_v, best_pi
