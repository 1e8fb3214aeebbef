"""Knowledge accumulation, uncertainty collapse, and ideation-cost dynamics.

Models a research domain whose epistemic uncertainty decays as the knowledge
stock grows, with a hard regime switch once the stock crosses a threshold:
above it only a small residual uncertainty remains and discovery turns from
deep uncertainty into computable risk. AI capability enters twice, as a
multiplier on knowledge growth and as the driver of the collapsing marginal
cost of producing a new idea.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, InputError, NumericError


@dataclass(frozen=True)
class EpistemicParams:
    """Structural parameters of one epistemic domain.

    theta0      baseline uncertainty in the pre-threshold regime (> 0)
    p_bar       knowledge threshold for the mode transition (> 0)
    eps_resid   residual uncertainty once the threshold is crossed
    alpha_prod  ideation productivity in the knowledge growth law
    phi_elast   elasticity of AI capability in knowledge growth
    c0          baseline ideation cost without AI support (> 0)
    alpha_cost  sensitivity of ideation cost to AI capability
    theta_star  inversion threshold on the ideation cost
    lp          research labor allocated to the domain
    """

    theta0: float = 1.0
    p_bar: float = 10.0
    eps_resid: float = 0.01
    alpha_prod: float = 1.0
    phi_elast: float = 1.0
    c0: float = 1.0
    alpha_cost: float = 1.0
    theta_star: float = 0.1
    lp: float = 1.0

    def __post_init__(self):
        if self.theta0 <= 0:
            raise DomainError("theta0 must be > 0")
        if self.p_bar <= 0:
            raise DomainError("p_bar must be > 0")
        if not 0 <= self.eps_resid < self.theta0:
            raise DomainError("eps_resid must satisfy 0 <= eps_resid < theta0")
        if self.c0 <= 0:
            raise DomainError("c0 must be > 0")
        if self.alpha_cost < 0 or self.phi_elast < 0 or self.lp < 0:
            raise DomainError("alpha_cost, phi_elast and lp must be >= 0")
        if self.theta_star <= 0:
            raise DomainError("theta_star must be > 0")


@dataclass(frozen=True)
class EpistemicState:
    """Snapshot of the domain at one instant."""

    t: float = 0.0
    p: float = 0.0
    theta: float = 1.0
    c: float = 1.0
    a_cap: float = 0.0
    pi: float = 0.5
    inverted: bool = False


def discovery_probability(theta: float) -> float:
    """Probability of successful discovery at uncertainty level ``theta``.

    1/(1 + theta); approaches certainty as uncertainty vanishes.
    """
    if theta < 0:
        raise DomainError(f"uncertainty must be >= 0, got {theta}")
    return 1.0 / (1.0 + theta)


def marginal_ideation_cost(c0: float, alpha_cost: float, a_cap: float) -> float:
    """Marginal cost of one new idea given AI capability ``a_cap``.

    c0 / (1 + alpha_cost * a_cap): strictly decreasing in capability when
    alpha_cost > 0, constant otherwise.
    """
    if c0 <= 0:
        raise DomainError(f"baseline cost must be > 0, got {c0}")
    if alpha_cost < 0:
        raise DomainError(f"cost sensitivity must be >= 0, got {alpha_cost}")
    if a_cap < 0:
        raise DomainError(f"capability must be >= 0, got {a_cap}")
    return c0 / (1.0 + alpha_cost * a_cap)


def _uncertainty(p: float, params: EpistemicParams) -> float:
    # Threshold boundary P == p_bar belongs to the post-threshold branch.
    if p >= params.p_bar:
        return params.eps_resid
    return params.theta0 / (1.0 + p)


def initial_state(params: EpistemicParams, a_cap: float = 0.0, p0: float = 0.0) -> EpistemicState:
    """Consistent state at t = 0 for a given capability level."""
    theta = _uncertainty(p0, params)
    c = marginal_ideation_cost(params.c0, params.alpha_cost, a_cap)
    return EpistemicState(
        t=0.0,
        p=p0,
        theta=theta,
        c=c,
        a_cap=a_cap,
        pi=discovery_probability(theta),
        inverted=c < params.theta_star,
    )


def step_knowledge(state: EpistemicState, params: EpistemicParams, dt: float) -> EpistemicState:
    """Advance the knowledge stock by one explicit-Euler step of length ``dt``.

    Updates uncertainty, discovery probability, ideation cost and the
    inversion flag consistently with the new stock. Capability is held
    constant across the step; scenarios that grow A(t) update it between
    steps.
    """
    if dt <= 0:
        raise DomainError(f"dt must be > 0, got {dt}")
    p_new = state.p + params.alpha_prod * state.a_cap**params.phi_elast * params.lp * dt
    if not math.isfinite(p_new):
        raise NumericError(f"knowledge stock p became non-finite: {p_new}")
    theta = _uncertainty(p_new, params)
    c = marginal_ideation_cost(params.c0, params.alpha_cost, state.a_cap)
    return EpistemicState(
        t=state.t + dt,
        p=p_new,
        theta=theta,
        c=c,
        a_cap=state.a_cap,
        pi=discovery_probability(theta),
        inverted=c < params.theta_star,
    )


@dataclass
class Problem:
    """One open or resolved problem in the pool."""

    id: int
    complexity: float
    open: bool = True

    def __post_init__(self):
        if self.complexity < 0:
            raise DomainError("problem complexity must be >= 0")


@dataclass
class ProblemPool:
    """Dynamic pool of problems with emergence rate and alignment weighting."""

    problems: list = field(default_factory=list)
    eta_rate: float = 1.0
    lambda_align: float = 1.0
    eps_floor: float = 1e-6

    def __post_init__(self):
        if self.eps_floor <= 0:
            raise DomainError("eps_floor must be > 0")
        if not 0 <= self.lambda_align <= 1:
            raise DomainError("lambda_align must lie in [0, 1]")
        if self.eta_rate < 0:
            raise DomainError("eta_rate must be >= 0")

    @property
    def open_problems(self) -> list:
        return [pr for pr in self.problems if pr.open]


@dataclass(frozen=True)
class ResearchOutput:
    """Output rate and per-problem solve probabilities."""

    r: float
    solve_probs: Tuple[float, ...]
    clamped: int  # how many raw ratios exceeded 1 and were capped


def research_output(pool: ProblemPool, a_cap: float) -> ResearchOutput:
    """Real-time research output over the open problems.

    Per-problem solve probability is capability over complexity (plus the
    irreducible-uncertainty floor), capped at 1; the output rate is the
    alignment-weighted sum.
    """
    if a_cap < 0:
        raise DomainError(f"capability must be >= 0, got {a_cap}")
    probs = []
    clamped = 0
    for pr in pool.open_problems:
        raw = a_cap / (pr.complexity + pool.eps_floor)
        if raw > 1.0:
            clamped += 1
            raw = 1.0
        probs.append(raw)
    r = pool.lambda_align * float(sum(probs))
    return ResearchOutput(r=r, solve_probs=tuple(probs), clamped=clamped)


def step_problem_pool(
    pool: ProblemPool,
    output: ResearchOutput,
    dt: float,
    rng: np.random.Generator,
) -> Tuple[ProblemPool, bool]:
    """One stochastic step of pool dynamics; returns (new pool, surplus flag).

    ``output`` is the current research_output of the pool. Arrivals are
    Poisson with mean eta*dt. Each open problem resolves independently with
    probability lambda * pi_i * dt (capped at 1), so the expected net change
    matches (eta - R) * dt. Surplus means resolution outpaces emergence:
    R > eta. New problems draw their complexity from an exponential whose
    mean matches the current pool (1.0 for an empty pool).
    """
    if dt <= 0:
        raise DomainError(f"dt must be > 0, got {dt}")
    open_count = len(pool.open_problems)
    if len(output.solve_probs) != open_count:
        raise InputError(
            f"solve_probs length {len(output.solve_probs)} does not match "
            f"{open_count} open problems"
        )
    probs_iter = iter(output.solve_probs)
    new_problems = []
    for pr in pool.problems:
        if pr.open:
            p_resolve = min(1.0, pool.lambda_align * next(probs_iter) * dt)
            if rng.random() < p_resolve:
                pr = replace_problem(pr, open=False)
        new_problems.append(pr)

    mean_c = (
        float(np.mean([pr.complexity for pr in pool.problems])) if pool.problems else 1.0
    )
    n_new = rng.poisson(pool.eta_rate * dt)
    next_id = max((pr.id for pr in pool.problems), default=-1) + 1
    for k in range(n_new):
        new_problems.append(Problem(id=next_id + k, complexity=float(rng.exponential(mean_c))))

    new_pool = ProblemPool(
        problems=new_problems,
        eta_rate=pool.eta_rate,
        lambda_align=pool.lambda_align,
        eps_floor=pool.eps_floor,
    )
    return new_pool, output.r > pool.eta_rate


def replace_problem(pr: Problem, **changes) -> Problem:
    return replace(pr, **changes)


def hamiltonian_value(
    u: float,
    lam1: float,
    lam2: float,
    phi_val: float,
    delta: float,
    k: float,
    gamma_val: float,
) -> float:
    """Current-value Hamiltonian of the ideation planning problem.

    u + lam1 * (phi_val - delta * k) + lam2 * gamma_val, where lam1 prices
    aligned knowledge and lam2 prices AI capability.
    """
    for name, v in (("u", u), ("lam1", lam1), ("lam2", lam2), ("phi_val", phi_val),
                    ("delta", delta), ("k", k), ("gamma_val", gamma_val)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v}")
    return u + lam1 * (phi_val - delta * k) + lam2 * gamma_val


def inversion_crossing(
    cost_series: Sequence[Tuple[float, float]],
    theta_star: float,
) -> Optional[float]:
    """First sample time at which the ideation cost drops below ``theta_star``.

    Returns None if the cost never crosses. Times must be strictly increasing.
    """
    if not cost_series:
        raise InputError("cost_series must be non-empty")
    times = [t for t, _ in cost_series]
    if any(t1 >= t2 for t1, t2 in zip(times, times[1:])):
        raise InputError("cost_series times must be strictly increasing")
    for t, c in cost_series:
        if c < theta_star:
            return t
    return None
