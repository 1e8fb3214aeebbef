"""Alignment-policy toolkit: the subsidy-allocation planner, governance
filter, demanduction selector, exduction retrieval, and recursive
experiential utility.

The planner maximizes alignment-weighted labor supply subject to a budget
on total subsidy spend. Labor responds log-linearly to subsidies, so the
objective is concave and the KKT system has a one-dimensional dual: an
outer root-find on the budget multiplier with an inner per-occupation
root-find for the stationarity condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError, InputError


@dataclass(frozen=True)
class Occupation:
    """One occupation's wage, baseline supply, elasticity, and alignment."""

    w: float
    l_bar: float
    eta: float
    lambda_align: float

    def __post_init__(self):
        if self.w <= 0:
            raise DomainError("wage w must be > 0")
        if self.l_bar <= 0:
            raise DomainError("baseline labor l_bar must be > 0")
        if self.eta < 0 or self.lambda_align < 0:
            raise DomainError("eta and lambda_align must be >= 0")


@dataclass(frozen=True)
class SubsidyProblem:
    """Occupations plus the total subsidy budget."""

    occupations: tuple
    budget: float

    def __post_init__(self):
        if not self.occupations:
            raise InputError("need at least one occupation")
        if self.budget <= 0:
            raise DomainError("budget must be > 0")
        object.__setattr__(self, "occupations", tuple(self.occupations))


@dataclass(frozen=True)
class IdeaRecord:
    """A candidate idea with its experiential utility score."""

    id: int
    u_emt: float
    feasible: bool = True


@dataclass(frozen=True)
class NeedsKnowledgeLink:
    """Needs vector, knowledge-item vectors, and an activation threshold."""

    needs: np.ndarray
    knowledge_items: tuple
    threshold: float

    def __post_init__(self):
        needs = np.asarray(self.needs, dtype=float)
        items = tuple(np.asarray(k, dtype=float) for k in self.knowledge_items)
        for idx, item in enumerate(items):
            if item.shape != needs.shape:
                raise InputError(
                    f"knowledge item {idx} has shape {item.shape}, "
                    f"needs vector has shape {needs.shape}"
                )
        object.__setattr__(self, "needs", needs)
        object.__setattr__(self, "knowledge_items", items)


def labor_supply(occ: Occupation, s: float) -> float:
    """Labor supplied at subsidy s: l_bar * (1 + eta * ln(1 + s/w))."""
    if s < 0:
        raise DomainError(f"subsidy must be >= 0, got {s}")
    return occ.l_bar * (1.0 + occ.eta * math.log(1.0 + s / occ.w))


def _spend_one(occ: Occupation, s: float) -> float:
    """This occupation's contribution to spend: s * L(s)."""
    return s * labor_supply(occ, s)


def _stationarity(occ: Occupation, s: float, mu: float) -> float:
    """Marginal objective minus mu times marginal spend at subsidy s."""
    marg_obj = occ.lambda_align * occ.eta * occ.l_bar / (occ.w + s)
    marg_spend = labor_supply(occ, s) + s * occ.l_bar * occ.eta / (occ.w + s)
    return marg_obj - mu * marg_spend


def _inner_subsidy(occ: Occupation, mu: float) -> float:
    """Optimal subsidy for one occupation at multiplier mu (KKT corner or
    interior root of the stationarity condition, which is strictly
    decreasing in s)."""
    if _stationarity(occ, 0.0, mu) <= 0.0:
        return 0.0
    hi = occ.w
    while _stationarity(occ, hi, mu) > 0.0:
        hi *= 2.0
        if hi > 1e12:
            raise ConvergenceError("inner root-find bracket exploded")
    return float(brentq(lambda s: _stationarity(occ, s, mu), 0.0, hi, xtol=1e-14))


@dataclass(frozen=True)
class SubsidySolution:
    s_star: np.ndarray
    objective: float
    spend: float
    multiplier: float
    note: str = ""


def optimize_subsidies(problem: SubsidyProblem, tol: float = 1e-10) -> SubsidySolution:
    """KKT solution of the subsidy planner.

    When every occupation has lambda_align * eta = 0 the objective is flat
    and the canonical answer s = 0 is returned with a note. Otherwise the
    objective is strictly increasing in some coordinate, the budget binds,
    and the multiplier solves spend(mu) = B by root-finding (spend is
    continuous and strictly decreasing in mu).
    """
    if tol <= 0:
        raise DomainError(f"tol must be > 0, got {tol}")
    occs = problem.occupations
    if all(o.lambda_align * o.eta == 0 for o in occs):
        s0 = np.zeros(len(occs))
        obj = sum(o.lambda_align * labor_supply(o, 0.0) for o in occs)
        return SubsidySolution(
            s_star=s0, objective=obj, spend=0.0, multiplier=0.0,
            note="objective flat in all subsidies; canonical s = 0",
        )

    def spend_at(mu: float) -> float:
        return sum(_spend_one(o, _inner_subsidy(o, mu)) for o in occs)

    mu_hi = max(o.lambda_align * o.eta / o.w for o in occs if o.lambda_align * o.eta > 0)
    mu_lo = mu_hi
    while spend_at(mu_lo) < problem.budget:
        mu_lo /= 2.0
        if mu_lo < 1e-300:
            raise ConvergenceError("could not bracket the budget multiplier")
    mu = float(
        brentq(lambda m: spend_at(m) - problem.budget, mu_lo, mu_hi,
               xtol=1e-15, rtol=8.9e-16, maxiter=500)
    )
    s_star = np.array([_inner_subsidy(o, mu) for o in occs])
    spend = float(sum(_spend_one(o, s) for o, s in zip(occs, s_star)))
    objective = float(sum(o.lambda_align * labor_supply(o, s) for o, s in zip(occs, s_star)))
    return SubsidySolution(
        s_star=s_star, objective=objective, spend=spend, multiplier=mu
    )


def governance_filter(ideas: Sequence[IdeaRecord], delta_thresh: float) -> list:
    """Feasible ideas scoring strictly above the threshold, in input order."""
    return [i for i in ideas if i.feasible and i.u_emt > delta_thresh]


def demanduct_select(ideas: Sequence[IdeaRecord]) -> int:
    """Id of the highest-scoring feasible idea; ties go to the lowest index."""
    if not ideas:
        raise InputError("ideas must be non-empty")
    feasible = [i for i in ideas if i.feasible]
    if not feasible:
        raise InputError("no feasible ideas to select from")
    best = max(feasible, key=lambda i: i.u_emt)
    # max() returns the first maximal element, i.e. the lowest input index
    return best.id


def exduct(link: NeedsKnowledgeLink) -> list:
    """Indices of knowledge items activated by the needs vector.

    One admissible instantiation of the abstract needs-to-knowledge
    mapping: an item activates when its inner product with the needs
    vector exceeds the threshold.
    """
    return [
        idx
        for idx, item in enumerate(link.knowledge_items)
        if float(np.dot(item, link.needs)) > link.threshold
    ]


def recursive_utility(u_series: Sequence[float], beta: float, u_tail: float = 0.0) -> float:
    """Discounted utility of a finite series with a constant tail.

    U = sum_t beta^t u_t + beta^T * u_tail / (1 - beta).
    """
    if not 0 < beta < 1:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    u = np.asarray(u_series, dtype=float)
    if u.size == 0:
        raise InputError("u_series must be non-empty")
    powers = beta ** np.arange(u.size)
    return float(np.dot(powers, u) + beta ** u.size * u_tail / (1.0 - beta))
