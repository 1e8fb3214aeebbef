"""Experiential gravity field, need-to-sector flows, and the
flywheel-vs-aligned production comparison.

Needs exert gravitational pull on productive sectors; flows follow an
inverse-square law in epistemic distance. The flywheel comparison pits a
"blind" economy that keeps allocating output by its initial shares against
an "aligned" one that re-targets toward the strongest current flows, and
tracks the social potential energy U = sum(N_i^2) under both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError
from .growth import cobb_douglas


@dataclass
class NeedsState:
    """Need intensities, sector potentials, and the distance matrix."""

    n_vec: np.ndarray          # need intensities, length n
    d_mat: np.ndarray          # epistemic distances, n x m, all > 0
    p_vec: np.ndarray          # sector potentials, length m
    g_resp: float = 1.0        # responsiveness coefficient G(t)
    alpha_g: float = 1.0       # need-intensity elasticity
    beta_g: float = 1.0        # distance elasticity

    def __post_init__(self):
        self.n_vec = np.asarray(self.n_vec, dtype=float)
        self.d_mat = np.atleast_2d(np.asarray(self.d_mat, dtype=float))
        self.p_vec = np.asarray(self.p_vec, dtype=float)
        if self.d_mat.shape != (self.n_vec.size, self.p_vec.size):
            raise InputError(
                f"distance matrix shape {self.d_mat.shape} does not match "
                f"{self.n_vec.size} needs x {self.p_vec.size} sectors"
            )
        if np.any(self.n_vec < 0) or np.any(self.p_vec < 0):
            raise DomainError("need intensities and potentials must be >= 0")
        if np.any(self.d_mat <= 0):
            raise DomainError("all distances must be > 0 (singularity)")
        if self.g_resp < 0 or self.alpha_g < 0 or self.beta_g < 0:
            raise DomainError("g_resp and elasticities must be >= 0")

    @property
    def nearest_distance(self) -> np.ndarray:
        """Per-need binding distance D_i = min_j D_ij."""
        return self.d_mat.min(axis=1)


@dataclass(frozen=True)
class AllocationPlan:
    """How output is split across needs: fixed shares, blind or aligned."""

    shares: np.ndarray
    mode: str

    def __post_init__(self):
        shares = np.asarray(self.shares, dtype=float)
        if self.mode not in ("blind", "aligned"):
            raise InputError(f"mode must be 'blind' or 'aligned', got {self.mode!r}")
        if np.any(shares < 0):
            raise DomainError("allocation shares must be >= 0")
        if abs(shares.sum() - 1.0) > 1e-9:
            raise DomainError(f"shares must sum to 1, got {shares.sum()}")
        object.__setattr__(self, "shares", shares)


def need_gravity(n_i: float, d_i: float, alpha_g: float, beta_g: float) -> float:
    """Gravitational influence of one need: N^alpha / D^beta."""
    if d_i <= 0:
        raise DomainError(f"distance must be > 0, got {d_i} (singularity)")
    if n_i < 0:
        raise DomainError(f"need intensity must be >= 0, got {n_i}")
    return n_i**alpha_g / d_i**beta_g


def gravity_field(state: NeedsState) -> float:
    """Total field: sum of per-need gravities at the nearest-sector distance."""
    d_near = state.nearest_distance
    return float(np.sum(state.n_vec**state.alpha_g / d_near**state.beta_g))


def need_sector_flow(state: NeedsState) -> np.ndarray:
    """Flow matrix F_ij = G * N_i * P_j / D_ij^2 (inverse-square law)."""
    return state.g_resp * np.outer(state.n_vec, state.p_vec) / state.d_mat**2


def potential_energy(n_vec: np.ndarray) -> float:
    """Social potential energy: sum of squared need intensities."""
    n = np.asarray(n_vec, dtype=float)
    if n.size == 0:
        return 0.0
    return float(np.sum(n**2))


def _flow_shares(state: NeedsState) -> np.ndarray:
    """Allocation shares proportional to the row sums of the flow matrix.

    If total flow is zero (all needs met or G=0), fall back to a uniform
    split so the allocation stays a valid distribution.
    """
    rows = need_sector_flow(state).sum(axis=1)
    total = rows.sum()
    if total <= 0:
        return np.full(state.n_vec.size, 1.0 / state.n_vec.size)
    return rows / total


@dataclass(frozen=True)
class FlywheelResult:
    """Potential-energy and output trajectories for both allocation modes."""

    u_blind: np.ndarray
    u_aligned: np.ndarray
    y_series: np.ndarray
    coverage_blind: np.ndarray
    coverage_aligned: np.ndarray


def flywheel_compare(
    state0: NeedsState,
    production: dict,
    horizon: int,
    kappa: float,
    coverage_eps: float = 1e-3,
) -> FlywheelResult:
    """Run the blind and aligned economies side by side for `horizon` steps.

    Each step both economies produce the same Cobb-Douglas output
    Y = a*k^alpha*l^(1-alpha) and split it across needs: the blind economy
    by shares frozen at t=0, the aligned one by current flow-row shares.
    Needs decay by kappa times the allocation, clamped at zero. Trajectories
    of U = sum(N^2) (length horizon+1, including t=0) are returned, plus
    weighted coverage with a need counted satisfied below `coverage_eps`.
    """
    if horizon < 1:
        raise DomainError(f"horizon must be >= 1, got {horizon}")
    if kappa < 0:
        raise DomainError(f"kappa must be >= 0, got {kappa}")
    y = cobb_douglas(
        production.get("a", 1.0),
        production.get("k", 1.0),
        production.get("l", 1.0),
        production.get("alpha", 0.5),
    )
    weights0 = state0.n_vec.copy()
    shares_blind = _flow_shares(state0)

    n_blind = state0.n_vec.copy()
    n_aligned = state0.n_vec.copy()
    u_b = [potential_energy(n_blind)]
    u_a = [potential_energy(n_aligned)]
    cov_b = [coverage_operator(n_blind <= coverage_eps, weights0)]
    cov_a = [coverage_operator(n_aligned <= coverage_eps, weights0)]
    y_series = []
    for _ in range(horizon):
        y_series.append(y)
        n_blind = np.maximum(0.0, n_blind - kappa * y * shares_blind)
        aligned_state = NeedsState(
            n_vec=n_aligned,
            d_mat=state0.d_mat,
            p_vec=state0.p_vec,
            g_resp=state0.g_resp,
            alpha_g=state0.alpha_g,
            beta_g=state0.beta_g,
        )
        n_aligned = np.maximum(0.0, n_aligned - kappa * y * _flow_shares(aligned_state))
        u_b.append(potential_energy(n_blind))
        u_a.append(potential_energy(n_aligned))
        cov_b.append(coverage_operator(n_blind <= coverage_eps, weights0))
        cov_a.append(coverage_operator(n_aligned <= coverage_eps, weights0))
    return FlywheelResult(
        u_blind=np.array(u_b),
        u_aligned=np.array(u_a),
        y_series=np.array(y_series),
        coverage_blind=np.array(cov_b),
        coverage_aligned=np.array(cov_a),
    )


def coverage_operator(satisfied: np.ndarray, weights: np.ndarray) -> float:
    """Weighted fraction of needs satisfied, in [0, 1]."""
    mask = np.asarray(satisfied, dtype=bool)
    w = np.asarray(weights, dtype=float)
    if mask.shape != w.shape:
        raise InputError(f"mask shape {mask.shape} != weights shape {w.shape}")
    if np.any(w < 0):
        raise DomainError("weights must be >= 0")
    total = w.sum()
    if total <= 0:
        raise DomainError("weights must not all be zero")
    return float(w[mask].sum() / total)
