"""Recombinant idea space: combinatorial magnitudes and the
distribution-agnostic extreme-value law.

The count of potential recombinations Z = 2^(A^phi) overflows floats long
before A is interesting, so all reporting stays in log2 space. The
extreme-value law states that K * survival(max of K draws) converges to
Exp(1) for any continuous tail family; at finite K it is exactly K times
the minimum of K standard uniforms, and both facts are exercised here with
analytic survival functions per family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import make_generator
from .errors import ConfigError, DomainError

_FAMILIES = ("exponential", "uniform", "pareto", "lognormal", "weibull")


@dataclass(frozen=True)
class TailDistribution:
    """A continuous tail family with analytic survival and inverse survival.

    Supported families and parameter keys:
      exponential(rate)         survival exp(-rate*z)
      uniform(b)                survival 1 - z/b on (0, b)
      pareto(xm, shape)         survival (xm/z)^shape for z >= xm
      lognormal(mu, sigma)      survival of exp(N(mu, sigma^2))
      weibull(scale, shape)     survival exp(-(z/scale)^shape)

    The normal family has no closed-form inverse survival and is deliberately
    not supported.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ConfigError(
                f"unsupported tail family {self.family!r}; "
                f"supported: {', '.join(_FAMILIES)}"
            )
        defaults = {
            "exponential": {"rate": 1.0},
            "uniform": {"b": 1.0},
            "pareto": {"xm": 1.0, "shape": 2.0},
            "lognormal": {"mu": 0.0, "sigma": 1.0},
            "weibull": {"scale": 1.0, "shape": 1.5},
        }[self.family]
        unknown = set(self.params) - set(defaults)
        if unknown:
            raise ConfigError(
                f"unknown parameter(s) {sorted(unknown)} for family {self.family!r}"
            )
        merged = {**defaults, **self.params}
        for key, val in merged.items():
            if key != "mu" and val <= 0:
                raise DomainError(f"{self.family} parameter {key} must be > 0, got {val}")
        object.__setattr__(self, "params", merged)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        p = self.params
        if self.family == "exponential":
            return rng.exponential(1.0 / p["rate"], size)
        if self.family == "uniform":
            return rng.uniform(0.0, p["b"], size)
        if self.family == "pareto":
            # inverse-survival sampling: z = xm * u^(-1/shape)
            return p["xm"] * rng.random(size) ** (-1.0 / p["shape"])
        if self.family == "lognormal":
            return rng.lognormal(p["mu"], p["sigma"], size)
        return p["scale"] * rng.weibull(p["shape"], size)

    def survival(self, z: np.ndarray) -> np.ndarray:
        """Upper tail probability P(Z > z), computed in a tail-safe form."""
        z = np.asarray(z, dtype=float)
        p = self.params
        if self.family == "exponential":
            return np.exp(-p["rate"] * z)
        if self.family == "uniform":
            return np.clip(1.0 - z / p["b"], 0.0, 1.0)
        if self.family == "pareto":
            return np.where(z <= p["xm"], 1.0, (p["xm"] / z) ** p["shape"])
        if self.family == "lognormal":
            from scipy.stats import norm

            return norm.sf((np.log(z) - p["mu"]) / p["sigma"])
        return np.exp(-((z / p["scale"]) ** p["shape"]))

    def inverse_survival(self, u: float) -> float:
        """The z with survival(z) = u, for u in (0, 1)."""
        if not 0.0 < u < 1.0:
            raise DomainError(f"survival level must lie in (0, 1), got {u}")
        p = self.params
        if self.family == "exponential":
            return -math.log(u) / p["rate"]
        if self.family == "uniform":
            return p["b"] * (1.0 - u)
        if self.family == "pareto":
            return p["xm"] * u ** (-1.0 / p["shape"])
        if self.family == "lognormal":
            from scipy.stats import norm

            return math.exp(p["mu"] + p["sigma"] * norm.isf(u))
        return p["scale"] * (-math.log(u)) ** (1.0 / p["shape"])


@dataclass(frozen=True)
class EvtRunConfig:
    """Monte Carlo configuration for the extreme-value law."""

    k_draws: int = 1000
    replicates: int = 2000
    seed: int = 0
    ks_threshold: float = 0.05

    def __post_init__(self):
        if self.k_draws < 1:
            raise DomainError("k_draws must be >= 1")
        if self.replicates < 1:
            raise DomainError("replicates must be >= 1")
        if self.ks_threshold <= 0:
            raise DomainError("ks_threshold must be > 0")


def log2_combinations(a_stock: float, phi_access: float) -> float:
    """log2 of the number of accessible idea combinations, i.e. A^phi.

    The count itself is 2^(A^phi) including the null set; it is never
    materialized.
    """
    if a_stock < 0:
        raise DomainError(f"knowledge stock must be >= 0, got {a_stock}")
    if not 0 < phi_access <= 1:
        raise DomainError(f"phi_access must lie in (0, 1], got {phi_access}")
    return a_stock**phi_access


def draw_max_statistic(dist: TailDistribution, cfg: EvtRunConfig) -> np.ndarray:
    """Per-replicate m = K * survival(max of K draws).

    Replicate i uses the stream derived from (seed, i), so the result is
    independent of any batching or execution order.
    """
    maxima = np.empty(cfg.replicates)
    for i in range(cfg.replicates):
        rng = make_generator(cfg.seed, i)
        maxima[i] = np.max(dist.sample(rng, cfg.k_draws))
    return cfg.k_draws * dist.survival(maxima)


def quantile_frontier(dist: TailDistribution, k_draws: int, eps_exp: float) -> float:
    """Deterministic tail quantile: inverse survival at eps_exp / k_draws."""
    if eps_exp <= 0:
        raise DomainError(f"eps_exp must be > 0, got {eps_exp}")
    ratio = eps_exp / k_draws
    if not 0.0 < ratio < 1.0:
        raise DomainError(f"eps_exp/k_draws must lie in (0, 1), got {ratio}")
    return dist.inverse_survival(ratio)


def evt_diagnostics(m_values: np.ndarray, ks_threshold: float = 0.05) -> dict:
    """Mean and one-sample KS distance of m-values against Exp(1)."""
    m = np.asarray(m_values, dtype=float)
    if m.size == 0:
        raise DomainError("m_values must be non-empty")
    m_sorted = np.sort(m)
    cdf = 1.0 - np.exp(-m_sorted)
    n = m.size
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(0, n) / n
    ks = float(max(np.max(upper), np.max(lower)))
    return {
        "mean": float(np.mean(m)),
        "ks_distance": ks,
        "pass": ks < ks_threshold,
    }


def run_evt(dist: TailDistribution, cfg: EvtRunConfig) -> dict:
    """Full EVT verification for one family: draw, diagnose, report."""
    m = draw_max_statistic(dist, cfg)
    diag = evt_diagnostics(m, cfg.ks_threshold)
    return {
        "family": dist.family,
        "K": cfg.k_draws,
        "replicates": cfg.replicates,
        "mean": diag["mean"],
        "ks": diag["ks_distance"],
        "pass": diag["pass"],
    }
