"""Scenario configuration: schemas, loading, and validation.

A scenario is a single JSON document naming a module, a module-specific
parameter block, a master seed, and an output sink. Validation is strict
(unknown keys are rejected, with a closest-known-key suggestion) and
collects every problem before failing, so a bad config reports all of its
errors in one pass.
"""

from __future__ import annotations

import difflib
import hashlib
import json
from dataclasses import dataclass, field

from .errors import ConfigError

MODULES = ("epistemic", "growth", "evt", "gravity", "mdp", "feedback", "game", "policy")

# Each field: type ("number" | "integer" | "string" | "boolean" | "object" |
# "array"), default, and optional "min" / "exmin" (exclusive) / "max" /
# "choices" bounds. Deeper domain constraints live in the module types.
_SCHEMAS: dict = {
    "epistemic": {
        "theta0": {"type": "number", "default": 1.0, "exmin": 0},
        "p_bar": {"type": "number", "default": 10.0, "exmin": 0},
        "eps_resid": {"type": "number", "default": 0.01, "min": 0},
        "alpha_prod": {"type": "number", "default": 1.0, "min": 0},
        "phi_elast": {"type": "number", "default": 1.0, "min": 0},
        "c0": {"type": "number", "default": 1.0, "exmin": 0},
        "alpha_cost": {"type": "number", "default": 1.0, "min": 0},
        "theta_star": {"type": "number", "default": 0.1, "exmin": 0},
        "lp": {"type": "number", "default": 1.0, "min": 0},
        "a0": {"type": "number", "default": 1.0, "min": 0},
        "a_growth": {"type": "number", "default": 0.5, "min": 0},
        "p0": {"type": "number", "default": 0.0, "min": 0},
        "dt": {"type": "number", "default": 0.1, "exmin": 0},
        "horizon": {"type": "integer", "default": 200, "min": 1},
        "n_problems": {"type": "integer", "default": 10, "min": 0},
        "complexity_mean": {"type": "number", "default": 2.0, "exmin": 0},
        "eta_rate": {"type": "number", "default": 1.0, "min": 0},
        "lambda_align": {"type": "number", "default": 1.0, "min": 0, "max": 1},
        "eps_floor": {"type": "number", "default": 1e-6, "exmin": 0},
    },
    "growth": {
        "alpha": {"type": "number", "default": 0.5, "exmin": 0, "exmax": 1},
        "a0": {"type": "number", "default": 1.0, "min": 0},
        "k0": {"type": "number", "default": 1.0, "min": 0},
        "l0": {"type": "number", "default": 1.0, "min": 0},
        "delta_r": {"type": "number", "default": 0.05, "exmin": 0},
        "phi_r": {"type": "number", "default": 1.0, "min": 0, "max": 1},
        "l_a": {"type": "number", "default": 1.0, "min": 0},
        "n_lines": {"type": "integer", "default": 1000, "min": 1},
        "lambda_step": {"type": "number", "default": 1.5, "exmin": 1},
        "pi_flow": {"type": "number", "default": 1.0, "exmin": 0},
        "psi": {"type": "number", "default": 0.5, "exmin": 0},
        "r_rate": {"type": "number", "default": 0.05, "exmin": 0},
        "delta_obs": {"type": "number", "default": 0.0, "min": 0},
        "dt": {"type": "number", "default": 0.1, "exmin": 0},
        "horizon": {"type": "integer", "default": 100, "min": 1},
    },
    "evt": {
        "family": {
            "type": "string",
            "default": "exponential",
            "choices": ("exponential", "uniform", "pareto", "lognormal", "weibull"),
        },
        "family_params": {"type": "object", "default": {}},
        "k_draws": {"type": "integer", "default": 1000, "min": 1},
        "replicates": {"type": "integer", "default": 2000, "min": 1},
        "ks_threshold": {"type": "number", "default": 0.05, "exmin": 0},
        "write_m_values": {"type": "boolean", "default": False},
    },
    "gravity": {
        "n_vec": {"type": "array", "default": [5.0, 4.0, 3.0, 2.0, 1.0]},
        "d_mat": {
            "type": "array",
            "default": [[1.0, 2.0], [2.0, 1.0], [1.0, 1.5], [2.5, 2.0], [1.5, 1.0]],
        },
        "p_vec": {"type": "array", "default": [1.0, 1.0]},
        "g_resp": {"type": "number", "default": 1.0, "min": 0},
        "alpha_g": {"type": "number", "default": 1.0, "min": 0},
        "beta_g": {"type": "number", "default": 1.0, "min": 0},
        "production": {"type": "object", "default": {"a": 1.0, "k": 1.0, "l": 1.0, "alpha": 0.5}},
        "kappa": {"type": "number", "default": 0.05, "min": 0},
        "horizon": {"type": "integer", "default": 50, "min": 1},
        "coverage_eps": {"type": "number", "default": 1e-3, "exmin": 0},
        "check_dominance": {"type": "boolean", "default": False},
    },
    "mdp": {
        "rewards": {"type": "array", "default": [[0.0, 1.0]]},
        "shock_probs": {"type": "array", "default": [1.0]},
        "transition": {"type": "array", "default": [[[0], [0]]]},
        "beta": {"type": "number", "default": 0.9, "exmin": 0, "exmax": 1},
        "tol": {"type": "number", "default": 1e-12, "exmin": 0},
        "max_iter": {"type": "integer", "default": 100000, "min": 1},
        "legacy_policy": {"type": "array", "default": None},
    },
    "feedback": {
        "gamma0": {"type": "number", "default": 1.0, "min": 0},
        "theta_meta": {"type": "number", "default": 0.0},
        "phi_gain": {"type": "number", "default": 1.0},
        "noise_sd": {"type": "number", "default": 0.0, "min": 0},
        "e_target": {"type": "number", "default": 1.0},
        "dt": {"type": "number", "default": 1e-3, "exmin": 0},
        "horizon": {"type": "integer", "default": 6284, "min": 1},
        "o0": {"type": "number", "default": 0.0},
        "a0": {"type": "number", "default": 0.0},
        "settle_threshold": {"type": "number", "default": 1e-2, "exmin": 0},
        "check_settled": {"type": "boolean", "default": False},
        "expect_unstable": {"type": "boolean", "default": False},
    },
    "game": {
        "n_players": {"type": "integer", "default": 2, "min": 2},
        "payoff_cc": {"type": "number", "default": 2.0},
        "payoff_defector": {"type": "number", "default": 3.0},
        "payoff_victim": {"type": "number", "default": 0.0},
        "payoff_dd": {"type": "number", "default": 1.0},
        "p_disc": {"type": "number", "default": 0.5, "min": 0, "max": 1},
        "delta_disc": {"type": "number", "default": 0.9, "exmin": 0, "exmax": 1},
        "horizon": {"type": "integer", "default": 2, "min": 1},
        "penalty_mode": {
            "type": "string",
            "default": "lexicographic",
            "choices": ("lexicographic", "finite"),
        },
        "omega": {"type": "number", "default": 0.0, "max": 0},
        "strategy_class": {
            "type": "string",
            "default": "constant",
            "choices": ("constant", "memory1"),
        },
    },
    "policy": {
        "occupations": {
            "type": "array",
            "default": [
                {"w": 1.0, "l_bar": 1.0, "eta": 0.5, "lambda_align": 1.0},
                {"w": 1.0, "l_bar": 2.0, "eta": 1.0, "lambda_align": 1.0},
                {"w": 2.0, "l_bar": 1.0, "eta": 2.0, "lambda_align": 3.0},
            ],
        },
        "budget": {"type": "number", "default": 2.0, "exmin": 0},
        "tol": {"type": "number", "default": 1e-10, "exmin": 0},
    },
}

_TOP_LEVEL = {
    "name": {"type": "string", "default": None},
    "module": {"type": "string", "default": None, "choices": MODULES},
    "params": {"type": "object", "default": {}},
    "seed": {"type": "integer", "default": 0, "min": 0, "max": 2**64 - 1},
    "output": {"type": "object", "default": {}},
}

_OUTPUT_KEYS = {
    "format": {"type": "string", "default": None, "choices": ("csv", "json")},
    "path": {"type": "string", "default": None},
}

# Native artifact format per module; used when output.format is omitted.
DEFAULT_FORMAT = {
    "epistemic": "csv",
    "growth": "csv",
    "evt": "json",
    "gravity": "csv",
    "mdp": "json",
    "feedback": "csv",
    "game": "json",
    "policy": "json",
}

_TYPE_CHECKS = {
    "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
    "integer": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "string": lambda v: isinstance(v, str),
    "boolean": lambda v: isinstance(v, bool),
    "object": lambda v: isinstance(v, dict),
    "array": lambda v: isinstance(v, list),
}


@dataclass(frozen=True)
class ScenarioConfig:
    """A fully validated scenario ready to run."""

    name: str
    module: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    output_format: str = "csv"
    output_path: str | None = None

    def canonical(self) -> dict:
        return {
            "name": self.name,
            "module": self.module,
            "params": self.params,
            "seed": self.seed,
            "output": {"format": self.output_format, "path": self.output_path},
        }

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _check_value(prefix: str, key: str, spec: dict, value, problems: list):
    if value is None and spec["default"] is None:
        return
    if not _TYPE_CHECKS[spec["type"]](value):
        problems.append(f"{prefix}{key}: expected {spec['type']}, got {value!r}")
        return
    if "choices" in spec and value not in spec["choices"]:
        problems.append(
            f"{prefix}{key}: must be one of {list(spec['choices'])}, got {value!r}"
        )
    if "min" in spec and value < spec["min"]:
        problems.append(f"{prefix}{key}: must be >= {spec['min']}, got {value}")
    if "exmin" in spec and value <= spec["exmin"]:
        problems.append(f"{prefix}{key}: must be > {spec['exmin']}, got {value}")
    if "max" in spec and value > spec["max"]:
        problems.append(f"{prefix}{key}: must be <= {spec['max']}, got {value}")
    if "exmax" in spec and value >= spec["exmax"]:
        problems.append(f"{prefix}{key}: must be < {spec['exmax']}, got {value}")


def _check_block(prefix: str, schema: dict, block: dict, problems: list) -> dict:
    resolved = {}
    for key, value in block.items():
        if key not in schema:
            hint = difflib.get_close_matches(key, schema, n=1)
            suggestion = f"; did you mean {hint[0]!r}?" if hint else ""
            problems.append(f"{prefix}unknown key {key!r}{suggestion}")
            continue
        _check_value(prefix, key, schema[key], value, problems)
        resolved[key] = value
    for key, spec in schema.items():
        resolved.setdefault(key, spec["default"])
    return resolved


def validate_config(raw: dict) -> ScenarioConfig:
    """Validate a raw scenario dict, collecting every problem."""
    problems: list = []
    if not isinstance(raw, dict):
        raise ConfigError([f"scenario must be a JSON object, got {type(raw).__name__}"])
    top = _check_block("", _TOP_LEVEL, raw, problems)
    if top.get("name") is None:
        problems.append("name: required")
    if top.get("module") is None:
        problems.append("module: required")
    module = top.get("module")
    params = top.get("params") or {}
    if module in _SCHEMAS and isinstance(params, dict):
        params = _check_block("params.", _SCHEMAS[module], params, problems)
    output = top.get("output") or {}
    if isinstance(output, dict):
        output = _check_block("output.", _OUTPUT_KEYS, output, problems)
    else:
        output = {"format": None, "path": None}
    if problems:
        raise ConfigError(problems)
    fmt = output["format"] or DEFAULT_FORMAT[module]
    return ScenarioConfig(
        name=top["name"],
        module=module,
        params=params,
        seed=top["seed"],
        output_format=fmt,
        output_path=output["path"],
    )


def load_config(path: str) -> ScenarioConfig:
    """Load and validate a scenario JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise ConfigError([f"config file not found: {path}"])
    except json.JSONDecodeError as exc:
        raise ConfigError(
            [f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"]
        )
    return validate_config(raw)


def module_schema(module: str) -> dict:
    """Parameter schema (types, defaults, bounds) for one module."""
    if module not in _SCHEMAS:
        raise ConfigError(
            [f"unknown module {module!r}; choose from {', '.join(MODULES)}"]
        )
    return {k: dict(v) for k, v in _SCHEMAS[module].items()}
