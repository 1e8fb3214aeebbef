"""Shared helper: random finite MDPs for oracle comparisons."""

import numpy as np

from emt_lab import make_generator
from emt_lab.dynprog import MdpSpec


def random_mdp(seed: int, n_states=5, n_actions=3, n_shocks=2, beta=0.9) -> MdpSpec:
    rng = make_generator(seed)
    rewards = rng.uniform(-1.0, 1.0, (n_states, n_actions))
    probs = rng.uniform(0.1, 1.0, n_shocks)
    probs /= probs.sum()
    # renormalize exactly so the sum-to-one invariant holds bit-for-bit
    probs[-1] = 1.0 - probs[:-1].sum()
    transition = rng.integers(0, n_states, (n_states, n_actions, n_shocks))
    return MdpSpec(
        rewards=rewards,
        shock_probs=probs,
        transition=transition,
        beta=beta,
    )
