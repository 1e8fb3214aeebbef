"""Blind flywheel vs need-aligned production.

Two economies with the same output: one keeps allocating by the shares it
started with (the flywheel spinning on its own momentum), the other
re-targets every step toward the needs exerting the strongest experiential
gravity. Social potential energy U = sum(N_i^2) measures unmet need; the
aligned economy drains it at least as fast at every step.

Run:  python3 demos/03_flywheel.py
"""

import numpy as np

from emt_lab.gravity import NeedsState, flywheel_compare, gravity_field


def main():
    state = NeedsState(
        n_vec=np.array([5.0, 4.0, 3.0, 2.0, 1.0]),
        d_mat=np.array([[1.0, 2.0], [2.0, 1.0], [1.0, 1.5],
                        [2.5, 2.0], [1.5, 1.0]]),
        p_vec=np.array([1.0, 1.0]),
    )
    print(f"initial gravity field: {gravity_field(state):.3f}")
    print(f"initial potential energy U: {np.sum(state.n_vec**2):.1f}")
    print()

    res = flywheel_compare(state, {"a": 1.0, "k": 1.0, "l": 1.0, "alpha": 0.5},
                           horizon=50, kappa=0.05)
    print(f"{'t':>4} {'U_blind':>9} {'U_aligned':>10} {'gap':>8} {'coverage':>9}")
    for t in range(0, 51, 5):
        gap = res.u_blind[t] - res.u_aligned[t]
        print(f"{t:4d} {res.u_blind[t]:9.3f} {res.u_aligned[t]:10.3f} "
              f"{gap:8.4f} {res.coverage_aligned[t]:9.3f}")
    print()
    print("aligned allocation dominates at every step and strictly by the")
    print("final one: same output, less unmet need")


if __name__ == "__main__":
    main()
