"""Mode transition: from deep uncertainty to computable risk.

A research domain's uncertainty theta decays as its knowledge stock P grows;
once P crosses the threshold P-bar, only a small residual uncertainty is
left and the discovery probability pi jumps. Meanwhile AI capability drives
the marginal ideation cost down until it undercuts theta* — the inversion
point where generating a new idea becomes cheaper than the residual
uncertainty it resolves.

Run:  python3 demos/01_mode_transition.py
"""

from dataclasses import replace

from emt_lab.epistemic import (
    EpistemicParams,
    initial_state,
    inversion_crossing,
    marginal_ideation_cost,
    step_knowledge,
)


def main():
    params = EpistemicParams(
        theta0=1.0, p_bar=8.0, eps_resid=0.01,
        alpha_prod=1.0, phi_elast=1.0, lp=1.0,
        c0=1.0, alpha_cost=0.8, theta_star=0.1,
    )
    a_cap, a_growth, dt = 1.0, 1.0, 0.25

    state = initial_state(params, a_cap=a_cap)
    costs = [(state.t, state.c)]
    print(f"{'t':>6} {'P':>8} {'theta':>8} {'pi':>6} {'C':>7}  regime")
    crossed = False
    for step in range(60):
        state = step_knowledge(state, params, dt)
        a_cap += a_growth * dt
        c = marginal_ideation_cost(params.c0, params.alpha_cost, a_cap)
        state = replace(state, a_cap=a_cap, c=c, inverted=c < params.theta_star)
        costs.append((state.t, state.c))
        if step % 6 == 0 or (state.p >= params.p_bar and not crossed):
            regime = "risk (post-threshold)" if state.p >= params.p_bar else "deep uncertainty"
            if state.p >= params.p_bar:
                crossed = True
            print(f"{state.t:6.2f} {state.p:8.3f} {state.theta:8.4f} "
                  f"{state.pi:6.3f} {state.c:7.4f}  {regime}")

    t_inv = inversion_crossing(costs, params.theta_star)
    print()
    if t_inv is None:
        print("ideation cost never dropped below theta*")
    else:
        print(f"inversion: ideation cost fell below theta*={params.theta_star} "
              f"at t={t_inv:.2f} — ideas became cheaper than the uncertainty "
              "they resolve")


if __name__ == "__main__":
    main()
