"""Subsidy allocation across occupations by alignment value.

The planner splits a fixed budget across occupations whose labor supply
responds log-linearly to subsidies, maximizing alignment-weighted supply.
The KKT multiplier equalizes the marginal alignment payoff per marginal
unit of spend across every subsidized occupation.

Run:  python3 demos/04_subsidy_planner.py
"""

from emt_lab.policy import (
    Occupation,
    SubsidyProblem,
    labor_supply,
    optimize_subsidies,
)


def main():
    occs = (
        Occupation(w=1.0, l_bar=1.0, eta=0.5, lambda_align=1.0),
        Occupation(w=1.0, l_bar=2.0, eta=1.0, lambda_align=1.0),
        Occupation(w=2.0, l_bar=1.0, eta=2.0, lambda_align=3.0),
    )
    labels = ("care-low-response", "care-responsive", "high-alignment")

    for budget in (0.5, 2.0, 8.0):
        sol = optimize_subsidies(SubsidyProblem(occupations=occs, budget=budget))
        print(f"budget B = {budget}")
        print(f"  objective {sol.objective:.4f}, spend {sol.spend:.4f}, "
              f"multiplier {sol.multiplier:.4f}")
        for label, occ, s in zip(labels, occs, sol.s_star):
            print(f"  {label:>18}: s* = {s:7.4f}, "
                  f"labor {labor_supply(occ, 0.0):.2f} -> {labor_supply(occ, s):.2f}")
        print()
    print("the high-alignment, high-elasticity occupation soaks up most of")
    print("the budget; the budget binds exactly whenever any subsidy helps")


if __name__ == "__main__":
    main()
