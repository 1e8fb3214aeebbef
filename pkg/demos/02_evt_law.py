"""The distribution-agnostic extreme-value law.

Draw K idea qualities from any continuous tail family, keep the best one
Z_K, and rescale by the tail: m = K * survival(Z_K). Whatever the family —
thin-tailed exponential, bounded uniform, heavy-tailed Pareto — m follows
the same Exp(1) law. The value of the best idea is governed by how many
draws you take, not by the shape of the source distribution.

Run:  python3 demos/02_evt_law.py
"""

from emt_lab.recombinant import (
    EvtRunConfig,
    TailDistribution,
    log2_combinations,
    run_evt,
)


def main():
    print("combinatorial idea space: a knowledge stock of A elements with")
    print("access exponent phi reaches 2^(A^phi) combinations:")
    for a in (16, 100, 400):
        print(f"  A={a:4d}, phi=0.5 -> log2(combinations) = {log2_combinations(a, 0.5):6.1f}")
    print()

    cfg = EvtRunConfig(k_draws=10_000, replicates=2000, seed=7)
    print(f"{'family':>12} {'mean(m)':>9} {'K/(K+1)':>9} {'KS dist':>8}  Exp(1)?")
    for family, params in [
        ("exponential", {"rate": 1.0}),
        ("uniform", {"b": 5.0}),
        ("pareto", {"xm": 1.0, "shape": 2.0}),
        ("lognormal", {"mu": 0.0, "sigma": 1.0}),
        ("weibull", {"scale": 1.0, "shape": 0.7}),
    ]:
        report = run_evt(TailDistribution(family, params), cfg)
        print(f"{family:>12} {report['mean']:9.4f} "
              f"{cfg.k_draws / (cfg.k_draws + 1):9.4f} {report['ks']:8.4f}  "
              f"{'yes' if report['pass'] else 'NO'}")
    print()
    print("identical seeds give identical diagnostics; the law holds for")
    print("every family despite wildly different tails")


if __name__ == "__main__":
    main()
