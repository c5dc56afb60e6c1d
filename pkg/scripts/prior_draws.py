"""Export a handful of truncated graph prior draws as nodal fields."""

import argparse

from graphheat import ExperimentConfig, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/prior_draws")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--draws", type=int, default=4)
    ap.add_argument("--s", type=float, default=5.0)
    args = ap.parse_args()
    cfg = ExperimentConfig(
        kind="prior-sample",
        n=1000,
        s=args.s,
        draws=args.draws,
        seed=args.seed,
        out=args.out,
    )
    print(run_experiment(cfg))


if __name__ == "__main__":
    main()
