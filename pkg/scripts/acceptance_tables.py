"""Both acceptance-rate sweeps: fixed p=200, and fully supervised p=n.

The fixed-p sweep keeps t=0.1; the supervised sweep observes every point
directly (t=0).  Medians over three replicates land in acceptance.csv,
per-replicate detail in acceptance_runs.csv, nodal IACTs in iact.csv.
"""

import argparse

from graphheat import ExperimentConfig, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--replicates", type=int, default=3)
    args = ap.parse_args()
    common = dict(
        n_grid=(300, 600, 900, 1200, 1500, 2000),
        beta=0.01,
        sigma=0.1,
        iterations=10**5,
        burn_in=10**4,
        replicates=args.replicates,
        seed=args.seed,
    )
    semi = ExperimentConfig(kind="acceptance-sweep", p=200, t=0.1,
                            out=args.out + "/acceptance_semi", **common)
    full = ExperimentConfig(kind="supervised-sweep", t=0.0,
                            out=args.out + "/acceptance_supervised", **common)
    print(run_experiment(semi, jobs=args.jobs))
    print(run_experiment(full, jobs=args.jobs))


if __name__ == "__main__":
    main()
