"""Oscillation of normalized prior draws as smoothness s varies.

100 draws per s on a 1000-point sphere cloud; each draw is rescaled to
unit discrete H^s seminorm before its oscillation statistic is taken.
"""

import argparse

from graphheat import ExperimentConfig, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/regularity")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--draws", type=int, default=100)
    args = ap.parse_args()
    cfg = ExperimentConfig(
        kind="regularity",
        n=1000,
        draws=args.draws,
        s_grid=(2, 3, 4, 5, 6, 7, 8),
        seed=args.seed,
        out=args.out,
    )
    print(run_experiment(cfg))


if __name__ == "__main__":
    main()
