"""Success probability and completion time of the learning model over a
range of functional biases, on the four social topologies."""

import argparse
from pathlib import Path

from netlang.diffusion import LearningParams, SeedingSpec
from netlang.experiments import BatchConfig, four_topologies, sweep, sweep_csv
from netlang.io import write_text


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--betas", default="1,2,3,4,5,6,7,8,9,10")
    ap.add_argument("--innovators", type=int, default=10)
    ap.add_argument("--alpha-adult", type=float, default=0.001)
    ap.add_argument("--runs", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--out", default="results/beta_sweep.csv")
    args = ap.parse_args()

    specs = four_topologies()
    base = BatchConfig("learning", specs[0], LearningParams(alpha_adult=args.alpha_adult),
                       SeedingSpec(args.innovators), runs=args.runs, base_seed=args.seed)
    rows = sweep(base, "beta", [float(b) for b in args.betas.split(",")], specs, args.workers)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_text(args.out, sweep_csv(rows))
    for r in rows:
        t = r.stats.mean_completion
        print(f"beta={r.value:<4g} {r.topology:13s} success {r.stats.success_probability:.2f}  "
              f"T {'-' if t is None else f'{t:.1f}'}")


if __name__ == "__main__":
    main()
