"""Static interaction model: completion time on the complete graph against
its analytic mean, and the stall on a half-dense ring."""

import argparse

from netlang.diffusion import InteractionParams, SeedingSpec, expected_static_completion
from netlang.experiments import BatchConfig, run_batch
from netlang.generators import GenSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()

    full = run_batch(BatchConfig("static", GenSpec("complete", 400), InteractionParams(alpha=0.5),
                                 SeedingSpec(1), runs=args.runs, base_seed=args.seed), args.workers)
    print(f"complete graph: mean completion {full.mean_completion:.0f} micro-steps "
          f"(analytic {expected_static_completion(400, 0.5):.0f})")
    for selection in ("pair", "edge"):
        ring = run_batch(BatchConfig("static", GenSpec("regular_ring", 400, k=200),
                                     InteractionParams(alpha=0.5, t_max=10_000, selection=selection),
                                     SeedingSpec(1), runs=args.runs, base_seed=args.seed), args.workers)
        print(f"ring D=0.5, {selection} meetings, 10000 steps: reach {ring.mean_final_reach:.3f}, "
              f"completed {ring.success_probability:.2f}")


if __name__ == "__main__":
    main()
