"""Logistic reference curve of the fully mixed model, numeric and closed form."""

import argparse

from netlang.diffusion import logistic_reference


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=float, default=400)
    ap.add_argument("--alpha", type=float, default=1e-4)
    ap.add_argument("--c0", type=float, default=1)
    ap.add_argument("--dt", type=float, default=0.1)
    ap.add_argument("--t-end", type=float, default=500)
    args = ap.parse_args()
    curve = logistic_reference(args.nodes, args.alpha, args.c0, args.dt, args.t_end)
    print("t,fraction,fraction_exact")
    for t, c, ce in zip(curve.t[::50], curve.c[::50], curve.c_exact[::50]):
        print(f"{t:g},{c / curve.n:.6f},{ce / curve.n:.6f}")
    print(f"# max abs error {curve.max_error:.2e}")


if __name__ == "__main__":
    main()
